from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..isa import CANONICAL_BASE, MethodSet
from .solver import Bound, Verdict, strict_bound

SIX_METHODS = MethodSet.from_codes("ff,tt,ii,cc,if,it")
# Number of sets the two subset conditions are usually said to cover.
CLAIMED_COVERED = 44


def subsets(base: MethodSet, proper: bool = False) -> list[MethodSet]:
    """Non-empty subsets of ``base``, ordered by method mask."""
    bits = [1 << m.index for m in base]
    masks = set()
    for sel in range(1, 1 << len(bits)):
        masks.add(sum(b for i, b in enumerate(bits) if sel >> i & 1))
    if proper:
        masks.discard(base.mask)
    return [MethodSet(m) for m in sorted(masks)]


def _solve(args: tuple[int, int]) -> Verdict:
    mask, kmax = args
    return strict_bound(MethodSet(mask), kmax)


def sweep_subsets(base: MethodSet = CANONICAL_BASE, kmax: int = 6, jobs: int | None = None) -> list[tuple[MethodSet, Verdict]]:
    """Strict bound of every non-empty subset of ``base``.

    Output order is by subset mask whatever ``jobs`` is.
    """
    subs = subsets(base)
    work = [(m.mask, kmax) for m in subs]
    jobs = jobs or os.cpu_count() or 1
    if jobs == 1:
        verdicts = [_solve(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_solve, work, chunksize=4))
    return list(zip(subs, verdicts))


def sweep_json(rows: list[tuple[MethodSet, Verdict]]) -> list[dict]:
    return [{"methods": m.codes(), "verdict": v.to_json()} for m, v in rows]


def sweep_csv_rows(rows: list[tuple[MethodSet, Verdict]]) -> list[list[str]]:
    out = [["methods", "kind", "k", "detail"]]
    for m, v in rows:
        if v.kind == "bound":
            out.append([" ".join(m.codes()), "bound", str(v.k), ""])
        elif v.kind == "incomplete":
            cert = v.cert.to_json()
            detail = f"{v.target.code}:{cert['kind']}"
            if cert["kind"] == "unwritable":
                detail += f"({cert['input']}->{cert['required_content']})"
            out.append([" ".join(m.codes()), "incomplete", "", detail])
        else:
            out.append([" ".join(m.codes()), "unknown", "", f"kmax={v.kmax} resolved={len(v.resolved)}"])
    return out


def condition(m: MethodSet) -> int | None:
    """Which subset condition ``m`` meets: 1 (no ``cc``, and ``ff,tt,ii`` or
    ``if,it`` present), 2 (``cc`` present), or None."""
    if not m.issubset(SIX_METHODS) or m == SIX_METHODS or not len(m):
        return None
    if MethodSet.from_codes("cc").issubset(m):
        return 2
    if MethodSet.from_codes("ff,tt,ii").issubset(m) or MethodSet.from_codes("if,it").issubset(m):
        return 1
    return None


EXPECTED_BOUND = {1: 4, 2: 3}


@dataclass
class SubsetClaimsReport:
    kmax: int
    rows: list[tuple[MethodSet, int, Verdict]] = field(default_factory=list)

    @property
    def covered(self) -> int:
        return len(self.rows)

    @property
    def mismatches(self) -> list[tuple[MethodSet, int, Verdict]]:
        return [r for r in self.rows if not (isinstance(r[2], Bound) and r[2].k == EXPECTED_BOUND[r[1]])]

    @property
    def count_matches_claim(self) -> bool:
        return self.covered == CLAIMED_COVERED

    def to_json(self) -> dict:
        return {
            "kmax": self.kmax,
            "covered": self.covered,
            "claimed_covered": CLAIMED_COVERED,
            "rows": [
                {
                    "methods": m.codes(),
                    "condition": c,
                    "expected_k": EXPECTED_BOUND[c],
                    "verdict": {"kind": v.kind, **({"k": v.k} if isinstance(v, Bound) else {})},
                }
                for m, c, v in self.rows
            ],
            "mismatches": [m.codes() for m, _, _ in self.mismatches],
        }


def subset_claims_check(kmax: int = 5) -> SubsetClaimsReport:
    """Solve every proper subset of the six-method set meeting a condition."""
    report = SubsetClaimsReport(kmax)
    for m in subsets(SIX_METHODS, proper=True):
        c = condition(m)
        if c is not None:
            report.rows.append((m, c, strict_bound(m, kmax)))
    return report
