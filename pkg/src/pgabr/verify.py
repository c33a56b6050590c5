"""Replays every published result as a named check.

Checks never abort the run; a failure is recorded with a short detail line
and the remaining checks still execute. Output is deterministic for a given
seed and kmax.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import gen, laws
from .completeness.fixtures import PARTS, fixture_maps, verify_fixtures
from .completeness.rewrite import replaced_count, translate_sequence
from .completeness.search import search_witnesses
from .completeness.solver import Bound, strict_bound, strictness_audit
from .completeness.sweep import CLAIMED_COVERED, sweep_subsets, subset_claims_check
from .completeness.targets import realizes_axiomatic
from .equivalence import CLASS_REPRESENTATIVES, check_axioms, equivalence_classes, feqv, minimal_method_sets
from .isa import CANONICAL_BASE, MethodSet


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}{tail}"


# (method set, expected strict bound)
EXPECTED_BOUNDS: tuple[tuple[str, int], ...] = (
    ("ff,tt,ii,cc,if,it,ti,tc", 1),
    ("ff,tt,ii,cc,if,it", 2),
    ("ff,tt,ii,cc", 3),
    ("ff,tt,ii", 4),
    ("cc", 3),
    ("if,it", 4),
)

TRANSLATION_SAMPLES = 1000
TRANSLATION_MAX_LEN = 12
TRANSLATION_FOCI = ("f", "g")
ENGINE_SAMPLES = 20
ENGINE_KMAX = 3


def check_classes() -> Check:
    classes = equivalence_classes()
    reps = tuple(str(c.representative) for c in classes)
    sizes = sorted(len(c.members) for c in classes)
    ok = reps == CLASS_REPRESENTATIVES and sizes == [2] * 12 + [6] * 4
    members = sum(len(c.members) for c in classes)
    return Check("classes", ok, f"{len(classes)} classes over {members} instructions")


def check_axiom_system() -> list[Check]:
    r = check_axioms()
    return [
        Check("axioms-sound", r.sound, f"{r.instances} instances, {len(r.violations)} violated"),
        Check("axioms-complete", r.complete, f"{len(r.closure_partition)} closure classes"),
    ]


def check_minimal_sets() -> Check:
    sets = minimal_method_sets()
    sizes = {len(s) for s in sets}
    ok = len(sets) == 256 and sizes == {8} and CANONICAL_BASE in sets
    return Check("minimal-sets", ok, f"{len(sets)} sets, sizes {sorted(sizes)}")


def _witnesses_valid(v: Bound) -> bool:
    return all(realizes_axiomatic(w, t) for t, w in v.witnesses.items())


def check_bound(codes: str, expected: int, kmax: int) -> Check:
    m = MethodSet.from_codes(codes)
    v = strict_bound(m, kmax)
    name = f"bound-{codes}"
    if not isinstance(v, Bound):
        return Check(name, False, f"expected bound {expected}, got {v.kind}")
    strict = strictness_audit(m, v)
    valid = _witnesses_valid(v)
    ok = v.k == expected and strict and valid
    detail = f"expected {expected}, got {v.k}; strict={strict}; witnesses valid={valid}"
    if v.k < expected:
        short = [f"{t.code}={w}" for t, w in v.witnesses.items() if len(w) == v.k and v.k > 1]
        detail += "; e.g. " + ", ".join(str(s) for s in short[:2])
    return Check(name, ok, detail)


def check_fixtures() -> list[Check]:
    out = []
    for fc in verify_fixtures():
        flags = []
        if not fc.realizes:
            flags.append("does not realize its target")
        if not fc.realizes_axiomatic:
            flags.append("axiomatic oracle disagrees")
        if not fc.length_ok:
            flags.append("length differs from the stated bound")
        if not fc.methods_ok:
            flags.append("uses methods outside its part's set")
        out.append(Check(fc.name, fc.ok, "; ".join(flags)))
    return out


def check_subset_claims(kmax: int) -> list[Check]:
    r = subset_claims_check(kmax)
    bad = r.mismatches
    names = [",".join(m.codes()) + f"->{v.k if isinstance(v, Bound) else v.kind}" for m, _, v in bad]
    detail = f"{len(bad)} of {r.covered} mismatch"
    if names:
        detail += ": " + " ".join(names[:6]) + (" ..." if len(names) > 6 else "")
    return [
        Check("subset-claims-bounds", not bad, detail),
        Check("subset-claims-count", r.count_matches_claim, f"computed {r.covered}, claimed {CLAIMED_COVERED}"),
    ]


def check_translation(seed: int, n: int = TRANSLATION_SAMPLES) -> list[Check]:
    tmap = fixture_maps()[2][0]
    k = PARTS[2].claimed_k
    rng = random.Random(f"{seed}:translation")
    broken, overlong = [], []
    for _ in range(n):
        x = gen.sequence(rng, TRANSLATION_MAX_LEN, TRANSLATION_FOCI)
        y = translate_sequence(x, tmap)
        if not feqv(y, x, TRANSLATION_FOCI):
            broken.append(x)
        if len(y) > len(x) + (k - 1) * replaced_count(x, tmap):
            overlong.append(x)
    first = f"; first: {broken[0]}" if broken else ""
    return [
        Check("translation-feqv", not broken, f"{n - len(broken)}/{n} preserved{first}"),
        Check("translation-length", not overlong, f"{n - len(overlong)}/{n} within bound"),
    ]


def check_engines(seed: int, n: int = ENGINE_SAMPLES, kmax: int = ENGINE_KMAX) -> Check:
    rng = random.Random(f"{seed}:engines")
    diffs = []
    for _ in range(n):
        m = gen.method_set(rng)
        a = search_witnesses(m, kmax, engine="dp")
        b = search_witnesses(m, kmax, engine="naive")
        va, vb = strict_bound(m, kmax, "dp"), strict_bound(m, kmax, "naive")
        same_verdict = va.kind == vb.kind and getattr(va, "k", None) == getattr(vb, "k", None)
        if a != b or not same_verdict:
            diffs.append(",".join(m.codes()))
    return Check("engine-agreement", not diffs, f"{n - len(diffs)}/{n} sets agree" + (f"; differ: {diffs}" if diffs else ""))


def check_laws(seed: int, n: int = 200) -> list[Check]:
    out = []
    for name in laws.LAWS:
        bad = laws.check_law(name, seed, n)
        out.append(Check(f"law-{name}", not bad, f"{n - len(bad)}/{n}" + (f"; {bad[0]}" if bad else "")))
    return out


def check_interpreters(max_len: int = 5) -> Check:
    checked, bad = laws.cross_check(max_len)
    detail = f"{checked - len(bad)}/{checked} runs agree"
    if bad:
        seq, fam = bad[0]
        detail += f"; first: {' ; '.join(map(str, seq))} on {fam}"
    return Check("interpreter-cross-check", not bad, detail)


def check_sweep(kmax: int, jobs: int | None) -> Check:
    rows = sweep_subsets(CANONICAL_BASE, kmax, jobs)
    unknown = [",".join(m.codes()) for m, v in rows if v.kind == "unknown"]
    kinds = {}
    for _, v in rows:
        kinds[v.kind] = kinds.get(v.kind, 0) + 1
    detail = ", ".join(f"{k}={kinds[k]}" for k in sorted(kinds))
    if unknown:
        detail += f"; unresolved: {' '.join(unknown)}"
    return Check("sweep-resolved", len(rows) == 255 and not unknown, detail)


def _groups(kmax: int, seed: int, jobs: int | None) -> list[tuple[str, Callable[[], Check | list[Check]]]]:
    return [
        ("classes", check_classes),
        ("axioms", check_axiom_system),
        ("minimal-sets", check_minimal_sets),
        *((f"bound-{c}", lambda c=c, e=e: check_bound(c, e, kmax)) for c, e in EXPECTED_BOUNDS),
        ("thm3-fixture", check_fixtures),
        ("subset-claims", lambda: check_subset_claims(min(kmax, 5))),
        ("translation", lambda: check_translation(seed)),
        ("engine-agreement", lambda: check_engines(seed)),
        ("law", lambda: check_laws(seed)),
        ("interpreter-cross-check", check_interpreters),
        ("sweep-resolved", lambda: check_sweep(kmax, jobs)),
    ]


def run_checks(kmax: int = 6, seed: int = gen.DEFAULT_SEED, jobs: int | None = None, only: list[str] | None = None) -> Iterator[Check]:
    """Yield every check, in a fixed order. ``only`` keeps the checks whose
    name starts with one of the given prefixes."""
    for name, fn in _groups(kmax, seed, jobs):
        if only and not any(name.startswith(p) or p.startswith(name) for p in only):
            continue
        try:
            res = fn()
        except Exception as exc:  # a crashing check is a failing check
            res = Check(name, False, f"raised {type(exc).__name__}: {exc}")
        for c in res if isinstance(res, list) else [res]:
            if not only or any(c.name.startswith(p) for p in only):
                yield c
