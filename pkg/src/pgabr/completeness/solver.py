from __future__ import annotations

from dataclasses import dataclass, field

from ..isa import InstructionSeq, MethodSet, render_sequence
from .certificates import Certificate, incompleteness_certificate
from .search import search_witnesses
from .targets import Target, targets


@dataclass(frozen=True)
class Bound:
    """Every target has a witness of length at most ``k``; some target has none shorter."""

    k: int
    witnesses: dict[Target, InstructionSeq] = field(compare=False)

    kind = "bound"

    def to_json(self) -> dict:
        return {"kind": "bound", "k": self.k, "witnesses": _witness_json(self.witnesses)}


@dataclass(frozen=True)
class CertifiedIncomplete:
    target: Target
    cert: Certificate

    kind = "incomplete"

    def to_json(self) -> dict:
        return {"kind": "incomplete", "target": self.target.code, "certificate": self.cert.to_json()}


@dataclass(frozen=True)
class UnknownBeyond:
    kmax: int
    resolved: dict[Target, InstructionSeq] = field(compare=False)

    kind = "unknown"

    def to_json(self) -> dict:
        return {"kind": "unknown", "kmax": self.kmax, "resolved": _witness_json(self.resolved)}


Verdict = Bound | CertifiedIncomplete | UnknownBeyond


def _witness_json(w: dict[Target, InstructionSeq]) -> dict[str, str]:
    return {t.code: render_sequence(w[t]) for t in targets() if t in w}


def strict_bound(methods: MethodSet, kmax: int, engine: str = "dp", label_slack: int = 0) -> Verdict:
    """Strict size bound of ``PI_br(methods)``, searched up to ``kmax``.

    Certificates are consulted first: a certified target has no witness at
    any length, so searching for it is wasted work and the verdict is the
    same either way.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    for t in targets():
        cert = incompleteness_certificate(methods, t)
        if cert is not None:
            return CertifiedIncomplete(t, cert)
    found = search_witnesses(methods, kmax, engine=engine, label_slack=label_slack)
    if len(found) == len(targets()):
        return Bound(max(len(w) for w in found.values()), found)
    return UnknownBeyond(kmax, found)


def strictness_audit(methods: MethodSet, verdict: Bound, engine: str = "dp") -> bool:
    """True iff searching at ``k - 1`` leaves at least one target unresolved."""
    if verdict.k == 1:
        return True
    return len(search_witnesses(methods, verdict.k - 1, engine=engine)) < len(targets())
