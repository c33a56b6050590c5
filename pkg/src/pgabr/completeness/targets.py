from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..equivalence import DEFAULT_FOCUS, EffectSummary, equivalence_classes, summarize
from ..isa import HALT, Instruction, InstructionSeq, MethodSet, parse_instruction
from ..semantics import ServiceFamily, run_axiomatic


@dataclass(frozen=True)
class Target:
    """An instruction effect to be emulated, up to effectual equivalence.

    ``code`` is the class representative in sequence syntax, e.g. ``"-f.tc"``.
    """

    code: str
    summary: EffectSummary

    @property
    def instruction(self) -> Instruction:
        return parse_instruction(self.code)

    def __str__(self) -> str:
        return self.code


@lru_cache(maxsize=None)
def targets() -> tuple[Target, ...]:
    """The 16 targets, one per effect class, in class-listing order."""
    out = []
    for cls in equivalence_classes(DEFAULT_FOCUS):
        s = cls.summary
        assert s.on0.kind == "exit" and s.on1.kind == "exit"
        assert s.on0.offset in (1, 2) and s.on1.offset in (1, 2)
        out.append(Target(str(cls.representative), s))
    return tuple(out)


def target_by_code(code: str) -> Target:
    """Target of any instruction, given in sequence syntax (focus ignored)."""
    u = parse_instruction(code).with_focus(DEFAULT_FOCUS)
    s = summarize((u,))
    for t in targets():
        if t.summary == s:
            return t
    raise KeyError(f"{code!r} is not a register instruction")


def target_of(u: Instruction) -> Target:
    return target_by_code(str(u.with_focus(DEFAULT_FOCUS)))


def realizes(seq: InstructionSeq, t: Target) -> bool:
    """Whether ``seq`` has exactly the effect of ``t`` on a single register."""
    return summarize(seq) == t.summary


def realizes_axiomatic(seq: InstructionSeq, t: Target, max_halts: int = 3) -> bool:
    """Oracle for :func:`realizes` through thread extraction and use/apply.

    Compares ``seq ; !^n`` with the target's representative for
    ``n = 0 .. max_halts`` and both register contents. Target exits are at
    offset at most 2, so ``n <= 3`` already separates every longer exit.
    """
    rep = InstructionSeq([t.instruction])
    for n in range(max_halts + 1):
        pad = (HALT,) * n
        for b in (0, 1):
            fam = ServiceFamily.registers({"f": b}, MethodSet.full())
            if run_axiomatic(seq + pad, fam) != run_axiomatic(rep + pad, fam):
                return False
    return True
