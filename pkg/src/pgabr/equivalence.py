"""Effect summaries and the two equivalences on instructions and sequences.

An :class:`EffectSummary` records, for register content 0 and 1, what a
single-focus sequence does when started at its first instruction: deadlock,
halt with some content, or leave the sequence ``d`` places past its end with
some content. Two instructions are effectually equivalent exactly when their
summaries are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .isa import (
    METHODS,
    Instruction,
    InstructionSeq,
    Kind,
    MethodSet,
    UnaryFn,
    enumerate_instructions,
    negtest,
    parse_instruction,
    plain,
    postest,
)
from .semantics import ServiceFamily, Termination, run_positional

DEFAULT_FOCUS = "f"
MAX_FEQV_FOCI = 16


class ForeignFocus(ValueError):
    pass


class FocusMismatch(ValueError):
    pass


class FociIncomplete(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Outcome:
    """``kind`` is ``"deadlock"``, ``"halted"`` or ``"exit"``; ``offset`` is
    only meaningful for exits (offset 1 is the first place past the end)."""

    kind: str
    content: int = 0
    offset: int = 0

    @classmethod
    def deadlock(cls) -> Outcome:
        return DEADLOCK

    @classmethod
    def halted(cls, content: int) -> Outcome:
        return cls("halted", content)

    @classmethod
    def exit(cls, offset: int, content: int) -> Outcome:
        if offset < 1:
            raise ValueError("exit offset must be positive")
        return cls("exit", content, offset)

    # Small-integer code used by the search engine.
    @property
    def code(self) -> int:
        if self.kind == "deadlock":
            return 0
        if self.kind == "halted":
            return 1 + self.content
        return 3 + 2 * (self.offset - 1) + self.content

    @classmethod
    def from_code(cls, code: int) -> Outcome:
        if code == 0:
            return DEADLOCK
        if code < 3:
            return cls("halted", code - 1)
        d, c = divmod(code - 3, 2)
        return cls("exit", c, d + 1)

    def __str__(self) -> str:
        if self.kind == "deadlock":
            return "Deadlock"
        if self.kind == "halted":
            return f"Halted({self.content})"
        return f"Exit({self.offset},{self.content})"


DEADLOCK = Outcome("deadlock")


@dataclass(frozen=True, order=True)
class EffectSummary:
    on0: Outcome
    on1: Outcome

    def __getitem__(self, b: int) -> Outcome:
        return self.on1 if b else self.on0

    @property
    def codes(self) -> tuple[int, int]:
        return (self.on0.code, self.on1.code)

    @classmethod
    def from_codes(cls, codes: tuple[int, int]) -> EffectSummary:
        return cls(Outcome.from_code(codes[0]), Outcome.from_code(codes[1]))

    def __str__(self) -> str:
        return f"[0: {self.on0}, 1: {self.on1}]"


def run_register(seq: Sequence[Instruction], b: int) -> Outcome:
    """Run ``seq`` on a single full-method register holding ``b``."""
    n = len(seq)
    pc = 0
    while pc < n:
        ins = seq[pc]
        k = ins.kind
        if k is Kind.HALT:
            return Outcome.halted(b)
        if k is Kind.JUMP:
            if ins.label == 0:
                return DEADLOCK
            pc += ins.label
            continue
        m = ins.method
        r = m.reply(b)
        b = m.transform(b)
        if k is Kind.PLAIN:
            pc += 1
        elif k is Kind.POSTEST:
            pc += 1 if r else 2
        else:
            pc += 2 if r else 1
    return Outcome.exit(pc - n + 1, b)


def summarize(seq: Sequence[Instruction], focus: str | None = None) -> EffectSummary:
    """Effect summary of a single-focus sequence.

    ``focus`` defaults to the sequence's own focus; a sequence of only jumps
    and halts has none.
    """
    items = tuple(seq)
    for u in items:
        if u.is_basic:
            if focus is None:
                focus = u.focus
            elif u.focus != focus:
                raise ForeignFocus(f"instruction {u} does not use focus {focus!r}")
    return EffectSummary(run_register(items, 0), run_register(items, 1))


def _check_eeqv_operand(u: Instruction) -> None:
    if not u.is_basic:
        raise ValueError(f"effectual equivalence is defined on basic-instruction forms, not {u}")


def eeqv(u: Instruction, v: Instruction) -> bool:
    _check_eeqv_operand(u)
    _check_eeqv_operand(v)
    if u.focus != v.focus:
        raise FocusMismatch(f"{u} and {v} use different foci")
    return summarize((u,)) == summarize((v,))


# -- the sixteen classes -------------------------------------------------------

# One representative per class, in the order the classes are usually listed.
CLASS_REPRESENTATIVES: tuple[str, ...] = (
    "+f.ff", "-f.tt", "-f.ti", "-f.tc",
    "f.ff", "f.tt", "f.ii", "f.cc",
    "+f.if", "+f.it", "+f.ii", "-f.cc",
    "-f.if", "-f.it", "-f.ii", "+f.cc",
)


@dataclass(frozen=True)
class EquivalenceClass:
    representative: Instruction
    members: tuple[Instruction, ...]
    summary: EffectSummary

    def methods(self) -> MethodSet:
        return MethodSet(u.method for u in self.members)

    def to_json(self) -> dict:
        return {"representative": str(self.representative), "members": [str(u) for u in self.members]}


def equivalence_classes(focus: str = DEFAULT_FOCUS) -> list[EquivalenceClass]:
    """Partition ``PI_br`` over all 16 methods at ``focus`` by effect."""
    groups: dict[EffectSummary, list[Instruction]] = {}
    for u in enumerate_instructions(MethodSet.full(), focus):
        groups.setdefault(summarize((u,)), []).append(u)
    out = []
    for code in CLASS_REPRESENTATIVES:
        rep = parse_instruction(code).with_focus(focus)
        s = summarize((rep,))
        out.append(EquivalenceClass(rep, tuple(groups.pop(s)), s))
    if groups:
        raise AssertionError(f"unlisted effect classes: {list(groups)}")
    return out


def class_of(u: Instruction) -> EquivalenceClass:
    s = summarize((u,))
    for cls in equivalence_classes(u.focus):
        if cls.summary == s:
            return cls
    raise KeyError(u)


# -- axioms for effectual equivalence -------------------------------------------

# Schema name -> generator of ground instances (u, v) at a focus.
def _schema_instances(name: str, focus: str) -> list[tuple[Instruction, Instruction]]:
    F, T, I, C = UnaryFn
    out = []
    for p in UnaryFn:
        if name == "pos-F~neg-T":
            out.append((postest(focus, _m(F, p)), negtest(focus, _m(T, p))))
        elif name == "pos-T~neg-F":
            out.append((postest(focus, _m(T, p)), negtest(focus, _m(F, p))))
        elif name == "pos-I~neg-C":
            out.append((postest(focus, _m(I, p)), negtest(focus, _m(C, p))))
        elif name == "pos-C~neg-I":
            out.append((postest(focus, _m(C, p)), negtest(focus, _m(I, p))))
        elif name == "pos-T~plain":
            for q in UnaryFn:
                out.append((postest(focus, _m(T, p)), plain(focus, _m(q, p))))
        else:
            raise KeyError(name)
    return out


def _m(p: UnaryFn, q: UnaryFn):
    return METHODS[4 * p + q]


AXIOM_SCHEMAS: tuple[str, ...] = ("pos-F~neg-T", "pos-T~neg-F", "pos-I~neg-C", "pos-C~neg-I", "pos-T~plain")


@dataclass
class AxiomReport:
    instances: int
    violations: list[tuple[str, str, str]] = field(default_factory=list)
    closure_partition: list[frozenset[str]] = field(default_factory=list)
    computed_partition: list[frozenset[str]] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return not self.violations

    @property
    def complete(self) -> bool:
        return sorted(map(sorted, self.closure_partition)) == sorted(map(sorted, self.computed_partition))

    @property
    def closure_finer(self) -> bool:
        """Every closure block lies inside a computed block, and they differ."""
        if self.complete:
            return False
        return all(any(b <= c for c in self.computed_partition) for b in self.closure_partition)


def check_axioms(focus: str = DEFAULT_FOCUS, schemas: Iterable[str] = AXIOM_SCHEMAS) -> AxiomReport:
    """Soundness and completeness of the effectual-equivalence axioms.

    Soundness: every ground instance holds under :func:`eeqv`. Completeness:
    the equivalence closure of the instances partitions the 48 instructions
    exactly as the effect summaries do.
    """
    universe = enumerate_instructions(MethodSet.full(), focus)
    parent = {u: u for u in universe}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    report = AxiomReport(instances=0)
    for name in schemas:
        for u, v in _schema_instances(name, focus):
            report.instances += 1
            if not eeqv(u, v):
                report.violations.append((name, str(u), str(v)))
            parent[find(u)] = find(v)
    blocks: dict[Instruction, set[str]] = {}
    for u in universe:
        blocks.setdefault(find(u), set()).add(str(u))
    report.closure_partition = [frozenset(b) for b in blocks.values()]
    report.computed_partition = [frozenset(str(u) for u in c.members) for c in equivalence_classes(focus)]
    return report


# -- minimal method sets -------------------------------------------------------


def minimal_method_sets() -> list[MethodSet]:
    """All inclusion-minimal method sets whose instructions hit every class.

    Exact enumeration over all 2**16 subsets; ``hits`` is monotone, so a set
    is minimal iff dropping any single member breaks it.
    """
    supports = [c.methods().mask for c in equivalence_classes()]

    def hits(mask: int) -> bool:
        return all(mask & s for s in supports)

    out = []
    for mask in range(1 << 16):
        if not hits(mask):
            continue
        if all(not hits(mask & ~(1 << i)) for i in range(16) if mask >> i & 1):
            out.append(MethodSet(mask))
    return out


# -- functional equivalence ------------------------------------------------------


def feqv(x: InstructionSeq, y: InstructionSeq, foci: Sequence[str]) -> bool:
    """Functional equivalence of ``x`` and ``y`` over registers at ``foci``."""
    foci = list(foci)
    missing = [f for f in itertools.chain(x.foci(), y.foci()) if f not in foci]
    if missing:
        raise FociIncomplete(f"foci not covered: {sorted(set(missing))}")
    if len(foci) > MAX_FEQV_FOCI:
        raise ValueError(f"at most {MAX_FEQV_FOCI} foci supported, got {len(foci)}")
    for bits in itertools.product((0, 1), repeat=len(foci)):
        fam = ServiceFamily.registers(dict(zip(foci, bits)))
        kx, ax = run_positional(x, fam)
        if kx is Termination.UNRESOLVED:
            return False
        ky, ay = run_positional(y, fam)
        if kx is not ky or ax != ay:
            return False
    return True
