"""Sound impossibility arguments for a method set and a target.

Register content only ever changes by applying transform functions of the
methods used, so the content reachable from input ``b`` is the orbit of ``b``
under the monoid those transforms generate. If additionally every reply is
constant, control flow cannot depend on the input at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..isa import MethodSet, UnaryFn, compose_fn
from .targets import Target


@dataclass(frozen=True)
class Unwritable:
    input: int
    required_content: int

    def to_json(self) -> dict:
        return {"kind": "unwritable", "input": self.input, "required_content": self.required_content}


@dataclass(frozen=True)
class InputBlindBranching:
    def to_json(self) -> dict:
        return {"kind": "input-blind-branching"}


Certificate = Unwritable | InputBlindBranching


def transform_monoid(methods: MethodSet) -> frozenset[UnaryFn]:
    """Closure of the transforms of ``methods`` under composition, with identity."""
    gens = {m.transform for m in methods}
    monoid = {UnaryFn.I}
    frontier = list(monoid)
    while frontier:
        f = frontier.pop()
        for g in gens:
            h = compose_fn(g, f)
            if h not in monoid:
                monoid.add(h)
                frontier.append(h)
    return frozenset(monoid)


def incompleteness_certificate(methods: MethodSet, t: Target) -> Certificate | None:
    monoid = transform_monoid(methods)
    for b in (0, 1):
        c = t.summary[b].content
        if all(g(b) != c for g in monoid):
            return Unwritable(b, c)
    if all(m.reply in (UnaryFn.F, UnaryFn.T) for m in methods):
        on0, on1 = t.summary.on0, t.summary.on1
        if on0.offset != on1.offset:
            return InputBlindBranching()
        if UnaryFn.from_table(on0.content, on1.content) not in monoid:
            return InputBlindBranching()
    return None
