"""Shortest-witness search over single-register instruction sequences.

Candidates of length ``L`` are drawn from ``PI_br(M)`` at the fixed focus, the
jumps ``#0 .. #(L+1)`` and ``!``. Among the realizing sequences of minimal
length the least one in canonical instruction order is returned, so both
engines below return identical witnesses.

``dp`` builds sequences back to front. A suffix is characterised by the
outcomes of starting at each of its positions; two suffixes with the same
vector behave the same under any prefix, so only the least suffix per
vector is kept. Outcomes that can never match a target (deadlock, halt, or
an exit three or more places past the end) are collapsed into one.

``naive`` enumerates every candidate and runs it; it is the oracle for
``dp``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..equivalence import DEFAULT_FOCUS, summarize
from ..isa import HALT, Instruction, InstructionSeq, Kind, MethodSet, enumerate_instructions, jump
from .targets import Target, targets

# Search-internal outcome codes: 0 is "never matches", 1 + 2*(d-1) + c is an
# exit at offset d in {1, 2} with content c.
_DEAD = 0


def _target_code(t: Target) -> tuple[int, int]:
    return tuple(1 + 2 * (o.offset - 1) + o.content for o in (t.summary.on0, t.summary.on1))


def alphabet(methods: MethodSet, length: int, label_slack: int = 0) -> list[Instruction]:
    """Candidate instructions for sequences of ``length``, in canonical order."""
    basics = enumerate_instructions(methods, DEFAULT_FOCUS)
    out = [jump(l) for l in range(length + 2 + label_slack)]
    out.append(HALT)
    out += sorted(basics)
    return out


def _compile(u: Instruction) -> tuple:
    if u.kind is Kind.JUMP:
        return (0, u.label)
    if u.kind is Kind.HALT:
        return (1,)
    m = u.method
    return (int(u.kind), (m.reply(0), m.reply(1)), (m.transform(0), m.transform(1)))


def _first(u: tuple, vec: tuple, n: int) -> tuple[int, int]:
    """Outcome pair of ``u`` prepended to a suffix with outcome vector ``vec``."""

    def out(j: int, c: int) -> int:
        if j < n:
            return vec[j][c]
        d = j - n
        if d == 0:
            return 1 + c
        if d == 1:
            return 3 + c
        return _DEAD

    kind = u[0]
    if kind == 0:
        label = u[1]
        if label == 0:
            return (_DEAD, _DEAD)
        return (out(label - 1, 0), out(label - 1, 1))
    if kind == 1:
        return (_DEAD, _DEAD)
    (r0, r1), (c0, c1) = u[1], u[2]
    if kind == Kind.PLAIN:
        return (out(0, c0), out(0, c1))
    if kind == Kind.POSTEST:
        return (out(0 if r0 else 1, c0), out(0 if r1 else 1, c1))
    return (out(1 if r0 else 0, c0), out(1 if r1 else 0, c1))


def _search_length_dp(alpha: Sequence[Instruction], length: int, wanted: dict) -> dict:
    """Least realizing index tuple of exactly ``length`` per wanted code."""
    comp = [_compile(u) for u in alpha]
    level: dict[tuple, tuple] = {(): ()}
    for n in range(length - 1):
        nxt: dict[tuple, tuple] = {}
        for vec, rep in level.items():
            for ui, u in enumerate(comp):
                nv = (_first(u, vec, n),) + vec
                r = (ui,) + rep
                old = nxt.get(nv)
                if old is None or r < old:
                    nxt[nv] = r
        level = nxt
    found: dict[tuple, tuple] = {}
    n = length - 1
    for vec, rep in level.items():
        for ui, u in enumerate(comp):
            s = _first(u, vec, n)
            if s in wanted:
                r = (ui,) + rep
                old = found.get(s)
                if old is None or r < old:
                    found[s] = r
    return found


def _search_length_naive(alpha: Sequence[Instruction], length: int, wanted: dict) -> dict:
    found: dict[tuple, tuple] = {}
    for idx in itertools.product(range(len(alpha)), repeat=length):
        seq = [alpha[i] for i in idx]
        s = summarize(seq)
        if s.on0.kind != "exit" or s.on1.kind != "exit" or s.on0.offset > 2 or s.on1.offset > 2:
            continue
        code = (1 + 2 * (s.on0.offset - 1) + s.on0.content, 1 + 2 * (s.on1.offset - 1) + s.on1.content)
        if code in wanted and code not in found:
            found[code] = idx  # product() yields in lexicographic order
    return found


ENGINES = {"dp": _search_length_dp, "naive": _search_length_naive}


def search_witnesses(
    methods: MethodSet,
    kmax: int,
    wanted: Iterable[Target] | None = None,
    engine: str = "dp",
    label_slack: int = 0,
) -> dict[Target, InstructionSeq]:
    """Shortest (then least) witness for each wanted target, up to ``kmax``."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    search = ENGINES[engine]
    remaining = {_target_code(t): t for t in (targets() if wanted is None else wanted)}
    found: dict[Target, InstructionSeq] = {}
    for length in range(1, kmax + 1):
        if not remaining:
            break
        alpha = alphabet(methods, length, label_slack)
        for code, idx in search(alpha, length, remaining).items():
            found[remaining.pop(code)] = InstructionSeq(alpha[i] for i in idx)
    return found


def find_witness(methods: MethodSet, t: Target, kmax: int, engine: str = "dp") -> InstructionSeq | None:
    """Shortest witness for ``t`` of length at most ``kmax``, or None."""
    return search_witnesses(methods, kmax, [t], engine).get(t)
