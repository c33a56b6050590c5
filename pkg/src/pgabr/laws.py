"""Algebraic laws of sequences, service families and use/apply as
executable property checks, plus the exhaustive interpreter cross-check.

Each law draws one random instance from an ``rng`` and returns ``None`` when
the instance holds, or a short description of the counterexample.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

from . import gen
from .isa import HALT, MethodSet, enumerate_instructions, jump
from .semantics import (
    DEAD_END,
    EMPTY_FAMILY,
    EMPTY_SERVICE,
    STOP,
    Post,
    Register,
    Reply,
    ServiceFamily,
    Termination,
    apply,
    encapsulate,
    family_compose,
    run_axiomatic,
    run_positional,
    service_step,
    thread_extract,
    use,
)

Law = Callable[[random.Random], "str | None"]


def _foci_subset(rng: random.Random) -> set[str]:
    return {f for f in gen.FOCI if rng.random() < 0.5}


def _sfc1(rng):
    u = gen.family(rng)
    return None if family_compose(u, EMPTY_FAMILY) == u else f"u={u}"


def _sfc2(rng):
    u, v = gen.family(rng), gen.family(rng)
    return None if family_compose(u, v) == family_compose(v, u) else f"u={u} v={v}"


def _sfc3(rng):
    u, v, w = gen.family(rng), gen.family(rng), gen.family(rng)
    lhs = family_compose(family_compose(u, v), w)
    rhs = family_compose(u, family_compose(v, w))
    return None if lhs == rhs else f"u={u} v={v} w={w}"


def _sfc4(rng):
    f = rng.choice(gen.FOCI)
    got = family_compose(ServiceFamily.single(f, gen.service(rng)), ServiceFamily.single(f, gen.service(rng)))
    return None if got == ServiceFamily.single(f, EMPTY_SERVICE) else f"got {got}"


def _sfe1(rng):
    return None if encapsulate(_foci_subset(rng), EMPTY_FAMILY) == EMPTY_FAMILY else "non-empty"


def _sfe2(rng):
    F = _foci_subset(rng) | {rng.choice(gen.FOCI)}
    f = rng.choice(sorted(F))
    got = encapsulate(F, ServiceFamily.single(f, gen.service(rng)))
    return None if got == EMPTY_FAMILY else f"F={F} got {got}"


def _sfe3(rng):
    F = _foci_subset(rng)
    rest = [f for f in gen.FOCI if f not in F]
    if not rest:
        F.discard(gen.FOCI[0])
        rest = [gen.FOCI[0]]
    z = ServiceFamily.single(rng.choice(rest), gen.service(rng))
    return None if encapsulate(F, z) == z else f"F={F} z={z}"


def _sfe4(rng):
    F = _foci_subset(rng)
    u, v = gen.family(rng), gen.family(rng)
    lhs = encapsulate(F, family_compose(u, v))
    rhs = family_compose(encapsulate(F, u), encapsulate(F, v))
    return None if lhs == rhs else f"F={F} u={u} v={v}"


def _au1(rng):
    return None if use(STOP, gen.family(rng)) is STOP else "not S"


def _au2(rng):
    return None if use(DEAD_END, gen.family(rng)) is DEAD_END else "not D"


def _a1(rng):
    u = gen.family(rng)
    return None if apply(STOP, u) == u else f"u={u}"


def _a2(rng):
    return None if apply(DEAD_END, gen.family(rng)) == EMPTY_FAMILY else "not empty"


def _post(rng):
    t = gen.thread(rng)
    while not isinstance(t, Post):
        t = gen.thread(rng)
    return t


def _au3(rng):
    t = _post(rng)
    v = encapsulate({t.focus}, gen.family(rng))
    rhs = Post(t.focus, t.method, use(t.then, v), use(t.orelse, v))
    return None if use(t, v) == rhs else f"t={t!r} v={v}"


def _a3(rng):
    t = _post(rng)
    v = encapsulate({t.focus}, gen.family(rng))
    return None if apply(t, v) == EMPTY_FAMILY else f"t={t!r} v={v}"


def _served(rng, want: Reply):
    """A thread ``x <| f.m |> y``, service ``s`` and rest family whose reply is ``want``."""
    while True:
        t = _post(rng)
        s = gen.service(rng)
        reply, s2 = service_step(s, t.method)
        if reply is want:
            rest = encapsulate({t.focus}, gen.family(rng))
            before = family_compose(ServiceFamily.single(t.focus, s), rest)
            after = family_compose(ServiceFamily.single(t.focus, s2), rest)
            return t, before, after


def _use_branch(want: Reply):
    def law(rng):
        t, before, after = _served(rng, want)
        if want is Reply.DIV:
            rhs = DEAD_END
        else:
            rhs = use(t.then if want is Reply.TRUE else t.orelse, after)
        return None if use(t, before) == rhs else f"t={t!r} u={before}"

    return law


def _apply_branch(want: Reply):
    def law(rng):
        t, before, after = _served(rng, want)
        if want is Reply.DIV:
            rhs = EMPTY_FAMILY
        else:
            rhs = apply(t.then if want is Reply.TRUE else t.orelse, after)
        return None if apply(t, before) == rhs else f"t={t!r} u={before}"

    return law


def _pga1(rng):
    x, y, z = (gen.sequence(rng, 5, gen.FOCI) for _ in range(3))
    lhs, rhs = (x + y) + z, x + (y + z)
    if lhs != rhs or thread_extract(lhs) != thread_extract(rhs):
        return f"{x} / {y} / {z}"
    return None


LAWS: dict[str, Law] = {
    "SFC1": _sfc1, "SFC2": _sfc2, "SFC3": _sfc3, "SFC4": _sfc4,
    "SFE1": _sfe1, "SFE2": _sfe2, "SFE3": _sfe3, "SFE4": _sfe4,
    "AU1": _au1, "AU2": _au2, "AU3": _au3,
    "AU4": _use_branch(Reply.TRUE), "AU5": _use_branch(Reply.FALSE), "AU6": _use_branch(Reply.DIV),
    "A1": _a1, "A2": _a2, "A3": _a3,
    "A4": _apply_branch(Reply.TRUE), "A5": _apply_branch(Reply.FALSE), "A6": _apply_branch(Reply.DIV),
    "PGA1": _pga1,
}


def check_law(name: str, seed: int = gen.DEFAULT_SEED, n: int = 200) -> list[str]:
    """Counterexamples among ``n`` seeded instances of law ``name``."""
    rng = random.Random(f"{seed}:{name}")
    law = LAWS[name]
    return [bad for bad in (law(rng) for _ in range(n)) if bad is not None]


CROSS_CHECK_METHODS = MethodSet.from_codes("ff,tt,ii,cc")
CROSS_CHECK_MAX_LABEL = 3


def cross_check_alphabet(methods: MethodSet = CROSS_CHECK_METHODS, max_label: int = CROSS_CHECK_MAX_LABEL):
    return [*enumerate_instructions(methods, "f"), *(jump(l) for l in range(max_label + 1)), HALT]


def agrees(seq, fam: ServiceFamily, thr=None) -> bool:
    """Positional run and thread extraction + use/apply agree on ``fam``."""
    kind, out = run_positional(seq, fam)
    thr = thread_extract(seq) if thr is None else thr
    if kind is Termination.TERMINATED:
        return use(thr, fam) is STOP and apply(thr, fam) == out
    if kind is Termination.DEADLOCKED:
        return use(thr, fam) is DEAD_END and apply(thr, fam) == EMPTY_FAMILY
    return False


def cross_check(max_len: int = 5, methods: MethodSet = CROSS_CHECK_METHODS, max_label: int = CROSS_CHECK_MAX_LABEL):
    """Exhaustive interpreter agreement over every single-focus sequence up
    to ``max_len``. Returns ``(checked, mismatches)``."""
    alpha = cross_check_alphabet(methods, max_label)
    fams = [ServiceFamily.registers({"f": b}) for b in (0, 1)]
    checked, bad = 0, []
    for n in range(1, max_len + 1):
        for seq in itertools.product(alpha, repeat=n):
            thr = thread_extract(seq)
            for fam in fams:
                checked += 1
                if not agrees(seq, fam, thr):
                    bad.append((seq, fam))
    return checked, bad
