"""Seeded random generators shared by the property suites and ``verify``."""

from __future__ import annotations

import random

from .isa import HALT, METHODS, Instruction, InstructionSeq, Kind, MethodSet, jump
from .semantics import (
    DEAD_END,
    EMPTY_SERVICE,
    STOP,
    Post,
    Register,
    ServiceFamily,
    ServiceState,
    Thread,
)

DEFAULT_SEED = 0xB00
FOCI = ("f", "g", "h")


def method_set(rng: random.Random, min_size: int = 1) -> MethodSet:
    while True:
        m = MethodSet(rng.getrandbits(16))
        if len(m) >= min_size:
            return m


def instruction(rng: random.Random, foci=("f",), methods: MethodSet | None = None, max_label: int = 4) -> Instruction:
    methods = list(methods) if methods is not None else list(METHODS)
    r = rng.random()
    if r < 0.15:
        return jump(rng.randint(0, max_label))
    if r < 0.22:
        return HALT
    kind = rng.choice((Kind.PLAIN, Kind.POSTEST, Kind.NEGTEST))
    return Instruction(kind, rng.choice(foci), rng.choice(methods))


def sequence(rng: random.Random, max_len: int = 12, foci=("f",), methods: MethodSet | None = None) -> InstructionSeq:
    n = rng.randint(1, max_len)
    return InstructionSeq(instruction(rng, foci, methods) for _ in range(n))


def service(rng: random.Random) -> ServiceState:
    if rng.random() < 0.1:
        return EMPTY_SERVICE
    # mostly full registers so that runs go somewhere
    methods = MethodSet.full() if rng.random() < 0.7 else method_set(rng)
    return Register(rng.randint(0, 1), methods)


def family(rng: random.Random, foci=FOCI) -> ServiceFamily:
    return ServiceFamily((f, service(rng)) for f in foci if rng.random() < 0.6)


def thread(rng: random.Random, depth: int = 3, foci=FOCI) -> Thread:
    if depth == 0 or rng.random() < 0.25:
        return STOP if rng.random() < 0.5 else DEAD_END
    return Post(rng.choice(foci), rng.choice(METHODS), thread(rng, depth - 1, foci), thread(rng, depth - 1, foci))
