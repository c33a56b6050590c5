"""Execution semantics: threads, Boolean register services, service families.

Two routes compute what an instruction sequence does to a service family:

* the axiomatic route, :func:`thread_extract` followed by :func:`use` and
  :func:`apply`, which follows the defining equations rule by rule;
* :func:`run_positional`, a program-counter interpreter used everywhere
  performance matters.

The test suite holds the two routes equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .isa import Instruction, InstructionSeq, Kind, Method, MethodSet, check_focus


# -- threads ---------------------------------------------------------------


class Thread:
    __slots__ = ()


class _Stop(Thread):
    __slots__ = ()

    def __repr__(self) -> str:
        return "S"


class _DeadEnd(Thread):
    __slots__ = ()

    def __repr__(self) -> str:
        return "D"


STOP = _Stop()
DEAD_END = _DeadEnd()


class Post(Thread):
    """Postconditional composition: perform ``focus.method``, then ``then`` on
    reply true and ``orelse`` on reply false."""

    __slots__ = ("focus", "method", "then", "orelse", "_hash")

    def __init__(self, focus: str, method: Method, then: Thread, orelse: Thread):
        self.focus = focus
        self.method = method
        self.then = then
        self.orelse = orelse
        self._hash = hash((focus, method.index, hash(then), hash(orelse)))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Post) or self._hash != other._hash:
            return False
        # threads are DAGs with shared subtrees; compare each node pair once
        seen = set()
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b or (id(a), id(b)) in seen:
                continue
            if not (isinstance(a, Post) and isinstance(b, Post)):
                return False
            if a._hash != b._hash or a.focus != b.focus or a.method != b.method:
                return False
            seen.add((id(a), id(b)))
            stack.append((a.then, b.then))
            stack.append((a.orelse, b.orelse))
        return True

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"({self.then!r} <{self.focus}.{self.method.code}> {self.orelse!r})"


def thread_depth(t: Thread) -> int:
    memo: dict[int, int] = {}

    def depth(t: Thread) -> int:
        if not isinstance(t, Post):
            return 0
        d = memo.get(id(t))
        if d is None:
            d = memo[id(t)] = 1 + max(depth(t.then), depth(t.orelse))
        return d

    return depth(t)


def thread_extract(seq: InstructionSeq) -> Thread:
    """The thread produced by ``seq``, by the thread-extraction equations.

    Results are memoised per position, so consecutive tests share subtrees
    instead of copying them.
    """
    items = tuple(seq)
    n = len(items)
    memo: dict[int, Thread] = {}
    jmemo: dict[tuple[int, int], Thread] = {}

    def at(i: int) -> Thread:
        # |items[i:]|, i < n
        t = memo.get(i)
        if t is not None:
            return t
        u = items[i]
        last = i == n - 1
        if u.kind is Kind.HALT:
            t = STOP  # |!| = S, |! ; X| = S
        elif u.kind is Kind.JUMP:
            t = jump_then(u.label, i + 1)
        elif u.kind is Kind.PLAIN:
            # |a| = a o D, |a ; X| = a o |X|
            rest = DEAD_END if last else at(i + 1)
            t = Post(u.focus, u.method, rest, rest)
        elif u.kind is Kind.POSTEST:
            # |+a| = a o D, |+a ; X| = |X| <a> |#2 ; X|
            if last:
                t = Post(u.focus, u.method, DEAD_END, DEAD_END)
            else:
                t = Post(u.focus, u.method, at(i + 1), jump_then(2, i + 1))
        else:
            # |-a| = a o D, |-a ; X| = |#2 ; X| <a> |X|
            if last:
                t = Post(u.focus, u.method, DEAD_END, DEAD_END)
            else:
                t = Post(u.focus, u.method, jump_then(2, i + 1), at(i + 1))
        memo[i] = t
        return t

    def jump_then(label: int, j: int) -> Thread:
        # |#label ; items[j:]|
        key = (label, j)
        t = jmemo.get(key)
        if t is not None:
            return t
        if j >= n:
            t = DEAD_END  # |#l| = D
        elif label == 0:
            t = DEAD_END  # |#0 ; X| = D
        elif label == 1:
            t = at(j)  # |#1 ; X| = |X|
        elif j == n - 1:
            t = DEAD_END  # |#(l+2) ; u| = D
        else:
            t = jump_then(label - 1, j + 1)  # |#(l+2) ; u ; X| = |#(l+1) ; X|
        jmemo[key] = t
        return t

    return at(0)


# -- services ----------------------------------------------------------------


class Reply(enum.Enum):
    FALSE = 0
    TRUE = 1
    DIV = 2


class ServiceState:
    __slots__ = ()


class _EmptyService(ServiceState):
    __slots__ = ()

    def __repr__(self) -> str:
        return "EmptyService"


EMPTY_SERVICE = _EmptyService()


@dataclass(frozen=True)
class Register(ServiceState):
    """Boolean register holding ``content`` that processes exactly ``methods``."""

    content: int
    methods: MethodSet

    def __post_init__(self):
        if self.content not in (0, 1):
            raise ValueError(f"register content must be 0 or 1, got {self.content!r}")


@lru_cache(maxsize=8192)
def service_step(s: ServiceState, m: Method) -> tuple[Reply, ServiceState]:
    if isinstance(s, Register) and m in s.methods:
        reply = Reply.TRUE if m.reply(s.content) else Reply.FALSE
        return reply, Register(m.transform(s.content), s.methods)
    return Reply.DIV, EMPTY_SERVICE


class ServiceFamily(Mapping[str, ServiceState]):
    """Finite map from focus to service; immutable."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[str, ServiceState] | Iterable[tuple[str, ServiceState]] = ()):
        d = dict(entries)
        for f, s in d.items():
            check_focus(f)
            if not isinstance(s, ServiceState):
                raise TypeError(f"not a service: {s!r}")
        self._entries = dict(sorted(d.items()))
        self._hash = None

    @classmethod
    def single(cls, focus: str, service: ServiceState) -> ServiceFamily:
        return cls({focus: service})

    @classmethod
    def registers(cls, contents: Mapping[str, int], methods: MethodSet | None = None) -> ServiceFamily:
        methods = MethodSet.full() if methods is None else methods
        return cls({f: Register(b, methods) for f, b in contents.items()})

    def __getitem__(self, focus: str) -> ServiceState:
        return self._entries[focus]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, ServiceFamily):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def updated(self, focus: str, service: ServiceState) -> ServiceFamily:
        if focus not in self._entries:
            return ServiceFamily({**self._entries, focus: service})
        # same keys, so validation and ordering carry over
        out = object.__new__(ServiceFamily)
        out._entries = {**self._entries, focus: service}
        out._hash = None
        return out

    def __repr__(self) -> str:
        return f"ServiceFamily({self._entries!r})"

    def to_json(self) -> dict:
        out = {}
        for f, s in self._entries.items():
            if isinstance(s, Register):
                out[f] = {"content": s.content, "methods": s.methods.codes()}
            else:
                out[f] = "empty"
        return out


EMPTY_FAMILY = ServiceFamily()


def family_compose(u: ServiceFamily, v: ServiceFamily) -> ServiceFamily:
    d = dict(u)
    for f, s in v.items():
        d[f] = EMPTY_SERVICE if f in d else s
    return ServiceFamily(d)


def encapsulate(foci: Iterable[str], u: ServiceFamily) -> ServiceFamily:
    drop = set(foci)
    return ServiceFamily((f, s) for f, s in u.items() if f not in drop)


# -- abstracting use and apply ------------------------------------------------


def use(t: Thread, u: ServiceFamily) -> Thread:
    if t is STOP or t is DEAD_END:
        return t
    if t.focus not in u:
        return Post(t.focus, t.method, use(t.then, u), use(t.orelse, u))
    reply, s = service_step(u[t.focus], t.method)
    if reply is Reply.DIV:
        return DEAD_END
    nxt = u.updated(t.focus, s)
    return use(t.then if reply is Reply.TRUE else t.orelse, nxt)


def apply(t: Thread, u: ServiceFamily) -> ServiceFamily:
    if t is STOP:
        return u
    if t is DEAD_END:
        return EMPTY_FAMILY
    if t.focus not in u:
        return EMPTY_FAMILY
    reply, s = service_step(u[t.focus], t.method)
    if reply is Reply.DIV:
        return EMPTY_FAMILY
    nxt = u.updated(t.focus, s)
    return apply(t.then if reply is Reply.TRUE else t.orelse, nxt)


# -- positional interpreter ---------------------------------------------------


class Termination(enum.Enum):
    TERMINATED = "terminated"
    DEADLOCKED = "deadlocked"
    # a basic instruction named a focus missing from the family: abstracting
    # use keeps the action, so the residual thread is neither S nor D
    UNRESOLVED = "unresolved"


def run_positional(seq: InstructionSeq, u: ServiceFamily) -> tuple[Termination, ServiceFamily]:
    items = tuple(seq)
    n = len(items)
    services = dict(u)
    pc = 0
    while pc < n:
        ins = items[pc]
        k = ins.kind
        if k is Kind.HALT:
            return Termination.TERMINATED, ServiceFamily(services)
        if k is Kind.JUMP:
            if ins.label == 0:
                break
            pc += ins.label
            continue
        if ins.focus not in services:
            return Termination.UNRESOLVED, EMPTY_FAMILY
        reply, s = service_step(services[ins.focus], ins.method)
        if reply is Reply.DIV:
            break
        services[ins.focus] = s
        if k is Kind.PLAIN:
            pc += 1
        elif k is Kind.POSTEST:
            pc += 1 if reply is Reply.TRUE else 2
        else:
            pc += 2 if reply is Reply.TRUE else 1
    return Termination.DEADLOCKED, EMPTY_FAMILY


def run_axiomatic(seq: InstructionSeq, u: ServiceFamily) -> tuple[Thread, ServiceFamily]:
    t = thread_extract(seq)
    return use(t, u), apply(t, u)


def termination_of(t: Thread) -> Termination:
    if t is STOP:
        return Termination.TERMINATED
    if t is DEAD_END:
        return Termination.DEADLOCKED
    return Termination.UNRESOLVED
