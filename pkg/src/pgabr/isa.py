"""Instruction model for Boolean registers.

Unary Boolean functions, the sixteen register methods ``m(p, q)``, primitive
instructions, finite instruction sequences and their text syntax::

    +f.ii ; #2 ; f.cc ; !

A method is written as two letters from ``f t i c``: the reply function
followed by the transform function.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


_FOCUS_RE = re.compile(r"[a-z][a-z0-9]*")
_METHOD_RE = re.compile(r"[ftic][ftic]")


class UnaryFn(enum.IntEnum):
    """The four functions ``Bool -> Bool``, in canonical order."""

    F = 0
    T = 1
    I = 2  # noqa: E741
    C = 3

    def __call__(self, b: int) -> int:
        return _FN_TABLE[self][b]

    @property
    def code(self) -> str:
        return self.name.lower()

    @classmethod
    def from_table(cls, on0: int, on1: int) -> UnaryFn:
        return _FN_BY_TABLE[(on0, on1)]

    @classmethod
    def from_code(cls, ch: str) -> UnaryFn:
        return cls[ch.upper()]


_FN_TABLE = {
    UnaryFn.F: (0, 0),
    UnaryFn.T: (1, 1),
    UnaryFn.I: (0, 1),
    UnaryFn.C: (1, 0),
}
_FN_BY_TABLE = {v: k for k, v in _FN_TABLE.items()}


def apply_fn(fn: UnaryFn, b: int) -> int:
    return _FN_TABLE[fn][b]


def compose_fn(g: UnaryFn, f: UnaryFn) -> UnaryFn:
    """Return ``g . f``."""
    return UnaryFn.from_table(g(f(0)), g(f(1)))


@dataclass(frozen=True, order=True)
class Method:
    reply: UnaryFn
    transform: UnaryFn

    @property
    def index(self) -> int:
        return 4 * self.reply + self.transform

    @property
    def code(self) -> str:
        return self.reply.code + self.transform.code

    @classmethod
    def from_index(cls, i: int) -> Method:
        return METHODS[i]

    @classmethod
    def from_code(cls, code: str) -> Method:
        code = code.strip().lower()
        if not _METHOD_RE.fullmatch(code):
            raise ValueError(f"bad method code {code!r}")
        return METHODS[4 * UnaryFn.from_code(code[0]) + UnaryFn.from_code(code[1])]

    def __str__(self) -> str:
        return self.code


METHODS: tuple[Method, ...] = tuple(Method(p, q) for p in UnaryFn for q in UnaryFn)


def enumerate_methods() -> list[Method]:
    return list(METHODS)


class MethodSet:
    """Set of methods stored as a 16-bit mask (bit ``i`` is method index ``i``)."""

    __slots__ = ("mask",)

    def __init__(self, methods: Iterable[Method] | int = ()):
        if isinstance(methods, int):
            if not 0 <= methods < 1 << 16:
                raise ValueError(f"method mask out of range: {methods}")
            mask = methods
        else:
            mask = 0
            for m in methods:
                mask |= 1 << m.index
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("MethodSet is immutable")

    @classmethod
    def from_codes(cls, text: str | Iterable[str]) -> MethodSet:
        if isinstance(text, str):
            text = [c for c in text.split(",") if c.strip()]
        return cls(Method.from_code(c) for c in text)

    @classmethod
    def full(cls) -> MethodSet:
        return cls(0xFFFF)

    def __contains__(self, m: Method) -> bool:
        return bool(self.mask >> m.index & 1)

    def __iter__(self) -> Iterator[Method]:
        return (m for m in METHODS if self.mask >> m.index & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __eq__(self, other) -> bool:
        return isinstance(other, MethodSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(("MethodSet", self.mask))

    def __lt__(self, other: MethodSet) -> bool:
        return self.mask < other.mask

    def __or__(self, other: MethodSet) -> MethodSet:
        return MethodSet(self.mask | other.mask)

    def __and__(self, other: MethodSet) -> MethodSet:
        return MethodSet(self.mask & other.mask)

    def issubset(self, other: MethodSet) -> bool:
        return self.mask & ~other.mask == 0

    def codes(self) -> list[str]:
        return [m.code for m in self]

    def __str__(self) -> str:
        return ",".join(self.codes())

    def __repr__(self) -> str:
        return f"MethodSet({str(self)!r})"


# The 8-method set shown to hit every effect class.
CANONICAL_BASE = MethodSet.from_codes("ff,tt,ii,cc,if,it,ti,tc")


def check_focus(name: str) -> str:
    if not isinstance(name, str) or not _FOCUS_RE.fullmatch(name):
        raise ValueError(f"invalid focus name {name!r}")
    return name


class Kind(enum.IntEnum):
    # Order doubles as the search tie-break order.
    JUMP = 0
    HALT = 1
    PLAIN = 2
    POSTEST = 3
    NEGTEST = 4


_PREFIX = {Kind.PLAIN: "", Kind.POSTEST: "+", Kind.NEGTEST: "-"}


@dataclass(frozen=True)
class Instruction:
    """A primitive instruction.

    Use the constructors :func:`plain`, :func:`postest`, :func:`negtest`,
    :func:`jump` and :data:`HALT` rather than building one directly.
    """

    kind: Kind
    focus: str | None = None
    method: Method | None = None
    label: int = 0

    def __post_init__(self):
        if self.kind in (Kind.PLAIN, Kind.POSTEST, Kind.NEGTEST):
            check_focus(self.focus)
            if not isinstance(self.method, Method):
                raise TypeError("basic instruction needs a Method")
        elif self.kind is Kind.JUMP:
            if not isinstance(self.label, int) or self.label < 0:
                raise ValueError(f"jump label must be a natural number, got {self.label!r}")

    @property
    def is_basic(self) -> bool:
        return self.kind >= Kind.PLAIN

    def sort_key(self) -> tuple[int, int, str]:
        if self.kind is Kind.JUMP:
            return (0, self.label, "")
        if self.kind is Kind.HALT:
            return (1, 0, "")
        return (int(self.kind), self.method.index, self.focus)

    def __lt__(self, other: Instruction) -> bool:
        return self.sort_key() < other.sort_key()

    def with_focus(self, focus: str) -> Instruction:
        if not self.is_basic:
            return self
        return Instruction(self.kind, focus, self.method)

    def __str__(self) -> str:
        if self.kind is Kind.JUMP:
            return f"#{self.label}"
        if self.kind is Kind.HALT:
            return "!"
        return f"{_PREFIX[self.kind]}{self.focus}.{self.method.code}"

    def __repr__(self) -> str:
        return f"<{self}>"


def plain(focus: str, method: Method | str) -> Instruction:
    return Instruction(Kind.PLAIN, focus, _as_method(method))


def postest(focus: str, method: Method | str) -> Instruction:
    return Instruction(Kind.POSTEST, focus, _as_method(method))


def negtest(focus: str, method: Method | str) -> Instruction:
    return Instruction(Kind.NEGTEST, focus, _as_method(method))


def jump(label: int) -> Instruction:
    return Instruction(Kind.JUMP, label=label)


HALT = Instruction(Kind.HALT)


def _as_method(m: Method | str) -> Method:
    return m if isinstance(m, Method) else Method.from_code(m)


def enumerate_instructions(methods: MethodSet, focus: str) -> list[Instruction]:
    """``PI_br(M)`` at one focus: ``f.m, +f.m, -f.m`` for each method, method-major."""
    out = []
    for m in methods:
        out += [plain(focus, m), postest(focus, m), negtest(focus, m)]
    return out


class InstructionSeq(tuple):
    """Non-empty finite sequence of primitive instructions.

    A tuple subclass, so ``+`` is concatenation and slicing works as usual.
    """

    def __new__(cls, items: Iterable[Instruction] = ()):
        items = tuple(items)
        if not items:
            raise ValueError("instruction sequences are non-empty")
        for u in items:
            if not isinstance(u, Instruction):
                raise TypeError(f"not an Instruction: {u!r}")
        return super().__new__(cls, items)

    def __add__(self, other: Sequence[Instruction]) -> InstructionSeq:
        return InstructionSeq(tuple(self) + tuple(other))

    def __getitem__(self, key):
        r = super().__getitem__(key)
        if isinstance(key, slice):
            return tuple(r)
        return r

    def foci(self) -> list[str]:
        """Foci in order of first occurrence."""
        seen: dict[str, None] = {}
        for u in self:
            if u.is_basic:
                seen.setdefault(u.focus, None)
        return list(seen)

    def with_focus(self, focus: str) -> InstructionSeq:
        return InstructionSeq(u.with_focus(focus) for u in self)

    def __str__(self) -> str:
        return render_sequence(self)

    def __repr__(self) -> str:
        return f"InstructionSeq({render_sequence(self)!r})"


class SyntaxError(ValueError):  # noqa: A001 - deliberately shadows the builtin inside this module's API
    """Malformed sequence text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnsupportedRepetition(SyntaxError):
    """The repetition operator ``*`` was used; only finite sequences exist here."""


_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<basic>(?P<sign>[+-])?(?P<focus>[a-z][a-z0-9]*)\.(?P<method>[ftic][ftic]))"
    r"|#(?P<label>[0-9]+)"
    r"|(?P<halt>!)"
    r")\s*"
)


def parse_instruction(text: str) -> Instruction:
    seq = parse_sequence(text)
    if len(seq) != 1:
        raise SyntaxError("expected a single instruction", 0)
    return seq[0]


def parse_sequence(text: str) -> InstructionSeq:
    star = text.find("*")
    if star >= 0:
        raise UnsupportedRepetition("repetition operator '*' is not supported", star)
    items = []
    pos = 0
    n = len(text)
    while True:
        mt = _TOKEN_RE.match(text, pos)
        if mt is None or mt.end() == pos:
            bad = pos
            while bad < n and text[bad].isspace():
                bad += 1
            raise SyntaxError("expected an instruction", bad)
        if mt.group("basic"):
            ctor = {None: plain, "+": postest, "-": negtest}[mt.group("sign")]
            items.append(ctor(mt.group("focus"), mt.group("method")))
        elif mt.group("label") is not None:
            items.append(jump(int(mt.group("label"))))
        else:
            items.append(HALT)
        pos = mt.end()
        if pos == n:
            break
        if text[pos] != ";":
            raise SyntaxError("expected ';'", pos)
        pos += 1
    return InstructionSeq(items)


def render_sequence(seq: Iterable[Instruction]) -> str:
    return " ; ".join(str(u) for u in seq)
