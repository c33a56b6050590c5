"""Known translation witnesses for five reduced instruction sets.

Each item maps one instruction to a sequence over a smaller method set.
Items sharing a letter (``c1`` .. ``c4``) are interchangeable alternatives
for the same instruction. Item ids are used verbatim in check names, e.g.
``thm3-fixture-ab4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..equivalence import DEFAULT_FOCUS, equivalence_classes
from ..isa import Instruction, InstructionSeq, MethodSet, enumerate_instructions, parse_instruction, parse_sequence
from .targets import Target, realizes, realizes_axiomatic, target_by_code


class FixtureInvalid(AssertionError):
    pass


class MissingMapping(KeyError):
    pass


@dataclass(frozen=True)
class FixtureItem:
    id: str
    key: str
    sequence: str
    length: int  # as displayed in the source table

    @property
    def seq(self) -> InstructionSeq:
        return parse_sequence(self.sequence)

    @property
    def target(self) -> Target:
        return target_by_code(self.key)


def _items(*rows: tuple[str, str, str, int]) -> dict[str, FixtureItem]:
    return {r[0]: FixtureItem(*r) for r in rows}


ITEMS: dict[str, FixtureItem] = _items(
    ("a", "-f.ti", "#2", 1),
    ("b", "-f.tc", "f.cc ; #2", 2),
    ("c1", "+f.if", "+f.ii ; +f.ff ; +f.ff", 3),
    ("c2", "+f.if", "-f.cc ; +f.ff ; +f.ff", 3),
    ("c3", "+f.if", "+f.ii ; +f.cc ; #2", 3),
    ("c4", "+f.if", "-f.cc ; #2 ; +f.cc", 3),
    ("d1", "-f.if", "-f.ii ; +f.ff ; +f.ff", 3),
    ("d2", "-f.if", "+f.cc ; +f.ff ; +f.ff", 3),
    ("d3", "-f.if", "-f.ii ; #2 ; +f.cc", 3),
    ("d4", "-f.if", "+f.cc ; +f.cc ; #2", 3),
    ("e1", "+f.it", "+f.ii ; -f.tt ; -f.tt", 3),
    ("e2", "+f.it", "-f.cc ; -f.tt ; -f.tt", 3),
    ("e3", "+f.it", "+f.ii ; #2 ; -f.cc", 3),
    ("e4", "+f.it", "-f.cc ; -f.cc ; #2", 3),
    ("f1", "-f.it", "-f.ii ; -f.tt ; -f.tt", 3),
    ("f2", "-f.it", "+f.cc ; -f.tt ; -f.tt", 3),
    ("f3", "-f.it", "-f.ii ; -f.cc ; #2", 3),
    ("f4", "-f.it", "+f.cc ; #2 ; -f.cc", 3),
    ("g", "f.cc", "+f.ii ; +f.ff ; f.tt", 3),
    ("h", "+f.cc", "-f.ii ; -f.tt ; +f.ff", 3),
    ("i", "-f.cc", "+f.ii ; +f.ff ; -f.tt", 3),
    ("j", "-f.tc", "+f.ii ; +f.ff ; f.tt ; #2", 4),
    ("k", "f.ff", "+f.cc ; f.cc", 2),
    ("l", "+f.ff", "+f.cc ; f.cc ; #2", 3),
    ("m", "f.tt", "-f.cc ; f.cc", 2),
    ("n", "-f.tt", "-f.cc ; f.cc ; #2", 3),
    ("o", "f.ii", "f.cc ; f.cc", 2),
    ("p", "+f.ii", "f.cc ; +f.cc", 2),
    ("q", "-f.ii", "f.cc ; -f.cc", 2),
    ("r", "f.ff", "f.if", 1),
    ("s", "+f.ff", "f.if ; #2", 2),
    ("t", "f.tt", "f.it", 1),
    ("u", "-f.tt", "f.it ; #2", 2),
    ("v1", "f.ii", "+f.if ; +f.it ; -f.if", 3),
    ("v2", "f.ii", "+f.it ; -f.it ; +f.if", 3),
    ("v3", "f.ii", "+f.if ; +f.it ; #1", 3),
    ("v4", "f.ii", "+f.it ; #2 ; +f.if", 3),
    ("w1", "+f.ii", "+f.if ; +f.it ; +f.if", 3),
    ("w2", "+f.ii", "+f.it ; -f.it ; -f.if", 3),
    ("w3", "+f.ii", "+f.if ; +f.it ; #2", 3),
    ("w4", "+f.ii", "+f.it ; #2 ; -f.if", 3),
    ("x1", "-f.ii", "-f.if ; +f.if ; +f.it", 3),
    ("x2", "-f.ii", "-f.it ; -f.if ; -f.it", 3),
    ("x3", "-f.ii", "-f.if ; #2 ; +f.it", 3),
    ("x4", "-f.ii", "-f.it ; -f.if ; #2", 3),
    ("y1", "f.cc", "+f.if ; +f.if ; -f.it", 3),
    ("y2", "f.cc", "+f.it ; -f.if ; +f.it", 3),
    ("y3", "f.cc", "+f.if ; #2 ; -f.it", 3),
    ("y4", "f.cc", "+f.it ; -f.if ; #1", 3),
    ("z1", "+f.cc", "-f.if ; +f.it ; +f.if", 3),
    ("z2", "+f.cc", "-f.it ; -f.it ; -f.if", 3),
    ("z3", "+f.cc", "-f.if ; +f.it ; #2", 3),
    ("z4", "+f.cc", "-f.it ; #2 ; -f.if", 3),
    ("aa1", "-f.cc", "+f.if ; +f.if ; +f.it", 3),
    ("aa2", "-f.cc", "+f.it ; -f.if ; -f.it", 3),
    ("aa3", "-f.cc", "+f.if ; #2 ; +f.it", 3),
    ("aa4", "-f.cc", "+f.it ; -f.if ; #2", 3),
    ("ab1", "-f.tc", "+f.if ; +f.if ; -f.it ; #2", 4),
    ("ab2", "-f.tc", "+f.it ; -f.if ; +f.it ; #2", 4),
    ("ab3", "-f.tc", "+f.if ; #2 ; -f.it ; #2", 4),
    ("ab4", "-f.tc", "+f.it ; -f.if ; #1 ; #2", 4),
)


@dataclass(frozen=True)
class Part:
    number: int
    methods: MethodSet
    claimed_k: int
    # one inner list per instruction; several ids are alternatives
    groups: tuple[tuple[str, ...], ...]

    def item_ids(self) -> list[str]:
        return [i for g in self.groups for i in g]


def _alts(letter: str, *nums: int) -> tuple[str, ...]:
    return tuple(f"{letter}{n}" for n in nums)


PARTS: dict[int, Part] = {
    1: Part(1, MethodSet.from_codes("ff,tt,ii,cc,if,it"), 2, (("a",), ("b",))),
    2: Part(
        2,
        MethodSet.from_codes("ff,tt,ii,cc"),
        3,
        (("a",), ("b",), _alts("c", 1, 2, 3, 4), _alts("d", 1, 2, 3, 4), _alts("e", 1, 2, 3, 4), _alts("f", 1, 2, 3, 4)),
    ),
    3: Part(
        3,
        MethodSet.from_codes("ff,tt,ii"),
        4,
        (("a",), _alts("c", 1, 3), _alts("d", 1, 3), _alts("e", 1, 3), _alts("f", 1, 3), ("g",), ("h",), ("i",), ("j",)),
    ),
    4: Part(
        4,
        MethodSet.from_codes("cc"),
        3,
        (("a",), ("b",), ("c4",), ("d4",), ("e4",), ("f4",), ("k",), ("l",), ("m",), ("n",), ("o",), ("p",), ("q",)),
    ),
    5: Part(
        5,
        MethodSet.from_codes("if,it"),
        4,
        (
            ("a",), ("r",), ("s",), ("t",), ("u",),
            _alts("v", 1, 2, 3, 4), _alts("w", 1, 2, 3, 4), _alts("x", 1, 2, 3, 4), _alts("y", 1, 2, 3, 4),
            _alts("z", 1, 2, 3, 4), _alts("aa", 1, 2, 3, 4), _alts("ab", 1, 2, 3, 4),
        ),
    ),
}


@dataclass(frozen=True)
class TranslationMap:
    """An instruction translation: every register instruction at the
    default focus maps to a sequence over ``methods``; other foci are handled
    by renaming. Jumps and halt are left alone by the rewriter."""

    name: str
    methods: MethodSet
    entries: dict[Instruction, InstructionSeq]

    def image(self, u: Instruction) -> InstructionSeq:
        try:
            seq = self.entries[u.with_focus(DEFAULT_FOCUS)]
        except KeyError:
            raise MissingMapping(f"no translation for {u}") from None
        return seq.with_focus(u.focus)

    def max_length(self) -> int:
        return max(len(s) for s in self.entries.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "methods": self.methods.codes(),
            "entries": {str(u): str(s) for u, s in self.entries.items() if s != (u,)},
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "file") -> TranslationMap:
        """Load ``{"methods": [...], "entries": {instr: seq}}``.

        Instructions over ``methods`` map to themselves unless listed.
        """
        methods = MethodSet.from_codes(data["methods"])
        entries = {u: InstructionSeq([u]) for u in enumerate_instructions(methods, DEFAULT_FOCUS)}
        for k, v in data.get("entries", {}).items():
            entries[parse_instruction(k).with_focus(DEFAULT_FOCUS)] = parse_sequence(v).with_focus(DEFAULT_FOCUS)
        return cls(data.get("name", name), methods, entries)


def build_translation_map(name: str, methods: MethodSet, item_ids: list[str], items=None) -> TranslationMap:
    """Complete a set of fixture items to a map over all 48 instructions.

    Identity on ``PI_br(methods)``; a listed item covers its whole effect
    class; any other instruction maps to a class member over ``methods``.
    """
    items = ITEMS if items is None else items
    by_target = {}
    for i in item_ids:
        it = items[i]
        by_target[it.target] = it.seq
    entries = {}
    for cls in equivalence_classes(DEFAULT_FOCUS):
        t = target_by_code(str(cls.representative))
        own = [u for u in cls.members if u.method in methods]
        for u in cls.members:
            if u.method in methods:
                entries[u] = InstructionSeq([u])
            elif t in by_target:
                entries[u] = by_target[t]
            elif own:
                entries[u] = InstructionSeq([own[0]])
            else:
                raise FixtureInvalid(f"{name}: no image for {u}")
    return TranslationMap(name, methods, entries)


def fixture_maps(items=None) -> dict[int, list[TranslationMap]]:
    """Per part, one map per alternative index (alternative ``j`` of every
    group that has one, the sole item otherwise)."""
    out = {}
    for p in PARTS.values():
        width = max(len(g) for g in p.groups)
        maps = []
        for j in range(width):
            ids = [g[min(j, len(g) - 1)] for g in p.groups]
            maps.append(build_translation_map(f"part{p.number}:{j + 1}", p.methods, ids, items))
        out[p.number] = maps
    return out


def fixture_map(ref: str) -> TranslationMap:
    """Look up ``"part2"`` (first alternative) or ``"part2:3"``."""
    name, _, alt = ref.partition(":")
    if not name.startswith("part") or not name[4:].isdigit():
        raise KeyError(f"unknown fixture map {ref!r}")
    maps = fixture_maps()[int(name[4:])]
    j = int(alt) if alt else 1
    if not 1 <= j <= len(maps):
        raise KeyError(f"unknown fixture map {ref!r}")
    return maps[j - 1]


@dataclass(frozen=True)
class FixtureCheck:
    id: str
    parts: tuple[int, ...]
    realizes: bool
    realizes_axiomatic: bool
    length_ok: bool
    # every method used is in each listing part's method set
    methods_ok: bool

    @property
    def ok(self) -> bool:
        return self.realizes and self.realizes_axiomatic and self.length_ok

    @property
    def name(self) -> str:
        return f"thm3-fixture-{self.id}"


def verify_fixtures(items=None, strict: bool = False) -> list[FixtureCheck]:
    """Audit every item: realizes its key's effect (positionally and via the
    axiomatic route), has the displayed length, fits each listing part's
    bound. With ``strict``, the first failure raises :class:`FixtureInvalid`."""
    items = ITEMS if items is None else items
    out = []
    for iid, it in items.items():
        parts = tuple(p.number for p in PARTS.values() if iid in p.item_ids())
        seq = it.seq
        used = MethodSet(u.method for u in seq if u.is_basic)
        t = it.target
        chk = FixtureCheck(
            id=iid,
            parts=parts,
            realizes=realizes(seq, t),
            realizes_axiomatic=realizes_axiomatic(seq, t),
            length_ok=len(seq) == it.length and all(len(seq) <= PARTS[p].claimed_k for p in parts),
            methods_ok=all(used.issubset(PARTS[p].methods) for p in parts),
        )
        if strict and not chk.ok:
            raise FixtureInvalid(f"{chk.name}: {it.sequence} does not realize {it.key}")
        out.append(chk)
    return out
