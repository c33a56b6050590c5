"""Whole-sequence translation through an instruction translation map.

Every basic instruction is replaced by its image and every jump label is
widened by the growth of the instructions it jumps over::

    #l at position i  ->  #(l + sum(len(image(u_j)) - 1 for j in i .. i+l-1))

Only top-level jumps are widened. A test skip, or an image exiting at offset
2, lands on the second instruction after it; when that is the start of an
image longer than one instruction, control enters the image mid-way and the
result can differ from the source sequence. ``TRANSLATION_COUNTEREXAMPLE`` is one
such case.
"""

from __future__ import annotations

from ..isa import Instruction, InstructionSeq, Kind, jump
from .fixtures import TranslationMap

# With the part-2 map: input 0 halts in the source, deadlocks after rewriting.
TRANSLATION_COUNTEREXAMPLE = "+f.if ; -f.tc ; !"


def translate_sequence(x: InstructionSeq, tmap: TranslationMap) -> InstructionSeq:
    items = tuple(x)
    n = len(items)
    images: list[tuple[Instruction, ...]] = [tuple(tmap.image(u)) if u.is_basic else (u,) for u in items]
    growth = [len(img) - 1 for img in images]

    out: list[Instruction] = []
    for i, u in enumerate(items):
        if u.kind is Kind.JUMP:
            out.append(jump(u.label + sum(growth[i:min(i + u.label, n)])))
        else:
            out += images[i]
    return InstructionSeq(out)


def replaced_count(x: InstructionSeq, tmap: TranslationMap) -> int:
    """Occurrences of basic instructions outside ``PI_br(tmap.methods)``."""
    return sum(1 for u in x if u.is_basic and u.method not in tmap.methods)
