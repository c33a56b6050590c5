"""Single-pass instruction sequences acting on Boolean registers:
instruction effects, equivalence, and size-bounded functional completeness."""

from .equivalence import eeqv, equivalence_classes, feqv, minimal_method_sets, summarize
from .isa import CANONICAL_BASE, Instruction, InstructionSeq, MethodSet, parse_sequence, render_sequence
from .semantics import ServiceFamily, apply, run_positional, thread_extract, use

__version__ = "0.1.0"
