"""Finite quantum logic: orthomodular lattices, Boolean blocks, the Heyting
algebra of monotone sections, frames, and a matrix realization."""

from .blocks import BlockPoset, BooleanBlock, amalgamate, enumerate_blocks, verify_partial_boolean
from .catalog import chain, horizontal_sum, powerset, worked_example
from .errors import BohrLogicError
from .frames import alexandrov, bruns_lakser, check_frame, frame_points, ideal_completion
from .heyting import BohrAlgebra, MonotoneSection, bohrify, embed_D, implies, negate, sasaki_report
from .lattice import FiniteOrtholattice, FinitePoset, classify, downsets, parse_lattice

__version__ = "0.1.0"

__all__ = [
    "BlockPoset", "BooleanBlock", "amalgamate", "enumerate_blocks", "verify_partial_boolean",
    "chain", "horizontal_sum", "powerset", "worked_example", "BohrLogicError",
    "alexandrov", "bruns_lakser", "check_frame", "frame_points", "ideal_completion",
    "BohrAlgebra", "MonotoneSection", "bohrify", "embed_D", "implies", "negate", "sasaki_report",
    "FiniteOrtholattice", "FinitePoset", "classify", "downsets", "parse_lattice",
]
