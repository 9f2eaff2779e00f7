"""Exact open-book calculus and embedding certificates for contact manifolds."""

from .linalg import DivisorChain, IntMatrix, SmithDecomposition, cokernel_divisors, has_two_torsion, smith_normal_form
from .mcg import SignedTwist, TwistWord
from .openbook import HomologySummary, OpenBook, ob_connected_sum, ob_first_homology, ob_stabilize, ob_validate
from .surface import AtlasCurve, Surface

__version__ = "0.1.0"

__all__ = [
    "AtlasCurve",
    "DivisorChain",
    "HomologySummary",
    "IntMatrix",
    "OpenBook",
    "SignedTwist",
    "SmithDecomposition",
    "Surface",
    "TwistWord",
    "cokernel_divisors",
    "has_two_torsion",
    "ob_connected_sum",
    "ob_first_homology",
    "ob_stabilize",
    "ob_validate",
    "smith_normal_form",
]
