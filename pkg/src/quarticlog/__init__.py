"""quarticlog: exact geometry of smooth plane quartics and their complements.

Subpackages expose exact sparse polynomial arithmetic with resultant
elimination, certified complex root isolation, the quartic's flex/bitangent
geometry and dual curve, the cross-ratio / j-invariant modulus machinery with
its constant-modulus fiber curves, a small intersection-theory calculator on
the product of two projective planes, and the end-to-end hyperbolicity
verification battery behind the CLI.
"""

from .polynomials import (
    BinaryQuartic,
    Poly,
    discriminant,
    from_text,
    partial_derivative,
    poly_gcd,
    resultant,
    ring_arith,
    squarefree_part,
    substitute,
    sylvester_resultant,
    to_text,
    variables,
)
from .rationals import Rat, rat, rat_str

__all__ = [
    "BinaryQuartic",
    "Poly",
    "Rat",
    "discriminant",
    "from_text",
    "partial_derivative",
    "poly_gcd",
    "rat",
    "rat_str",
    "resultant",
    "ring_arith",
    "squarefree_part",
    "substitute",
    "sylvester_resultant",
    "to_text",
    "variables",
]

__version__ = "0.1.0"
