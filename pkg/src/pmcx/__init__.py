"""pmcx: exact symbolic analysis of parametric Markov chains.

Rational functions for reachability probabilities, expected accumulated
weights and expected mean payoffs via fraction-free elimination, plus
PCTL+EC model checking over univariate parameter spaces.
"""

from .poly import (
    EvalPoleError,
    InexactDivisionError,
    MultivariateError,
    Polynomial,
    RationalFunction,
    VarArena,
    gcd_univar,
    parse_fraction,
    parse_polynomial,
    square_free_part,
)

__all__ = [
    "EvalPoleError",
    "InexactDivisionError",
    "MultivariateError",
    "Polynomial",
    "RationalFunction",
    "VarArena",
    "gcd_univar",
    "parse_fraction",
    "parse_polynomial",
    "square_free_part",
]

__version__ = "0.1.0"
