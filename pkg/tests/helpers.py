"""Shared hypothesis strategies and small exact-math helpers for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from pmcx.poly import Polynomial, VarArena

ARENA_XY = VarArena(["x", "y"])
ARENA_X = VarArena(["x"])


def fractions(max_num: int = 6, max_den: int = 6):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def monomials(arena: VarArena, max_exp: int = 3):
    return st.tuples(*([st.integers(min_value=0, max_value=max_exp)] * len(arena)))


def polynomials(arena: VarArena = ARENA_XY, max_terms: int = 4, max_exp: int = 3, coeffs=None):
    coeffs = coeffs or fractions()
    return st.dictionaries(monomials(arena, max_exp), coeffs, max_size=max_terms).map(
        lambda terms: Polynomial(arena, terms)
    )


def nonzero_polynomials(arena: VarArena = ARENA_XY, **kw):
    return polynomials(arena, **kw).filter(lambda p: not p.is_zero())


def univariate_polynomials(max_deg: int = 5, max_terms: int = 4):
    return polynomials(ARENA_X, max_terms=max_terms, max_exp=max_deg)
