"""Univariate real algebra: Sturm sequences, exact root isolation, algebraic
sample points, and one-dimensional semialgebraic sets.

All numbers are exact.  Real algebraic numbers are represented by a
square-free defining polynomial together with an isolating interval with
rational endpoints; rationals are the degenerate case of a point interval.
Sets of reals are finite unions of points and open intervals with algebraic
endpoints, kept in a canonical sorted, disjoint, maximal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as _int_gcd
from typing import TYPE_CHECKING, Callable, Iterable, Sequence, Union

from .poly import MultivariateError, Polynomial, VarArena

if TYPE_CHECKING:  # pragma: no cover
    from .model import PMC

Dense = tuple[Fraction, ...]


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(+1)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


# -- dense univariate helpers ---------------------------------------------------


def _dense_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _dense_derivative(coeffs: Sequence[Fraction]) -> Dense:
    return tuple(c * i for i, c in enumerate(coeffs))[1:]


def _dense_trim(coeffs: Iterable[Fraction]) -> Dense:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _dense_scale_primitive(coeffs: Sequence[Fraction]) -> Dense:
    """Scale by a positive rational so coefficients become coprime integers."""
    if not coeffs:
        return ()
    num = 0
    den = 1
    for c in coeffs:
        num = _int_gcd(num, c.numerator)
        den = den * c.denominator // _int_gcd(den, c.denominator)
    scale = Fraction(den, num)
    return tuple(c * scale for c in coeffs)


def _dense_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        while a and not a[-1]:
            a.pop()
    return tuple(a)


def _dense_gcd(a: Dense, b: Dense) -> Dense:
    a, b = _dense_trim(a), _dense_trim(b)
    while b:
        a, b = b, _dense_rem(a, b)
        if b:
            b = _dense_scale_primitive(b)
    if not a:
        return ()
    inv = Fraction(1) / a[-1]
    return tuple(c * inv for c in a)


@lru_cache(maxsize=None)
def _dense_square_free(coeffs: Dense) -> Dense:
    if len(coeffs) <= 2:
        return coeffs
    g = _dense_gcd(coeffs, _dense_derivative(coeffs))
    if len(g) <= 1:
        return coeffs
    # exact quotient by synthetic long division
    quotient: list[Fraction] = []
    rem = list(coeffs)
    dg = len(g) - 1
    while len(rem) - 1 >= dg and rem:
        q = rem[-1] / g[-1]
        shift = len(rem) - 1 - dg
        quotient.append(q)
        for i, c in enumerate(g):
            rem[shift + i] -= q * c
        while rem and not rem[-1]:
            rem.pop()
    quotient.reverse()
    return _dense_trim(quotient)


@lru_cache(maxsize=None)
def _sturm_chain(coeffs: Dense) -> tuple[Dense, ...]:
    """Sturm chain of a square-free dense polynomial of degree >= 1."""
    chain = [_dense_scale_primitive(coeffs), _dense_scale_primitive(_dense_derivative(coeffs))]
    while chain[-1]:
        r = _dense_rem(chain[-2], chain[-1])
        r = tuple(-c for c in r)
        if r:
            r = _dense_scale_primitive(r)
        chain.append(r)
    chain.pop()
    return tuple(chain)


def _variations(signs: Iterable[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain: Sequence[Dense], x: Union[Fraction, _Infinity]) -> int:
    if isinstance(x, _Infinity):
        signs = []
        for p in chain:
            if not p:
                signs.append(0)
                continue
            lead = _sign(p[-1])
            degree = len(p) - 1
            signs.append(lead if x.sign > 0 else lead * (-1 if degree % 2 else 1))
        return _variations(signs)
    return _variations(_sign(_dense_eval(p, x)) for p in chain)


def _count_roots_dense(coeffs: Dense, lo, hi) -> int:
    """Distinct real roots of the square-free `coeffs` in the half-open (lo, hi]."""
    if len(coeffs) <= 1:
        return 0
    if len(coeffs) == 2:
        root = -coeffs[0] / coeffs[1]
        lo_ok = isinstance(lo, _Infinity) or lo < root
        hi_ok = isinstance(hi, _Infinity) or root <= hi
        return int(lo_ok and hi_ok)
    chain = _sturm_chain(coeffs)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def _to_dense(f: Polynomial) -> tuple[Dense, str]:
    """Dense coefficients and a display name for an effectively univariate polynomial."""
    var = f.sole_variable()
    if var is None:
        name = f.arena.names[0] if len(f.arena) else "x"
        return _dense_trim([f.constant_value()] if f.terms else []), name
    return _dense_trim(f.dense_coeffs(var)), f.arena.names[var]


def sturm_count(f: Polynomial, lo: Union[Fraction, _Infinity] = NEG_INF,
                hi: Union[Fraction, _Infinity] = POS_INF) -> int:
    """Number of distinct real roots of univariate `f` in the half-open (lo, hi]."""
    if f.is_zero():
        raise ValueError("root counting needs a nonzero polynomial")
    coeffs, _ = _to_dense(f)
    return _count_roots_dense(_dense_square_free(coeffs), lo, hi)


# -- algebraic numbers -------------------------------------------------------------


class AlgebraicNumber:
    """Real algebraic number: square-free defining polynomial plus an isolating
    interval.  `lo == hi` encodes an exact rational; otherwise the interval is
    open, its endpoints are not roots, and it contains exactly one root.

    Values are immutable; interval refinement returns new instances.
    """

    __slots__ = ("coeffs", "lo", "hi", "name")

    def __init__(self, coeffs: Dense, lo: Fraction, hi: Fraction, name: str = "x"):
        self.coeffs = coeffs
        self.lo = lo
        self.hi = hi
        self.name = name

    @classmethod
    def from_rational(cls, value: Union[Fraction, int]) -> "AlgebraicNumber":
        value = Fraction(value)
        return cls((-value, Fraction(1)), value, value, "x")

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not refined to an exact rational")
        return self.lo

    @property
    def defining(self) -> Polynomial:
        arena = VarArena([self.name])
        return Polynomial.from_dense(arena, 0, self.coeffs)

    # one bisection step; never changes the represented number
    def _bisected(self) -> "AlgebraicNumber":
        if self.is_rational:
            return self
        mid = (self.lo + self.hi) / 2
        if not _dense_eval(self.coeffs, mid):
            return AlgebraicNumber((-mid, Fraction(1)), mid, mid, self.name)
        if _count_roots_dense(self.coeffs, self.lo, mid) == 1:
            return AlgebraicNumber(self.coeffs, self.lo, mid, self.name)
        return AlgebraicNumber(self.coeffs, mid, self.hi, self.name)

    def refined(self, width: Fraction) -> "AlgebraicNumber":
        a = self
        while not a.is_rational and a.hi - a.lo > width:
            a = a._bisected()
        return a

    def compare_rational(self, q: Fraction) -> int:
        if self.is_rational:
            return _sign(self.lo - q)
        if q <= self.lo:
            return 1
        if q >= self.hi:
            return -1
        if not _dense_eval(self.coeffs, q):
            return 0
        return -1 if _count_roots_dense(self.coeffs, self.lo, q) == 1 else 1

    def compare(self, other: Union["AlgebraicNumber", Fraction, int]) -> int:
        if not isinstance(other, AlgebraicNumber):
            return self.compare_rational(Fraction(other))
        if self.is_rational:
            return -other.compare_rational(self.lo)
        if other.is_rational:
            return self.compare_rational(other.lo)
        a, b = self, other
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            g = _dense_gcd(a.coeffs, b.coeffs)
            if len(g) > 1:
                olo, ohi = max(a.lo, b.lo), min(a.hi, b.hi)
                if olo < ohi and _count_roots_dense(g, olo, ohi) >= 1:
                    return 0
            a, b = a._bisected(), b._bisected()
            if a.is_rational:
                return -b.compare_rational(a.lo)
            if b.is_rational:
                return a.compare_rational(b.lo)

    def sign_of_dense(self, coeffs: Dense) -> int:
        """Exact sign of the polynomial with these dense coefficients at this number."""
        coeffs = _dense_trim(coeffs)
        if not coeffs:
            return 0
        if self.is_rational:
            return _sign(_dense_eval(coeffs, self.lo))
        common = _dense_gcd(coeffs, self.coeffs)
        if len(common) > 1 and _count_roots_dense(common, self.lo, self.hi) >= 1:
            return 0
        sq = _dense_square_free(coeffs)
        a = self
        while True:
            if _count_roots_dense(sq, a.lo, a.hi) == 0:
                return _sign(_dense_eval(coeffs, (a.lo + a.hi) / 2))
            a = a._bisected()
            if a.is_rational:
                return _sign(_dense_eval(coeffs, a.lo))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (AlgebraicNumber, Fraction, int)):
            return self.compare(other) == 0
        return NotImplemented

    __hash__ = None  # equality is semantic; these are not dict keys

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.lo)
        return f"root({self.defining}, {self.lo}, {self.hi})"


Endpoint = Union[AlgebraicNumber, _Infinity]


def _as_algebraic(x: Union[AlgebraicNumber, Fraction, int]) -> AlgebraicNumber:
    return x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.from_rational(x)


def _ep_compare(a: Endpoint, b: Endpoint) -> int:
    if isinstance(a, _Infinity):
        if isinstance(b, _Infinity):
            return _sign(Fraction(a.sign - b.sign))
        return a.sign
    if isinstance(b, _Infinity):
        return -b.sign
    return a.compare(b)


def rational_below(a: AlgebraicNumber) -> Fraction:
    return a.lo - 1 if a.is_rational else a.lo


def rational_above(a: AlgebraicNumber) -> Fraction:
    return a.hi + 1 if a.is_rational else a.hi


def rational_between(a: AlgebraicNumber, b: AlgebraicNumber) -> Fraction:
    """Some rational strictly between a and b (requires a < b)."""
    if a.is_rational and b.is_rational:
        if a.lo >= b.lo:
            raise ValueError("rational_between needs a < b")
        return (a.lo + b.lo) / 2
    while True:
        if a.is_rational:
            if b.lo > a.lo:
                return (a.lo + b.lo) / 2
            b = b._bisected()
        elif b.is_rational:
            if a.hi < b.lo:
                return (a.hi + b.lo) / 2
            a = a._bisected()
        else:
            if a.hi <= b.lo:
                return (a.hi + b.lo) / 2
            a, b = a._bisected(), b._bisected()


def _rational_inside(lo: Endpoint, hi: Endpoint) -> Fraction:
    if isinstance(lo, _Infinity) and isinstance(hi, _Infinity):
        return Fraction(0)
    if isinstance(lo, _Infinity):
        return rational_below(hi)
    if isinstance(hi, _Infinity):
        return rational_above(lo)
    return rational_between(lo, hi)


# -- one-dimensional semialgebraic sets ----------------------------------------------


Component = tuple  # ("pt", AlgebraicNumber) | ("iv", Endpoint, Endpoint)


class SemiSet1D:
    """Finite union of points and open intervals with algebraic endpoints.

    Canonical form: components sorted and pairwise disjoint, with every
    interval-point-interval adjacency merged; half-open and closed intervals
    therefore appear as a point component next to an open interval.
    """

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Component]):
        self.components = tuple(components)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def empty(cls) -> "SemiSet1D":
        return cls(())

    @classmethod
    def whole_line(cls) -> "SemiSet1D":
        return cls((("iv", NEG_INF, POS_INF),))

    @classmethod
    def point(cls, value: Union[AlgebraicNumber, Fraction, int]) -> "SemiSet1D":
        return cls((("pt", _as_algebraic(value)),))

    @classmethod
    def interval(cls, lo, hi, *, lo_closed: bool = False, hi_closed: bool = False) -> "SemiSet1D":
        """Interval with mixed openness; infinite ends use NEG_INF / POS_INF."""
        lo_ep: Endpoint = lo if isinstance(lo, _Infinity) else _as_algebraic(lo)
        hi_ep: Endpoint = hi if isinstance(hi, _Infinity) else _as_algebraic(hi)
        comps: list[Component] = []
        if not isinstance(lo_ep, _Infinity) and not isinstance(hi_ep, _Infinity):
            c = lo_ep.compare(hi_ep)
            if c > 0:
                raise ValueError("interval endpoints out of order")
            if c == 0:
                if lo_closed and hi_closed:
                    return cls.point(lo_ep)
                return cls.empty()
        if lo_closed and not isinstance(lo_ep, _Infinity):
            comps.append(("pt", lo_ep))
        comps.append(("iv", lo_ep, hi_ep))
        if hi_closed and not isinstance(hi_ep, _Infinity):
            comps.append(("pt", hi_ep))
        return cls(tuple(comps))._normalized()

    # -- basic queries -----------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.components

    def contains(self, x: Union[AlgebraicNumber, Fraction, int]) -> bool:
        alg = _as_algebraic(x)
        for comp in self.components:
            if comp[0] == "pt":
                if alg.compare(comp[1]) == 0:
                    return True
            else:
                _, lo, hi = comp
                if _ep_compare(lo, alg) < 0 and _ep_compare(alg, hi) < 0:
                    return True
        return False

    def rational_sample(self) -> Fraction | None:
        for comp in self.components:
            if comp[0] == "iv":
                return _rational_inside(comp[1], comp[2])
        for comp in self.components:
            if comp[1].is_rational:
                return comp[1].value
        return None

    def any_sample(self) -> Union[Fraction, AlgebraicNumber, None]:
        r = self.rational_sample()
        if r is not None:
            return r
        if self.components:
            return self.components[0][1]
        return None

    def rational_samples(self, count: int) -> list[Fraction]:
        """Up to `count` distinct rationals inside the set, interval components first."""
        out: list[Fraction] = []
        queue: list[tuple[Endpoint, Endpoint]] = []
        for comp in self.components:
            if comp[0] == "iv":
                queue.append((comp[1], comp[2]))
            elif comp[1].is_rational:
                out.append(comp[1].value)
        while queue and len(out) < count:
            lo, hi = queue.pop(0)
            r = _rational_inside(lo, hi)
            out.append(r)
            mid = _as_algebraic(r)
            queue.append((lo, mid))
            queue.append((mid, hi))
        seen: set[Fraction] = set()
        unique = [r for r in out if not (r in seen or seen.add(r))]
        return unique[:count]

    # -- boolean algebra -----------------------------------------------------------

    def _endpoints(self) -> list[AlgebraicNumber]:
        eps: list[AlgebraicNumber] = []
        for comp in self.components:
            if comp[0] == "pt":
                eps.append(comp[1])
            else:
                if not isinstance(comp[1], _Infinity):
                    eps.append(comp[1])
                if not isinstance(comp[2], _Infinity):
                    eps.append(comp[2])
        return eps

    def _combine(self, other: "SemiSet1D", keep: Callable[[bool, bool], bool]) -> "SemiSet1D":
        eps = self._endpoints() + other._endpoints()
        eps.sort(key=_CmpKey)
        merged: list[AlgebraicNumber] = []
        for e in eps:
            if not merged or merged[-1].compare(e) != 0:
                merged.append(e)
        cells: list[Component] = []
        if not merged:
            cells.append(("iv", NEG_INF, POS_INF))
        else:
            cells.append(("iv", NEG_INF, merged[0]))
            for i, e in enumerate(merged):
                cells.append(("pt", e))
                nxt: Endpoint = merged[i + 1] if i + 1 < len(merged) else POS_INF
                cells.append(("iv", e, nxt))
        flags: list[bool] = []
        for cell in cells:
            if cell[0] == "pt":
                probe: Union[Fraction, AlgebraicNumber] = cell[1]
            else:
                probe = _rational_inside(cell[1], cell[2])
            flags.append(keep(self.contains(probe), other.contains(probe)))
        return SemiSet1D(_assemble(cells, flags))

    def union(self, other: "SemiSet1D") -> "SemiSet1D":
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        return self._combine(other, lambda a, b: a or b)

    def intersect(self, other: "SemiSet1D") -> "SemiSet1D":
        if self.is_empty() or other.is_empty():
            return SemiSet1D.empty()
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "SemiSet1D") -> "SemiSet1D":
        if self.is_empty():
            return self
        if other.is_empty():
            return self
        return self._combine(other, lambda a, b: a and not b)

    def complement_in(self, universe: "SemiSet1D") -> "SemiSet1D":
        return universe.difference(self)

    def _normalized(self) -> "SemiSet1D":
        return self.union(SemiSet1D.empty()) if self.components else self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiSet1D):
            return NotImplemented
        if len(self.components) != len(other.components):
            return False
        for a, b in zip(self.components, other.components):
            if a[0] != b[0]:
                return False
            if a[0] == "pt":
                if a[1].compare(b[1]) != 0:
                    return False
            else:
                if _ep_compare(a[1], b[1]) != 0 or _ep_compare(a[2], b[2]) != 0:
                    return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        if not self.components:
            return "∅"
        parts = []
        for comp in self.components:
            if comp[0] == "pt":
                parts.append("{%s}" % (comp[1],))
            else:
                parts.append(f"({comp[1]}, {comp[2]})")
        return " ∪ ".join(parts)


class _CmpKey:
    __slots__ = ("item",)

    def __init__(self, item: AlgebraicNumber):
        self.item = item

    def __lt__(self, other: "_CmpKey") -> bool:
        return self.item.compare(other.item) < 0


def _assemble(cells: list[Component], flags: list[bool]) -> tuple[Component, ...]:
    """Merge marked sweep cells into canonical components.

    Cells alternate interval, point, interval, ...  A point swallowed between
    two kept intervals disappears into one larger interval; any other kept
    point stays a separate component.
    """
    out: list[Component] = []
    run_start: Endpoint | None = None
    for i, cell in enumerate(cells):
        if cell[0] == "iv":
            if flags[i]:
                if run_start is None:
                    run_start = cell[1]
            else:
                if run_start is not None:
                    out.append(("iv", run_start, cell[1]))
                    run_start = None
        else:
            left_kept = flags[i - 1]
            right_kept = i + 1 < len(flags) and flags[i + 1]
            if flags[i] and left_kept and right_kept:
                continue
            if run_start is not None:
                out.append(("iv", run_start, cell[1]))
                run_start = None
            if flags[i]:
                out.append(("pt", cell[1]))
    if run_start is not None:
        out.append(("iv", run_start, POS_INF))
    return tuple(out)


# -- root isolation and sign solving ------------------------------------------------


def isolate_roots(f: Polynomial) -> list[AlgebraicNumber]:
    """All distinct real roots of univariate `f`, sorted, with isolating intervals.

    The defining polynomial of every returned number is the square-free part
    of `f`; multiplicities collapse.  Constants have no roots.
    """
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    coeffs, name = _to_dense(f)
    if len(coeffs) <= 1:
        return []
    sq = _dense_square_free(coeffs)
    if len(sq) == 2:
        root = -sq[0] / sq[1]
        return [AlgebraicNumber((-root, Fraction(1)), root, root, name)]
    bound = 1 + max(abs(c) for c in sq[:-1]) / abs(sq[-1])

    def recurse(lo: Fraction, hi: Fraction) -> list[AlgebraicNumber]:
        count = _count_roots_dense(sq, lo, hi)
        if count == 0:
            return []
        if count == 1:
            return [AlgebraicNumber(sq, lo, hi, name)]
        mid = (lo + hi) / 2
        if _dense_eval(sq, mid):
            return recurse(lo, mid) + recurse(mid, hi)
        delta = (hi - lo) / 4
        while (
            not _dense_eval(sq, mid - delta)
            or not _dense_eval(sq, mid + delta)
            or _count_roots_dense(sq, mid - delta, mid + delta) != 1
        ):
            delta /= 2
        here = AlgebraicNumber((-mid, Fraction(1)), mid, mid, name)
        return recurse(lo, mid - delta) + [here] + recurse(mid + delta, hi)

    return recurse(-bound, bound)


def sign_at(f: Polynomial, alpha: Union[AlgebraicNumber, Fraction, int]) -> int:
    """Exact sign of an effectively univariate polynomial at an algebraic point."""
    alpha = _as_algebraic(alpha)
    coeffs, _ = _to_dense(f)
    return alpha.sign_of_dense(coeffs)


_REL_SIGNS = {
    "<": ({-1}, False),
    "<=": ({-1}, True),
    ">": ({+1}, False),
    ">=": ({+1}, True),
    "=": (set(), True),
}


def solve_constraint(f: Polynomial, rel: str, domain: SemiSet1D) -> SemiSet1D:
    """Exact solution set of ``f(x) rel 0`` within `domain` (rel in <,<=,>,>=,=)."""
    if rel not in _REL_SIGNS:
        raise ValueError(f"unknown relation {rel!r}")
    wanted_signs, keep_zero = _REL_SIGNS[rel]
    if f.is_zero():
        return domain if keep_zero else SemiSet1D.empty()
    if f.is_constant():
        return domain if _sign(f.constant_value()) in wanted_signs else SemiSet1D.empty()
    roots = isolate_roots(f)
    if not roots:
        some = f.evaluate([Fraction(0)] * len(f.arena))
        return domain if _sign(some) in wanted_signs else SemiSet1D.empty()
    coeffs, _ = _to_dense(f)
    comps: list[Component] = []
    bounds: list[Endpoint] = [NEG_INF] + list(roots) + [POS_INF]
    for i in range(len(bounds) - 1):
        lo, hi = bounds[i], bounds[i + 1]
        sample = _rational_inside(lo, hi)
        if _sign(_dense_eval(coeffs, sample)) in wanted_signs:
            comps.append(("iv", lo, hi))
        if keep_zero and not isinstance(hi, _Infinity):
            comps.append(("pt", hi))
    solution = SemiSet1D(tuple(comps))._normalized()
    return solution.intersect(domain)


# -- monotonicity of a univariate model ------------------------------------------------


@dataclass(frozen=True)
class MonotoneInfo:
    """Edges whose transition polynomial never decreases on the admissible set,
    and states reachable only through such edges."""

    increasing_edges: frozenset[tuple[str, str]]
    increasing_states: frozenset[str]


def monotone_info(m: "PMC", admissible: SemiSet1D) -> MonotoneInfo:
    """Classify edges by monotonicity of their transition polynomial on the
    admissible set, then close off states whose every incoming path uses only
    non-decreasing edges."""
    if len(m.arena) > 1:
        raise MultivariateError("monotonicity analysis needs a univariate model")
    increasing: set[tuple[str, str]] = set()
    bad_heads: set[str] = set()
    for (s, t), poly in m.trans.items():
        deriv = poly.derivative(0) if len(m.arena) else Polynomial.zero(m.arena)
        negative_somewhere = not solve_constraint(deriv, "<", admissible).is_empty()
        if negative_somewhere:
            bad_heads.add(t)
        else:
            increasing.add((s, t))
    tainted: set[str] = set()
    frontier = list(bad_heads)
    while frontier:
        s = frontier.pop()
        if s in tainted:
            continue
        tainted.add(s)
        frontier.extend(m.successors(s))
    states = frozenset(m.states) - tainted
    return MonotoneInfo(frozenset(increasing), frozenset(states))
