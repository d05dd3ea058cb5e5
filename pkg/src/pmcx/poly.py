"""Exact polynomial arithmetic: sparse multivariate polynomials over the
rationals, rational functions, exact division, and univariate gcd.

Coefficients are `fractions.Fraction` throughout; there is no floating
point anywhere.  Monomials are exponent tuples indexed by a `VarArena`.
Polynomials are immutable after construction and hashable, so they can be
shared freely and used as cache keys.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Fraction
Monomial = tuple[int, ...]
CoeffLike = Union[Fraction, int]


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class EvalPoleError(ZeroDivisionError):
    """A rational function was evaluated at a point where its denominator vanishes."""


class MultivariateError(ValueError):
    """An operation restricted to univariate polynomials got multivariate input."""


class VarArena:
    """Fixed, ordered set of variable names mapped to dense indices."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = ()):
        self.names: tuple[str, ...] = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names!r}")
        self._index = {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarArena) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarArena({list(self.names)!r})"

    def extended(self, extra: Iterable[str]) -> "VarArena":
        """New arena with `extra` names appended; existing indices are preserved."""
        return VarArena(self.names + tuple(extra))


def _as_coeff(value: CoeffLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def mono_key(mono: Monomial) -> tuple[int, Monomial]:
    """Graded lexicographic sort key (ascending); reverse for the canonical order."""
    return (sum(mono), mono)


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients.

    Terms map exponent tuples to nonzero coefficients.  The canonical term
    order is graded lexicographic, descending, over the arena's variable
    order; `degree()` of the zero polynomial is 0.
    """

    __slots__ = ("arena", "terms", "_hash")

    def __init__(self, arena: VarArena, terms: Mapping[Monomial, CoeffLike]):
        self.arena = arena
        clean: dict[Monomial, Fraction] = {}
        width = len(arena)
        for mono, coeff in terms.items():
            c = _as_coeff(coeff)
            if not c:
                continue
            if len(mono) != width or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono!r} for arena of size {width}")
            clean[mono] = c
        self.terms = clean
        self._hash: int | None = None

    @classmethod
    def zero(cls, arena: VarArena) -> "Polynomial":
        return cls(arena, {})

    @classmethod
    def constant(cls, arena: VarArena, value: CoeffLike) -> "Polynomial":
        return cls(arena, {(0,) * len(arena): _as_coeff(value)})

    @classmethod
    def variable(cls, arena: VarArena, name: str) -> "Polynomial":
        mono = [0] * len(arena)
        mono[arena.index(name)] = 1
        return cls(arena, {tuple(mono): Fraction(1)})

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=mono_key)
        return mono, self.terms[mono]

    def used_variables(self) -> set[int]:
        used: set[int] = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(i)
        return used

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arena == other.arena and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arena, frozenset(self.terms.items())))
        return self._hash

    # -- ring operations -------------------------------------------------

    def _check_arena(self, other: "Polynomial") -> None:
        if self.arena != other.arena:
            raise ValueError("arena mismatch between polynomial operands")

    def _coerce(self, other: Union["Polynomial", CoeffLike]) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_arena(other)
            return other
        return Polynomial.constant(self.arena, other)

    def __add__(self, other: Union["Polynomial", CoeffLike]) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            if acc is None:
                terms[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[mono] = acc
                else:
                    del terms[mono]
        out = Polynomial.__new__(Polynomial)
        out.arena, out.terms, out._hash = self.arena, terms, None
        return out

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.arena = self.arena
        out.terms = {m: -c for m, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other: Union["Polynomial", CoeffLike]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: CoeffLike) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Polynomial", CoeffLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _as_coeff(other)
            if not c:
                return Polynomial.zero(self.arena)
            out = Polynomial.__new__(Polynomial)
            out.arena = self.arena
            out.terms = {m: co * c for m, co in self.terms.items()}
            out._hash = None
            return out
        self._check_arena(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(mono)
                if acc is None:
                    terms[mono] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc:
                        terms[mono] = acc
                    else:
                        del terms[mono]
        out = Polynomial.__new__(Polynomial)
        out.arena, out.terms, out._hash = self.arena, terms, None
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.arena, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact multivariate division; raises InexactDivisionError on any remainder.

        Greedy leading-term elimination under the graded-lex order: when the
        dividend is an exact multiple, the leading term of the divisor always
        divides the leading term of the remainder, so failure of either the
        monomial or the final zero check proves inexactness.
        """
        self._check_arena(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        if divisor.is_constant():
            return self * (Fraction(1) / divisor.constant_value())
        div_mono, div_coeff = divisor.leading_term()
        quotient: dict[Monomial, Fraction] = {}
        rem = dict(self.terms)
        while rem:
            mono = max(rem, key=mono_key)
            q_mono = tuple(a - b for a, b in zip(mono, div_mono))
            if any(e < 0 for e in q_mono):
                raise InexactDivisionError(f"{divisor} does not divide {self}")
            q_coeff = rem[mono] / div_coeff
            quotient[q_mono] = q_coeff
            for d_mono, d_coeff in divisor.terms.items():
                t_mono = tuple(a + b for a, b in zip(q_mono, d_mono))
                acc = rem.get(t_mono, Fraction(0)) - q_coeff * d_coeff
                if acc:
                    rem[t_mono] = acc
                else:
                    rem.pop(t_mono, None)
        return Polynomial(self.arena, quotient)

    # -- evaluation and calculus ------------------------------------------

    def evaluate(self, valuation: Mapping[str, CoeffLike] | Sequence[CoeffLike]) -> Fraction:
        if isinstance(valuation, Mapping):
            point = [_as_coeff(valuation[name]) for name in self.arena.names]
        else:
            point = [_as_coeff(v) for v in valuation]
            if len(point) != len(self.arena):
                raise ValueError("valuation length does not match arena")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, mono):
                if e:
                    value *= x**e
            total += value
        return total

    def derivative(self, var: int | str = 0) -> "Polynomial":
        idx = var if isinstance(var, int) else self.arena.index(var)
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[idx]
            if not e:
                continue
            new = list(mono)
            new[idx] = e - 1
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + coeff * e
        return Polynomial(self.arena, terms)

    def embedded(self, arena: VarArena) -> "Polynomial":
        """Re-express in a larger arena whose leading names match this arena's."""
        if arena.names[: len(self.arena)] != self.arena.names:
            raise ValueError("target arena does not extend this polynomial's arena")
        pad = len(arena) - len(self.arena)
        return Polynomial(arena, {m + (0,) * pad: c for m, c in self.terms.items()})

    # -- univariate views --------------------------------------------------

    def sole_variable(self) -> int | None:
        """Index of the single used variable, or None for constants.

        Raises MultivariateError when two or more variables occur.
        """
        used = self.used_variables()
        if not used:
            return None
        if len(used) > 1:
            raise MultivariateError(f"{self} uses more than one variable")
        return used.pop()

    def dense_coeffs(self, var: int | None = None) -> list[Fraction]:
        """Dense coefficient list (index = power) of an effectively univariate polynomial."""
        idx = self.sole_variable() if var is None else var
        if idx is None:
            idx = 0 if self.arena else -1
        if idx < 0:
            return [self.constant_value()] if self.terms else []
        out = [Fraction(0)] * (self.degree() + 1) if self.terms else []
        for mono, coeff in self.terms.items():
            out[mono[idx]] += coeff
        while out and not out[-1]:
            out.pop()
        return out

    @classmethod
    def from_dense(cls, arena: VarArena, var: int, coeffs: Sequence[CoeffLike]) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        base = [0] * len(arena)
        for power, c in enumerate(coeffs):
            c = _as_coeff(c)
            if not c:
                continue
            mono = list(base)
            mono[var] = power
            terms[tuple(mono)] = c
        return cls(arena, terms)

    # -- content helpers ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, c.numerator)
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def min_exponents(self) -> Monomial:
        if not self.terms:
            return (0,) * len(self.arena)
        its = iter(self.terms)
        acc = list(next(its))
        for mono in its:
            for i, e in enumerate(mono):
                if e < acc[i]:
                    acc[i] = e
        return tuple(acc)

    def div_monomial(self, mono: Monomial) -> "Polynomial":
        if not any(mono):
            return self
        return Polynomial(
            self.arena,
            {tuple(a - b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
        )

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(self.arena.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if i == 0:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<Polynomial {self}>"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*/^()]))")


def _tokenize_poly(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad character in polynomial at offset {pos}: {text[pos:]!r}")
            return
        pos = m.end()
        if m.group(1):
            yield ("int", m.group(1))
        elif m.group(2):
            yield ("ident", m.group(2))
        else:
            yield ("op", m.group(3))


def parse_polynomial(text: str, arena: VarArena) -> Polynomial:
    """Parse the textual polynomial grammar, e.g. ``1/2 + 3/4*x*y^2 - z``.

    Grammar: ``poly := ['-'] term (('+'|'-') term)*``;
    ``term := coeff ('*' factor)* | factor ('*' factor)*``;
    ``factor := ident ('^' uint)?``; ``coeff := int ('/' uint)?``.
    Printing and parsing round-trip exactly.
    """
    tokens = list(_tokenize_poly(text))
    pos = 0

    def peek() -> tuple[str, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> tuple[str, str]:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of polynomial {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor() -> Polynomial:
        kind, value = take()
        if kind != "ident":
            raise ValueError(f"expected variable, got {value!r} in {text!r}")
        if value not in arena:
            raise KeyError(f"unknown variable {value!r}")
        p = Polynomial.variable(arena, value)
        nxt = peek()
        if nxt == ("op", "^"):
            take()
            ekind, evalue = take()
            if ekind != "int":
                raise ValueError(f"expected exponent after '^' in {text!r}")
            p = p ** int(evalue)
        return p

    def parse_term() -> Polynomial:
        kind, value = tokens[pos] if pos < len(tokens) else ("", "")
        if kind == "int":
            take()
            coeff = Fraction(int(value))
            if peek() == ("op", "/"):
                take()
                dkind, dvalue = take()
                if dkind != "int":
                    raise ValueError(f"expected denominator after '/' in {text!r}")
                coeff /= int(dvalue)
            p = Polynomial.constant(arena, coeff)
        elif kind == "ident":
            p = parse_factor()
        else:
            raise ValueError(f"expected term, got {value!r} in {text!r}")
        while peek() == ("op", "*"):
            take()
            p = p * parse_factor()
        return p

    negate = False
    if peek() == ("op", "-"):
        take()
        negate = True
    result = parse_term()
    if negate:
        result = -result
    while True:
        nxt = peek()
        if nxt is None:
            return result
        if nxt == ("op", "+"):
            take()
            result = result + parse_term()
        elif nxt == ("op", "-"):
            take()
            result = result - parse_term()
        else:
            raise ValueError(f"unexpected {nxt[1]!r} in {text!r}")


def parse_fraction(text: str) -> Fraction:
    """Exact rational from 'p/q', integer, or decimal notation."""
    return Fraction(text.strip())


# -- univariate gcd ------------------------------------------------------------


def _dense_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
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
    return a


def _effective_var(a: Polynomial, b: Polynomial) -> int:
    used = a.used_variables() | b.used_variables()
    if len(used) > 1:
        raise MultivariateError("gcd is only supported for univariate polynomials")
    return used.pop() if used else (0 if a.arena else -1)


def gcd_univar(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two effectively univariate polynomials; gcd(f, 0) = monic(f)."""
    if a.arena != b.arena:
        raise ValueError("arena mismatch between gcd operands")
    var = _effective_var(a, b)
    da = a.dense_coeffs(var if var >= 0 else None)
    db = b.dense_coeffs(var if var >= 0 else None)
    while db:
        da, db = db, _dense_rem(da, db)
        if db:
            scale = Fraction(1) / abs(db[-1])
            db = [c * scale for c in db]
    if not da:
        return Polynomial.zero(a.arena)
    monic = [c / da[-1] for c in da]
    if var < 0:
        return Polynomial.constant(a.arena, monic[0])
    return Polynomial.from_dense(a.arena, var, monic)


def square_free_part(f: Polynomial) -> Polynomial:
    """f divided by gcd(f, f'), monic up to the leading coefficient of the quotient."""
    var = f.sole_variable()
    if var is None:
        return f
    g = gcd_univar(f, f.derivative(var))
    if g.is_constant():
        return f
    return f.divexact(g)


# -- rational functions ----------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials; the denominator is never the zero polynomial.

    No coprimality is maintained.  Equality is semantic, by cross
    multiplication, not structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(num.arena, 1)
        if num.arena != den.arena:
            raise ValueError("arena mismatch between numerator and denominator")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, arena: VarArena, value: CoeffLike) -> "RationalFunction":
        return cls(Polynomial.constant(arena, value))

    @property
    def arena(self) -> VarArena:
        return self.num.arena

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other: Union["RationalFunction", Polynomial, CoeffLike]) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.from_const(self.arena, other)

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def equals(self, other: Union["RationalFunction", Polynomial, CoeffLike]) -> bool:
        other = self._coerce(other)
        return self.num * other.den == other.num * self.den

    def evaluate(self, valuation) -> Fraction:
        d = self.den.evaluate(valuation)
        if not d:
            raise EvalPoleError(f"denominator {self.den} vanishes at {valuation!r}")
        return self.num.evaluate(valuation) / d

    def simplify(self) -> "RationalFunction":
        """Strip shared rational content and monomial factors; divide by the
        full gcd when both sides are effectively univariate.  The denominator's
        leading coefficient is normalised positive.  Semantics are preserved."""
        num, den = self.num, self.den
        if num.is_zero():
            return RationalFunction(num, Polynomial.constant(self.arena, 1))
        c_num, c_den = num.content(), den.content()
        scale = Fraction(
            _int_gcd(c_num.numerator, c_den.numerator),
            (c_num.denominator * c_den.denominator) // _int_gcd(c_num.denominator, c_den.denominator),
        )
        if scale != 1:
            inv = Fraction(1) / scale
            num = num * inv
            den = den * inv
        shared = tuple(min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents()))
        if any(shared):
            num = num.div_monomial(shared)
            den = den.div_monomial(shared)
        used = num.used_variables() | den.used_variables()
        if len(used) <= 1:
            g = gcd_univar(num, den)
            if not g.is_constant():
                num = num.divexact(g)
                den = den.divexact(g)
        _, lead = den.leading_term()
        if lead < 0:
            num, den = -num, -den
        return RationalFunction(num, den)

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"<RationalFunction {self}>"
