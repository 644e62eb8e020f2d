"""Exact integer and rational polynomial arithmetic.

Everything here is immutable and works over Python integers, so results
are exact regardless of coefficient growth.  The pieces are:

* :class:`IntPoly1` -- dense univariate polynomials over ``Z``;
* :class:`LaurentPoly` -- sparse polynomials in ``m^{+-1}`` and ``t``;
* :class:`IntPoly2` -- a :class:`LaurentPoly` with no negative powers of ``m``;
* :class:`LaurentMat2` -- 2x2 matrices with :class:`LaurentPoly` entries;
* gcd, squarefree part, subresultant resultant and root counting.

Rational values are plain :class:`fractions.Fraction` objects (``BigRat``).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

BigRat = Fraction

__all__ = [
    "BigRat",
    "IntPoly1",
    "LaurentPoly",
    "IntPoly2",
    "LaurentMat2",
    "DegenerateResultantError",
    "poly_gcd",
    "squarefree_part",
    "resultant",
    "leading_coefficient_gcd",
    "count_roots_with_multiplicity",
    "strip_rational_roots",
    "prem",
]


class DegenerateResultantError(ArithmeticError):
    """Both leading coefficients vanish at a common point."""


def _content(coeffs: Iterable[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


class IntPoly1:
    """Univariate integer polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def x(cls) -> IntPoly1:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPoly1:
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> IntPoly1:
        return cls([0] * deg + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly1:
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def content(self) -> int:
        return _content(self.coeffs)

    def primitive(self) -> IntPoly1:
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly1(a // c for a in self.coeffs)

    def derivative(self) -> IntPoly1:
        return IntPoly1(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly1.constant(other)
        return isinstance(other, IntPoly1) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> IntPoly1:
        return IntPoly1(-c for c in self.coeffs)

    def __add__(self, other) -> IntPoly1:
        if isinstance(other, int):
            other = IntPoly1.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly1(out)

    __radd__ = __add__

    def __sub__(self, other) -> IntPoly1:
        if isinstance(other, int):
            other = IntPoly1.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> IntPoly1:
        return (-self) + other

    def __mul__(self, other) -> IntPoly1:
        if isinstance(other, int):
            return IntPoly1(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly1()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly1:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly1.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod_exact(self, other: IntPoly1) -> tuple[IntPoly1, IntPoly1]:
        """Division over Z; raises if a quotient coefficient is not integral."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q, r = divmod(c, lb)
            if r:
                raise ArithmeticError("inexact division over the integers")
            quot[k - db] = q
            for i, bc in enumerate(other.coeffs):
                rem[k - db + i] -= q * bc
        return IntPoly1(quot), IntPoly1(rem)

    def exact_div(self, other) -> IntPoly1:
        if isinstance(other, int):
            out = []
            for c in self.coeffs:
                q, r = divmod(c, other)
                if r:
                    raise ArithmeticError("inexact division over the integers")
                out.append(q)
            return IntPoly1(out)
        q, r = self.divmod_exact(other)
        if r:
            raise ArithmeticError("polynomial does not divide exactly")
        return q

    def divides(self, other: IntPoly1) -> bool:
        """True when ``self`` divides ``other`` over Q."""
        if self.is_zero():
            return other.is_zero()
        return prem(other, self).is_zero()

    def __repr__(self) -> str:
        return f"IntPoly1({list(self.coeffs)})"

    def __str__(self) -> str:
        return _format_univariate(self.coeffs, "t")

    def format(self, var: str = "t") -> str:
        return _format_univariate(self.coeffs, var)


def _format_univariate(coeffs: Sequence[int], var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' if mono else ''}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def prem(a: IntPoly1, b: IntPoly1) -> IntPoly1:
    """Pseudo-remainder of ``a`` by ``b`` (``lc(b)**(da-db+1) * a mod b``)."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    rem = list(a.coeffs)
    db, lb = b.degree, b.lc
    if len(rem) - 1 < db:
        return a
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        rem = [lb * r for r in rem]
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k - db + i] -= c * bc
        rem[k] = 0
    return IntPoly1(rem)


def poly_gcd(p: IntPoly1, q: IntPoly1) -> IntPoly1:
    """Greatest common divisor over Q, primitive with positive leading coefficient.

    ``poly_gcd(0, 0)`` is the zero polynomial.
    """
    a, b = p.primitive(), q.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = prem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part(p: IntPoly1) -> IntPoly1:
    """``p / gcd(p, p')``, primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return IntPoly1.constant(1)
    g = poly_gcd(p, p.derivative())
    return _div_over_q(p.primitive(), g)[0].primitive()


def _div_over_q(p: IntPoly1, d: IntPoly1) -> tuple[IntPoly1, IntPoly1]:
    # scale so that integer division is exact whenever d | p over Q
    k = p.degree - d.degree + 1
    return (p * (d.lc ** max(k, 0))).divmod_exact(d)


def strip_rational_roots(p: IntPoly1, points: Iterable) -> IntPoly1:
    """Divide out every root of ``p`` at the given rational points, exactly."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root count")
    remaining = p
    for point in set(Fraction(e) for e in points):
        linear = IntPoly1((-point.numerator, point.denominator))
        while remaining.degree > 0 and remaining(point) == 0:
            remaining = _div_over_q(remaining, linear)[0].primitive()
    return remaining


def count_roots_with_multiplicity(p: IntPoly1, exclude: Iterable = ()) -> int:
    """Number of complex roots of ``p``, with multiplicity, off the excluded points.

    Multiplicities at the (rational) excluded points are found by exact
    repeated division.
    """
    return strip_rational_roots(p, exclude).degree


# -- bivariate Laurent polynomials ---------------------------------------------


class LaurentPoly:
    """Sparse integer polynomial in ``m^{+-1}`` and ``t``.

    ``terms`` maps ``(i, j)`` to the coefficient of ``m**i * t**j``; ``j`` is
    never negative, ``i`` may be.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms: dict[tuple[int, int], int] = {
            (int(i), int(j)): int(c) for (i, j), c in (terms or {}).items() if c
        }
        if any(j < 0 for _, j in self.terms):
            raise ValueError("negative power of t")

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({(0, 0): c})

    @classmethod
    def m(cls, power: int = 1) -> LaurentPoly:
        return cls({(power, 0): 1})

    @classmethod
    def t(cls, power: int = 1) -> LaurentPoly:
        return cls({(0, power): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self.terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    # -- structure ----------------------------------------------------------
    def min_m(self) -> int:
        return min(i for i, _ in self.terms) if self.terms else 0

    def max_m(self) -> int:
        return max(i for i, _ in self.terms) if self.terms else 0

    def degree_t(self) -> int:
        return max(j for _, j in self.terms) if self.terms else -1

    def clear(self) -> tuple[IntPoly2, int]:
        """Multiply by ``m**(-min_m)``; return the cleared polynomial and the shift.

        ``self == cleared * m**shift``.
        """
        shift = self.min_m()
        return IntPoly2({(i - shift, j): c for (i, j), c in self.terms.items()}), shift

    def invert_m(self) -> LaurentPoly:
        """Substitute ``m -> 1/m``."""
        return LaurentPoly({(-i, j): c for (i, j), c in self.terms.items()})

    def specialize_m(self, value: int) -> IntPoly1:
        """Substitute ``m = value`` (``value`` must be +-1); polynomial in ``t``."""
        if value not in (1, -1):
            raise ValueError("only m = +-1 keeps integer coefficients")
        out: dict[int, int] = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, 0) + c * (value ** (i % 2))
        deg = max(out, default=-1)
        return IntPoly1(out.get(k, 0) for k in range(deg + 1))

    def as_t_poly(self) -> list[IntPoly1]:
        """Coefficients in ``t`` as polynomials in ``m`` (requires ``min_m >= 0``)."""
        if self.min_m() < 0:
            raise ValueError("clear negative powers of m first")
        cols: dict[int, dict[int, int]] = {}
        for (i, j), c in self.terms.items():
            cols.setdefault(j, {})[i] = c
        out = []
        for j in range(self.degree_t() + 1):
            col = cols.get(j, {})
            out.append(IntPoly1(col.get(i, 0) for i in range(max(col, default=-1) + 1)))
        return out

    def as_m_poly(self) -> list[IntPoly1]:
        """Coefficients in ``m`` as polynomials in ``t`` (requires ``min_m >= 0``)."""
        if self.min_m() < 0:
            raise ValueError("clear negative powers of m first")
        swapped = LaurentPoly({(j, i): c for (i, j), c in self.terms.items()})
        return swapped.as_t_poly()

    def evaluate(self, m, t):
        return sum(c * m**i * t**j for (i, j), c in self.terms.items())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(sorted(self.terms.items()))})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            mono = []
            if i:
                mono.append("m" if i == 1 else f"m^{i}")
            if j:
                mono.append("t" if j == 1 else f"t^{j}")
            body = "*".join(mono)
            coef = "" if body and abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+", coef + ("*" if coef and body else "") + body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


class IntPoly2(LaurentPoly):
    """Bivariate integer polynomial in ``m`` and ``t`` (no negative exponents)."""

    __slots__ = ()

    def __init__(self, terms=None):
        super().__init__(terms)
        if any(i < 0 for i, _ in self.terms):
            raise ValueError("IntPoly2 cannot hold negative powers of m")

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> IntPoly2:
        return cls(p.terms)


def _to_univariate(p: LaurentPoly, eliminate: str) -> list[IntPoly1]:
    if eliminate == "t":
        return p.as_t_poly()
    if eliminate == "m":
        return p.as_m_poly()
    raise ValueError(f"unknown variable {eliminate!r}")


def leading_coefficient_gcd(p: LaurentPoly, q: LaurentPoly, eliminate: str = "t") -> IntPoly1:
    """gcd of the leading coefficients of ``p`` and ``q`` in the eliminated variable."""
    return poly_gcd(_to_univariate(p, eliminate)[-1], _to_univariate(q, eliminate)[-1])


def _pseudo_rem_dom(a: list[IntPoly1], b: list[IntPoly1]) -> list[IntPoly1]:
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        rem = [lb * r for r in rem]
        if c:
            for i, bc in enumerate(b):
                rem[k - db + i] = rem[k - db + i] - c * bc
        rem.pop()
    while rem and rem[-1].is_zero():
        rem.pop()
    return rem


def _subresultant(a: list[IntPoly1], b: list[IntPoly1]) -> IntPoly1:
    """Resultant of two polynomials with IntPoly1 coefficients (Collins/Brown PRS)."""
    if not a or not b:
        return IntPoly1()
    sign = 1
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            sign = -sign
    if db == 0:
        return b[0] ** da * sign
    g = IntPoly1.constant(1)
    h = IntPoly1.constant(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _pseudo_rem_dom(a, b)
        if not r:
            return IntPoly1()
        divisor = g * h**delta
        a, b = b, [c.exact_div(divisor) for c in r]
        g = a[-1]
        if delta >= 1:
            h = (g**delta).exact_div(h ** (delta - 1))
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            if da == 0:
                return b[0] * sign
            return (b[0] ** da).exact_div(h ** (da - 1)) * sign


def resultant(p: LaurentPoly, q: LaurentPoly, eliminate: str = "t", *, strict: bool = False) -> IntPoly1:
    """Resultant of ``p`` and ``q`` with respect to ``eliminate`` (``"t"`` or ``"m"``).

    Computed by the fraction-free subresultant remainder sequence over the
    polynomial ring in the surviving variable.  Its roots are the values of
    the surviving variable at which ``p`` and ``q`` share a root, plus the
    common roots of the two leading coefficients.  If one input has degree
    zero in ``eliminate`` the result is that input raised to the other's
    degree.  With ``strict=True`` a
    nonconstant common leading-coefficient factor raises
    :class:`DegenerateResultantError`.
    """
    a, b = _to_univariate(p, eliminate), _to_univariate(q, eliminate)
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    if strict:
        g = poly_gcd(a[-1], b[-1])
        if g.degree > 0:
            raise DegenerateResultantError(f"leading coefficients share the factor {g}")
    return _subresultant(a, b)


# -- 2x2 matrices ------------------------------------------------------------------


class LaurentMat2:
    """2x2 matrix over ``Z[m^{+-1}, t]``, stored row-major."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (
            e if isinstance(e, LaurentPoly) else LaurentPoly.constant(e) for e in (a, b, c, d)
        )

    @classmethod
    def identity(cls) -> LaurentMat2:
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return self.a, self.b, self.c, self.d

    def __mul__(self, other: LaurentMat2) -> LaurentMat2:
        return LaurentMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, n: int) -> LaurentMat2:
        if n < 0:
            return self.adjugate() ** (-n)
        result = LaurentMat2.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentMat2) and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def adjugate(self) -> LaurentMat2:
        """Adjugate; equal to the inverse when the determinant is 1."""
        return LaurentMat2(self.d, -self.b, -self.c, self.a)

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def trace(self) -> LaurentPoly:
        return self.a + self.d

    def __repr__(self) -> str:
        return f"LaurentMat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"
