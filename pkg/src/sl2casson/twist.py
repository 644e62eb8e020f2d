"""SL(2,C) Casson invariants of Dehn surgeries on twist knots.

The twist knot ``K_xi`` (``xi`` half twists; ``K_1`` the trefoil, ``K_2``
the figure-eight) has group ``<x, y | x w = w y>``.  Its irreducible
characters form a curve parameterized by ``rho(x) = [[m, 1], [0, 1/m]]``,
``rho(y) = [[m, 0], [t, 1/m]]``.  The invariant of ``K_xi(p/q)`` is read off
the Culler-Shalen norm of ``p*meridian + q*longitude`` together with two
correction terms.  :func:`norm_degree_oracle` recomputes that norm by
counting solutions on the curve, independently of the closed formulas.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

import numpy as np

from .algebra import (
    IntPoly1,
    IntPoly2,
    LaurentMat2,
    LaurentPoly,
    DegenerateResultantError,
    leading_coefficient_gcd,
    poly_gcd,
    resultant,
    strip_rational_roots,
)
from .seifert import DomainError, lambda_seifert

__all__ = [
    "TwistKnot",
    "TorusKnot",
    "Slope",
    "WordSpec",
    "TracePoly",
    "SeminormSpec",
    "AdmissibilityReport",
    "EntryReport",
    "SizeCapError",
    "IndeterminateError",
    "InternalConsistencyError",
    "twist_word",
    "rep_symbolic",
    "riley_polynomial",
    "entry_properties_check",
    "alexander_poly",
    "boundary_slopes",
    "is_admissible",
    "seminorm",
    "cs_norm",
    "correction_terms",
    "lambda_twist_surgery",
    "lambda_torus_surgery",
    "lambda_prime",
    "trace_polynomial",
    "norm_degree_oracle",
]

MAX_SLOPE_ENTRY = 20
MAX_XI = 12


class SizeCapError(ValueError):
    """A symbolic computation was requested beyond the configured size cap."""


class IndeterminateError(ArithmeticError):
    """Random trials of the degree oracle did not agree."""


class InternalConsistencyError(ArithmeticError):
    """A quantity expected to stabilize did not."""


# -- basic data ---------------------------------------------------------------------


@dataclass(frozen=True)
class TwistKnot:
    xi: int

    def __post_init__(self):
        if not isinstance(self.xi, int) or self.xi < 1:
            raise DomainError(f"twist knots need xi >= 1, got {self.xi!r}")

    def __str__(self) -> str:
        return f"K_{self.xi}"


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2 or gcd(self.p, self.q) != 1:
            raise DomainError(f"torus knot parameters must be coprime and >= 2, got ({self.p}, {self.q})")

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


@dataclass(frozen=True)
class Slope:
    """The curve ``p*meridian + q*longitude`` with ``q >= 0``; the meridian is ``(1, 0)``."""

    p: int
    q: int = 1

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if q < 0:
            p, q = -p, -q
        if q == 0:
            if abs(p) != 1:
                raise DomainError(f"{self.p}/{self.q} is not a primitive slope")
            p = 1
        if gcd(p, q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not in lowest terms")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> Slope:
        """Parse ``"P/Q"`` or ``"P"``."""
        num, _, den = text.strip().partition("/")
        try:
            return cls(int(num), int(den) if den else 1)
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"cannot parse slope {text!r}") from None

    @property
    def is_meridian(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


@dataclass(frozen=True)
class WordSpec:
    """Word in ``x, y`` and their inverses, written ``X = x^-1``, ``Y = y^-1``."""

    letters: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        bad = [c for c in self.letters if c not in _INVERSE]
        if bad:
            raise ValueError(f"letters must be among x, X, y, Y; got {bad}")

    def __add__(self, other: WordSpec) -> WordSpec:
        return WordSpec(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def reversed(self) -> WordSpec:
        return WordSpec(self.letters[::-1])

    def inverse(self) -> WordSpec:
        return WordSpec(tuple(_INVERSE[c] for c in reversed(self.letters)))

    def __str__(self) -> str:
        return "".join(c if c.islower() else c.lower() + "^-1" for c in self.letters) or "1"


def _word(text: str) -> WordSpec:
    return WordSpec(tuple(text))


def twist_word(k: TwistKnot) -> tuple[WordSpec, WordSpec, WordSpec]:
    """Return ``(w, w*, longitude)`` for ``K_xi``; ``w*`` is ``w`` read backwards."""
    xi = k.xi
    if xi % 2 == 0:
        w = _word("yXYx" * (xi // 2))
    else:
        w = _word("yxYX" * ((xi - 1) // 2) + "yx")
    wstar = w.reversed()
    longitude = w + wstar if xi % 2 == 0 else _word("XXXX") + w + wstar
    return w, wstar, longitude


# -- symbolic and numeric representations --------------------------------------------


def _generators() -> dict[str, LaurentMat2]:
    m = LaurentPoly.m
    x = LaurentMat2(m(1), 1, 0, m(-1))
    y = LaurentMat2(m(1), 0, LaurentPoly.t(), m(-1))
    return {"x": x, "X": x.adjugate(), "y": y, "Y": y.adjugate()}


def rep_symbolic(word: WordSpec) -> LaurentMat2:
    """Exact image of ``word`` over ``Z[m^{+-1}, t]``."""
    gens = _generators()
    out = LaurentMat2.identity()
    for c in word.letters:
        out = out * gens[c]
    return out


def _rep_numeric(word: WordSpec, m: complex, t: complex) -> np.ndarray:
    x = np.array([[m, 1], [0, 1 / m]], dtype=complex)
    y = np.array([[m, 0], [t, 1 / m]], dtype=complex)
    gens = {"x": x, "X": np.linalg.inv(x), "y": y, "Y": np.linalg.inv(y)}
    out = np.eye(2, dtype=complex)
    for c in word.letters:
        out = out @ gens[c]
    return out


@dataclass(frozen=True)
class TracePoly:
    """Polynomial in ``(m, t)`` with a recorded power of ``m``: the value is ``cleared * m**mu_shift``."""

    cleared: IntPoly2
    mu_shift: int = 0

    def laurent(self) -> LaurentPoly:
        return self.cleared * LaurentPoly.m(self.mu_shift)

    def is_mu_symmetric(self) -> bool:
        """Whether the Laurent form is unchanged by ``m -> 1/m``."""
        lp = self.laurent()
        return lp.invert_m() == lp

    def degree_t(self) -> int:
        return self.cleared.degree_t()

    def __str__(self) -> str:
        return str(self.cleared)


def _t_content(p: IntPoly2) -> IntPoly1:
    g = IntPoly1()
    for coeff in p.as_t_poly():
        g = poly_gcd(g, coeff)
    return g


def _at_m(p: LaurentPoly, m0: int) -> IntPoly1:
    return IntPoly1(c(m0) for c in p.as_t_poly())


def riley_polynomial(k: TwistKnot, validate: bool = True) -> TracePoly:
    """Defining polynomial of the curve of irreducible characters in ``(m, t)``.

    With ``rho(w) = [[a, b], [c, d]]`` the relation ``x w = w y`` holds
    exactly when ``c = t b`` and ``d = (1/m - m) b``; the first equation is
    an identity on the whole ``(m, t)`` plane, so the curve is cut out by
    ``d - (1/m - m) b``.  At ``m = +-1`` this reduces to ``d``.

    Factors free of ``t`` are removed.  With ``validate`` the result is
    checked to be squarefree in ``t`` and sample roots are checked against
    the full matrix relation.
    """
    w, _, _ = twist_word(k)
    rw = rep_symbolic(w)
    raw = rw.d - (LaurentPoly.m(-1) - LaurentPoly.m(1)) * rw.b
    cleared, shift = raw.clear()
    content = _t_content(cleared)
    if content.degree > 0 or content.content() > 1:
        coeffs = [c.exact_div(content) for c in cleared.as_t_poly()]
        cleared = IntPoly2({(i, j): a for j, col in enumerate(coeffs) for i, a in enumerate(col.coeffs)})
    if cleared.as_t_poly()[-1].lc < 0:
        cleared = IntPoly2.from_laurent(-cleared)
    poly = TracePoly(IntPoly2.from_laurent(cleared), shift)
    if validate:
        _validate_riley(k, poly)
    return poly


def _validate_riley(k: TwistKnot, poly: TracePoly) -> None:
    r = poly.cleared
    if r.degree_t() < 1:
        raise InternalConsistencyError(f"defining polynomial of {k} does not involve t")
    for m0 in (3, 5, 7):
        spec = _at_m(r, m0)
        if spec.degree == r.degree_t():
            if poly_gcd(spec, spec.derivative()).degree > 0:
                raise InternalConsistencyError(f"defining polynomial of {k} is not squarefree in t")
            break
    w, _, _ = twist_word(k)
    xw, wy = _word("x") + w, w + _word("y")

    def g(m0: complex, t0: complex) -> complex:
        mat = _rep_numeric(w, m0, t0)
        return mat[1, 1] - (1 / m0 - m0) * mat[0, 1]

    for m0 in (0.9 + 0.5j, 0.8 - 0.65j):
        coeffs = [c(m0) for c in r.as_t_poly()]
        for t0 in np.roots(coeffs[::-1]):
            # refine on the matrix relation itself; the expanded polynomial is
            # badly conditioned for long words
            t1 = complex(t0)
            for _ in range(30):
                h = 1e-7 * (1 + abs(t1))
                step = g(m0, t1) / ((g(m0, t1 + h) - g(m0, t1 - h)) / (2 * h))
                t1 -= step
                if abs(step) < 1e-15 * (1 + abs(t1)):
                    break
            a, b = _rep_numeric(xw, m0, t1), _rep_numeric(wy, m0, t1)
            drift = abs(t1 - t0) / (1 + abs(t0))
            if drift > 1e-3 or np.abs(a - b).max() / (1.0 + np.abs(a).max()) > 1e-8:
                raise InternalConsistencyError(f"sample root ({m0}, {t0}) of {k} violates x w = w y")


@dataclass
class EntryReport:
    """Outcome of the entry checks on ``rho(w)`` with ``m`` specialized to ``+-1``.

    ``results`` maps each check name to True/False, or None where a check
    does not apply to this parity of ``xi``.
    """

    xi: int
    mu: int
    results: dict[str, bool | None] = field(default_factory=dict)

    def passed(self, names: Sequence[str] = ("i", "ii", "iii", "iv", "v")) -> bool:
        return all(self.results[n] is not False for n in names)


def entry_properties_check(k: TwistKnot, mu: int) -> EntryReport:
    """Check the polynomial identities satisfied by the entries of ``rho(w)`` at ``m = mu``.

    (i) entries are integer polynomials in ``t``; (ii) ``d`` is monic;
    (iii) ``c = t b``; (iv) ``a - d = (2 - t) b`` for even ``xi``;
    (v) ``a + d = (2 + t) b`` for odd ``xi``.  The keys ``iv_opposite`` and
    ``v_opposite`` record the last two with the sign of the right side flipped.
    """
    if mu not in (1, -1):
        raise DomainError("mu must be +1 or -1")
    w, _, _ = twist_word(k)
    a, b, c, d = (e.specialize_m(mu) for e in rep_symbolic(w).entries())
    t = IntPoly1.x()
    two = IntPoly1.constant(2)
    res: dict[str, bool | None] = {}
    res["i"] = all(isinstance(e, IntPoly1) and all(isinstance(v, int) for v in e.coeffs) for e in (a, b, c, d))
    res["ii"] = not d.is_zero() and d.lc == 1
    res["iii"] = c == t * b
    res["iv"] = (a - d == (two - t) * b) if k.xi % 2 == 0 else None
    res["v"] = (a + d == (two + t) * b) if k.xi % 2 == 1 else None
    # the same identities with the right-hand side negated
    res["iv_opposite"] = (a - d == (t - two) * b) if k.xi % 2 == 0 else None
    res["v_opposite"] = (a + d == -(two + t) * b) if k.xi % 2 == 1 else None
    return EntryReport(k.xi, mu, res)


# -- Alexander polynomial, slopes, admissibility ----------------------------------


def alexander_poly(k: TwistKnot) -> IntPoly1:
    """Twice the Alexander polynomial, normalized as a quadratic in ``t``."""
    xi = k.xi
    if xi % 2 == 0:
        return IntPoly1((xi, -2 * (xi + 1), xi))
    return IntPoly1((xi + 1, -2 * xi, xi + 1))


def boundary_slopes(k: TwistKnot) -> tuple[list[int], list[int]]:
    """All boundary slopes and the strict ones; every one is an integer."""
    xi = k.xi
    if xi == 1:
        return [0, 6], [6]
    if xi == 2:
        return [-4, 0, 4], [-4, 4]
    if xi % 2 == 1:
        slopes = [0, 4, 2 * xi + 4]
    else:
        slopes = [-4, 0, 2 * xi]
    # only the trefoil and figure-eight are fibred
    return slopes, list(slopes)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    strict_boundary: bool
    alexander_obstruction: bool
    boundary_slopes: tuple[int, ...]
    reason: str


def _is_strict_boundary(k: TwistKnot, s: Slope) -> bool:
    return s.q == 1 and s.p in boundary_slopes(k)[1]


def is_admissible(k: TwistKnot, s: Slope) -> AdmissibilityReport:
    """Admissibility of ``p/q`` for ``K_xi``.

    Every slope is regular for twist knots, so a slope is admissible unless
    it is a strict boundary slope or ``2*Delta(t)`` shares a root with
    ``t^p' - 1`` (``p' = p`` for odd ``p``, ``p/2`` for even ``p``).  For
    ``p = 0`` the root-of-unity condition is vacuous.
    """
    all_slopes, _ = boundary_slopes(k)
    strict = _is_strict_boundary(k, s)
    obstruction = False
    if s.p != 0:
        pp = abs(s.p) if s.p % 2 else abs(s.p) // 2
        cyclo = IntPoly1.monomial(pp) - IntPoly1.constant(1)
        obstruction = poly_gcd(alexander_poly(k), cyclo).degree > 0
    reasons = []
    if strict:
        reasons.append(f"{s} is a strict boundary slope of {k}")
    if obstruction:
        reasons.append(f"the Alexander polynomial of {k} has a root that is a root of unity of order dividing p'")
    return AdmissibilityReport(
        admissible=not (strict or obstruction),
        strict_boundary=strict,
        alexander_obstruction=obstruction,
        boundary_slopes=tuple(all_slopes),
        reason="; ".join(reasons) or "admissible",
    )


# -- norms and surgery formulas -------------------------------------------------------


@dataclass(frozen=True)
class SeminormSpec:
    """``||p*mu + q*lambda|| = sum a_i |u_i q - v_i p|`` plus the two correction terms.

    ``terms`` holds ``((u_i, v_i), a_i)`` for the boundary slope ``u_i/v_i``.
    """

    terms: tuple[tuple[tuple[int, int], int], ...]
    corrections: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        for _, weight in self.terms:
            if weight < 0 or weight % 2:
                raise ValueError(f"weights must be even and non-negative, got {weight}")

    def evaluate(self, s: Slope) -> int:
        return sum(a * abs(u * s.q - v * s.p) for (u, v), a in self.terms)


def correction_terms(k: TwistKnot) -> tuple[Fraction, Fraction]:
    """``(E_0, E_1)``: the corrections for even and odd ``p``."""
    return Fraction(0), Fraction(k.xi, 2)


def seminorm(k: TwistKnot) -> SeminormSpec:
    xi = k.xi
    if xi == 1:
        terms = (((6, 1), 2),)
    elif xi % 2 == 0:
        terms = (((-4, 1), xi), ((0, 1), xi - 2), ((2 * xi, 1), 2))
    else:
        terms = (((4, 1), xi - 1), ((0, 1), xi - 1), ((2 * xi + 4, 1), 2))
    terms = tuple(t for t in terms if t[1])
    return SeminormSpec(terms, correction_terms(k))


def cs_norm(k: TwistKnot, s: Slope) -> int:
    """Culler-Shalen norm of ``p*mu + q*lambda``; the invariant's seminorm is a quarter of it."""
    return seminorm(k).evaluate(s)


def lambda_twist_surgery(k: TwistKnot, s: Slope) -> Fraction:
    """SL(2,C) Casson invariant of ``K_xi(p/q)``.

    For ``xi > 1`` strict boundary slopes raise :class:`DomainError`.  The
    trefoil accepts every slope.
    """
    if k.xi == 1:
        half = Fraction(abs(6 * s.q - s.p), 2)
        if s.p % 2:
            return half - Fraction(1, 2)
        if s.p % 12:
            return half
        return half - 2
    if _is_strict_boundary(k, s):
        raise DomainError(f"{s} is a strict boundary slope of {k}; the surgery formula does not apply")
    e0, e1 = correction_terms(k)
    return Fraction(cs_norm(k, s), 4) - (e1 if s.p % 2 else e0)


def lambda_torus_surgery(p: int, q: int, n: int) -> Fraction:
    """Invariant of ``1/n`` surgery on the torus knot ``T(p, q)``, the sphere ``Sigma(p, q, pqn - 1)``."""
    TorusKnot(p, q)
    if n < 1:
        raise DomainError("only 1/n surgeries with n >= 1 are supported")
    return lambda_seifert((p, q, p * q * n - 1))


Knot = Union[TorusKnot, TwistKnot]


def lambda_prime(knot: Knot) -> Fraction:
    """Stabilized difference ``lambda(K(1/(n+1))) - lambda(K(1/n))``, checked at ``n = 10, 11``."""
    if isinstance(knot, TorusKnot):
        def lam(n: int) -> Fraction:
            return lambda_torus_surgery(knot.p, knot.q, n)
    elif isinstance(knot, TwistKnot):
        def lam(n: int) -> Fraction:
            return lambda_twist_surgery(knot, Slope(1, n))
    else:
        raise TypeError(f"unsupported knot {knot!r}")
    d10 = lam(11) - lam(10)
    d11 = lam(12) - lam(11)
    if d10 != d11:
        raise InternalConsistencyError(f"difference did not stabilize for {knot}: {d10} vs {d11}")
    return d10


# -- trace polynomials and the degree oracle ------------------------------------------


def _check_caps(k: TwistKnot, s: Slope, max_entry: int, max_xi: int) -> None:
    if k.xi > max_xi:
        raise SizeCapError(f"xi = {k.xi} exceeds the cap {max_xi}")
    if abs(s.p) > max_entry or s.q > max_entry:
        raise SizeCapError(f"slope {s} exceeds the cap |p|, q <= {max_entry}")


def trace_polynomial(k: TwistKnot, s: Slope, max_entry: int = MAX_SLOPE_ENTRY, max_xi: int = MAX_XI) -> TracePoly:
    """``tr rho(x^p longitude^q) - 2`` on the character curve coordinates."""
    _check_caps(k, s, max_entry, max_xi)
    _, _, longitude = twist_word(k)
    mat = rep_symbolic(_word("x")) ** s.p * rep_symbolic(longitude) ** s.q
    cleared, shift = (mat.trace() - 2).clear()
    return TracePoly(cleared, shift)


_BRANCH_POINTS = (0, 1, -1)


def _is_squarefree(p: IntPoly1) -> bool:
    return p.degree < 1 or poly_gcd(p, p.derivative()).degree == 0


def _partial(p: LaurentPoly, var: str) -> IntPoly2:
    k = 0 if var == "m" else 1
    out: dict[tuple[int, int], int] = {}
    for key, c in p.terms.items():
        if key[k]:
            new = (key[0] - 1, key[1]) if k == 0 else (key[0], key[1] - 1)
            out[new] = out.get(new, 0) + c * key[k]
    return IntPoly2(out)


def _oracle_trial(riley: IntPoly2, trace: TracePoly, c: Fraction) -> int | None:
    """Count solutions ``(m, t)``, ``m`` off ``{0, +-1}``, of ``riley = 0``, ``trace = c``.

    Solutions are counted with multiplicity as roots of the resultant in
    ``m``.  Returns None when ``c`` is visibly non-generic: a solution
    escapes to infinity, or some solution may be a tangency (the resultant
    shares a root with the resultant of ``riley`` and the Jacobian).
    """
    level, _ = (trace.laurent() * c.denominator - (c.numerator)).clear()
    if level.degree_t() < 1:
        # t-free level set: each admissible m carries deg_t(riley) points
        g = strip_rational_roots(level.as_t_poly()[0], _BRANCH_POINTS)
        lc = strip_rational_roots(riley.as_t_poly()[-1], _BRANCH_POINTS)
        if not _is_squarefree(g) or poly_gcd(g, lc).degree > 0:
            return None
        return g.degree * riley.degree_t()
    lcg = strip_rational_roots(leading_coefficient_gcd(riley, level, "t"), _BRANCH_POINTS)
    if lcg.degree > 0:
        return None
    res = resultant(riley, level, "t")
    if res.is_zero():
        return None
    core = strip_rational_roots(res, _BRANCH_POINTS)
    if not _is_squarefree(core):
        jac = _partial(riley, "m") * _partial(level, "t") - _partial(riley, "t") * _partial(level, "m")
        tangency = resultant(riley, IntPoly2.from_laurent(jac), "t")
        if tangency.is_zero() or poly_gcd(core, tangency).degree > 0:
            return None
    return core.degree


def norm_degree_oracle(
    k: TwistKnot,
    s: Slope,
    trials: int = 3,
    seed: int = 0,
    max_attempts: int | None = None,
) -> int:
    """Culler-Shalen norm of ``s`` computed by counting points on the character curve.

    For random rational ``c`` of small height, the solutions of
    ``riley = 0`` and ``tr rho(s) - 2 = c`` are counted (by resultant
    elimination of ``t``) with multiplicity, away from ``m in {0, +-1}``.
    Trials whose ``c`` is visibly non-generic are discarded; the answer is
    the strict majority over ``trials`` accepted trials.

    For even ``xi`` the words of ``twist_word`` present the mirror image of
    the knot whose boundary slopes are ``{-4, 0, 2 xi}``, so the curve is
    probed at ``-p/q`` to stay in the slope convention of ``cs_norm``.
    """
    if trials < 3:
        raise ValueError("the oracle needs at least three trials")
    probe = s if k.xi % 2 else Slope(-s.p, s.q)
    trace = trace_polynomial(k, probe)
    riley = riley_polynomial(k).cleared
    rng = random.Random(seed)
    budget = max_attempts if max_attempts is not None else 4 * trials
    counts: list[int] = []
    attempts = 0
    while len(counts) < trials:
        if attempts >= budget:
            raise DegenerateResultantError(
                f"only {len(counts)} of {trials} trials were generic after {attempts} attempts"
            )
        attempts += 1
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if c in (0, -4):
            continue
        n = _oracle_trial(riley, trace, c)
        if n is not None:
            counts.append(n)
    value, freq = Counter(counts).most_common(1)[0]
    if 2 * freq <= len(counts):
        raise IndeterminateError(f"no majority among trial counts {counts}")
    return value
