"""Character varieties of Seifert fibered homology spheres, computed directly.

These routines are independent of the closed formulas in
:mod:`sl2casson.seifert` and serve as oracles for them:

* enumeration of parabolic weight vectors, which index the components of
  the irreducible character variety;
* explicit numeric representations of polygon groups
  ``T(2a_1, a_2, ..., a_n)`` built from prescribed traces;
* ranks of the Fox-calculus cocycle system with ``Ad rho`` coefficients.

Words in a group are lists of nonzero integers: ``k`` is the ``k``-th
generator (1-based) and ``-k`` its inverse.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import cos, gcd, isclose, pi, sin, sqrt
from typing import Sequence

import numpy as np

from .seifert import DomainError, SeifertTuple, bezout_coefficients

__all__ = [
    "Presentation",
    "TrianglePresentation",
    "WeightVector",
    "NumericRep",
    "CocycleReport",
    "RankAmbiguityError",
    "solve_abc",
    "enumerate_weights",
    "count_isolated_weights",
    "components_by_dimension",
    "lemma_abc_conjugator",
    "build_triangle_rep",
    "irreducible_reps",
    "verify_relations",
    "cocycle_dims",
    "fox_cocycle_dims",
    "seifert_cocycle_dims",
]

RELATION_TOL = 1e-9
RANK_TOL = 1e-6

Word = list[int]


class RankAmbiguityError(ArithmeticError):
    """A singular value sits too close to the rank cut to decide the rank."""


@dataclass(frozen=True)
class Presentation:
    """Finite presentation: generator names and relator words."""

    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class TrianglePresentation(Presentation):
    """Polygon group ``<x_1..x_n | x_1^(2a_1) = x_i^(a_i) = x_1...x_n = 1>``."""

    orders: tuple[int, ...] = ()

    @classmethod
    def from_seifert(cls, a) -> TrianglePresentation:
        st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
        orders = (2 * st[0],) + tuple(st[1:])
        n = len(orders)
        relators = tuple((i + 1,) * k for i, k in enumerate(orders))
        relators += (tuple(range(1, n + 1)),)
        gens = tuple(f"x{i + 1}" for i in range(n))
        return cls(gens, relators, orders)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return (self.orders[0] // 2,) + self.orders[1:]

    def __post_init__(self):
        if len(self.orders) < 3:
            raise DomainError("a polygon group needs at least three generators")
        if self.orders[0] % 2 or any(k % 2 == 0 for k in self.orders[1:]):
            raise DomainError(f"orders must look like (2a_1, odd, ..., odd): {self.orders}")
        a = self.multiplicities
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                if gcd(a[i], a[j]) != 1:
                    raise DomainError(f"multiplicities {a} are not pairwise coprime")


# -- weight vectors ----------------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """Parabolic weights ``alpha_i`` in ``[0, 1/2]``; only ``alpha_1`` may be 1/2."""

    alpha: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        """Number of weights strictly between 0 and 1/2."""
        return sum(1 for a in self.alpha if 0 < a < Fraction(1, 2))

    def traces(self) -> tuple[float, ...]:
        return tuple(2 * cos(2 * pi * a) for a in self.alpha)


def _weight_ranges(st: SeifertTuple) -> list[list[Fraction]]:
    a1 = st[0]
    ranges = [[Fraction(k, 2 * a1) for k in range(a1 + 1)]]
    for ai in st[1:]:
        ranges.append([Fraction(k, ai) for k in range((ai + 1) // 2)])
    return ranges


def enumerate_weights(a):
    """Yield every admissible :class:`WeightVector` for the tuple ``a``."""
    st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
    for alpha in product(*_weight_ranges(st)):
        yield WeightVector(alpha)


def _interior_histogram(st: SeifertTuple) -> Counter:
    half = Fraction(1, 2)
    flags = [[0 < w < half for w in r] for r in _weight_ranges(st)]
    return Counter(sum(choice) for choice in product(*flags))


def count_isolated_weights(a) -> int:
    """Count weight vectors with exactly three interior weights, by enumeration."""
    st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
    if st.n < 3:
        raise DomainError("need at least three fibres")
    return _interior_histogram(st)[3]


def components_by_dimension(a) -> dict[int, int]:
    """Map ``2m - 6`` to the number of weight vectors with ``m`` interior weights."""
    st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
    hist = _interior_histogram(st)
    return {2 * m - 6: hist[m] for m in range(3, st.n + 1)}


# -- explicit representations -------------------------------------------------------


def solve_abc(p: int, q: int, r: int) -> tuple[int, int, int]:
    """Integers with ``a*q*r + b*p*r + c*p*q == 1``."""
    for x, y in ((p, q), (p, r), (q, r)):
        if x < 1 or y < 1 or gcd(x, y) != 1:
            raise DomainError(f"({p}, {q}, {r}) is not a pairwise coprime triple")
    a, b, c = bezout_coefficients([q * r, p * r, p * q])
    return a, b, c


def lemma_abc_conjugator(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    """Solve ``u + v = 1``, ``u cos(alpha+beta) + v cos(alpha-beta) = cos(gamma)``.

    With ``P = [[u, v], [-1, 1]]`` (determinant ``u + v = 1``) and
    ``A, B`` diagonal with eigenvalues ``e^{+-i alpha}``, ``e^{+-i beta}``,
    ``tr(A P B P^-1) = 2 cos(gamma)``.
    """
    cp, cm = cos(alpha + beta), cos(alpha - beta)
    if isclose(cp, cm, abs_tol=1e-14):
        raise DomainError("cos(alpha+beta) == cos(alpha-beta): no conjugator exists")
    u = (cos(gamma) - cm) / (cp - cm)
    return u, 1.0 - u


def _diag(theta: float) -> np.ndarray:
    return np.diag([np.exp(1j * theta), np.exp(-1j * theta)])


def _eig_angle(trace: complex) -> float:
    return float(np.arccos(np.clip(np.real(trace) / 2, -1.0, 1.0)))


@dataclass
class NumericRep:
    """Complex 2x2 images of the generators of a presentation."""

    images: tuple[np.ndarray, ...]
    residual: float = 0.0
    irreducibility_gap: float = 0.0
    traces: tuple[float, ...] = field(default=())

    def word(self, w: Sequence[int]) -> np.ndarray:
        out = np.eye(2, dtype=complex)
        for letter in w:
            g = self.images[abs(letter) - 1]
            out = out @ (g if letter > 0 else np.linalg.inv(g))
        return out


def _commutator_gap(a: np.ndarray, b: np.ndarray) -> float:
    c = a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
    return float(abs(np.trace(c) - 2))


def _allowed_trace(order: int, trace: float) -> bool:
    for k in range(order):
        if isclose(2 * cos(2 * pi * k / order), trace, abs_tol=1e-9):
            return True
    return False


def build_triangle_rep(pres: TrianglePresentation, traces: Sequence[float]) -> NumericRep:
    """Representation of ``pres`` with ``tr rho(x_i) = traces[i]``.

    Central generators are sent to ``+-I`` (only ``x_1`` may go to ``-I``);
    at least three generators must be non-central.  The non-central ones are
    built left to right: each new generator is conjugated, as in the
    two-matrix trace lemma, so that the running product reaches a prescribed
    trace, and the last one closes the product relation.
    """
    n = len(pres.orders)
    if len(traces) != n:
        raise DomainError(f"expected {n} traces, got {len(traces)}")
    sign = 1
    noncentral = []
    for i, (order, tr) in enumerate(zip(pres.orders, traces)):
        if not _allowed_trace(order, tr):
            raise DomainError(f"trace {tr} is not that of an element of order dividing {order}")
        if isclose(abs(tr), 2.0, abs_tol=1e-9):
            if tr < 0:
                if i != 0:
                    raise DomainError(f"x{i + 1} has odd order and cannot map to -I")
                sign = -sign
        else:
            noncentral.append(i)
    if len(noncentral) < 3:
        raise DomainError("an irreducible representation needs three non-central generators")

    angles = [_eig_angle(traces[i]) for i in noncentral]
    k = len(angles)
    # running-product angles: theta[j] is the angle of g_1...g_{j+1}
    theta = [angles[0]]
    for j in range(1, k - 1):
        if j == k - 2:
            target = angles[-1] if sign == 1 else pi - angles[-1]
        else:
            target = pi * (0.3 + 0.4 * ((j * 0.6180339887) % 1.0))
        theta.append(target)

    mats = [_diag(angles[0])]
    running = mats[0]
    for j in range(1, k - 1):
        # diagonalize the running product: running = Q diag Q^-1
        vals, vecs = np.linalg.eig(running)
        if np.angle(vals[0]) < 0:
            vals, vecs = vals[::-1], vecs[:, ::-1]
        q = vecs / np.sqrt(np.linalg.det(vecs))
        u, v = lemma_abc_conjugator(float(np.angle(vals[0])), angles[j], theta[j])
        p = np.array([[u, v], [-1.0, 1.0]], dtype=complex)
        g = q @ p @ _diag(angles[j]) @ np.linalg.inv(p) @ np.linalg.inv(q)
        mats.append(g)
        running = running @ g
    mats.append(sign * np.linalg.inv(running))

    images = []
    it = iter(mats)
    for i, tr in enumerate(traces):
        if i in noncentral:
            images.append(next(it))
        else:
            images.append(np.eye(2, dtype=complex) * (1 if tr > 0 else -1))
    g1, g2 = images[noncentral[0]], images[noncentral[1]]
    rep = NumericRep(tuple(images), traces=tuple(traces), irreducibility_gap=_commutator_gap(g1, g2))
    rep.residual = verify_relations(rep, pres)
    return rep


def irreducible_reps(a) -> list[NumericRep]:
    """One representation per isolated irreducible character of ``Sigma(a)``.

    Enumerates the weight vectors with three interior weights and builds
    the corresponding polygon-group representation for each.
    """
    st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
    pres = TrianglePresentation.from_seifert(st)
    reps = []
    for wv in enumerate_weights(st):
        if wv.m == 3:
            reps.append(build_triangle_rep(pres, wv.traces()))
    return reps


def verify_relations(rep: NumericRep, pres: Presentation, tol: float | None = None) -> float:
    """Largest operator-norm defect ``||rho(r) - I||`` over the relators.

    With ``tol`` given, raise if the defect is not below it.
    """
    worst = 0.0
    for r in pres.relators:
        worst = max(worst, float(np.linalg.norm(rep.word(r) - np.eye(2), 2)))
    if tol is not None and not worst < tol:
        raise ArithmeticError(f"relation residual {worst:.3e} exceeds {tol:.1e}")
    return worst


# -- Fox calculus -------------------------------------------------------------------

_SL2_BASIS = (
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _sl2_coords(x: np.ndarray) -> np.ndarray:
    return np.array([x[0, 1], x[1, 0], x[0, 0]])


def adjoint(g: np.ndarray) -> np.ndarray:
    """Matrix of ``X -> g X g^-1`` on sl2 in the basis ``(E, F, H)``."""
    gi = np.linalg.inv(g)
    return np.column_stack([_sl2_coords(g @ e @ gi) for e in _SL2_BASIS])


@dataclass(frozen=True)
class CocycleReport:
    """Dimensions of 1-cocycles, 1-coboundaries and first cohomology."""

    dimZ1: int
    dimB1: int
    dimH1: int
    singular_values: tuple[float, ...]


def _numeric_rank(mat: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0:
        return 0, s
    scale = max(1.0, float(s[0]))
    cut = tol * scale
    ambiguous = [x for x in s if cut * 1e-3 < x < cut * 1e3]
    if ambiguous:
        raise RankAmbiguityError(f"singular values {ambiguous} are too close to the cut {cut:.1e}")
    return int(np.sum(s > cut)), s


def cocycle_dims(images: Sequence[np.ndarray], relators: Sequence[Sequence[int]], tol: float = RANK_TOL) -> CocycleReport:
    """Cocycle/coboundary ranks for ``Ad rho`` from the Fox Jacobian of the relators."""
    ngen = len(images)
    inverses = [np.linalg.inv(g) for g in images]
    rows = []
    for r in relators:
        row = np.zeros((3, 3 * ngen), dtype=complex)
        prefix = np.eye(2, dtype=complex)
        for letter in r:
            k = abs(letter) - 1
            if letter > 0:
                row[:, 3 * k:3 * k + 3] += adjoint(prefix)
                prefix = prefix @ images[k]
            else:
                prefix = prefix @ inverses[k]
                row[:, 3 * k:3 * k + 3] -= adjoint(prefix)
        rows.append(row)
    jac = np.vstack(rows) if rows else np.zeros((0, 3 * ngen), dtype=complex)
    rank_jac, s = _numeric_rank(jac, tol) if rows else (0, np.zeros(0))
    dimZ1 = 3 * ngen - rank_jac
    cob = np.vstack([adjoint(g) - np.eye(3) for g in images])
    dimB1, _ = _numeric_rank(cob, tol)
    return CocycleReport(dimZ1, dimB1, dimZ1 - dimB1, tuple(float(x) for x in s))


def _power(gen: int, k: int) -> list[int]:
    return [gen if k > 0 else -gen] * abs(k)


def _normalized_abc(p: int, q: int, r: int, abc: tuple[int, int, int]) -> tuple[int, int, int]:
    a, b, c = abc
    if a * q * r + b * p * r + c * p * q != 1:
        raise DomainError(f"{abc} does not satisfy a*qr + b*pr + c*pq = 1")
    # make b, c even (q, r odd) so that y, z are genuine roots of I
    if b % 2:
        b, a = b + q, a - p
    if c % 2:
        c, a = c + r, a - p
    return a, b, c


def fox_cocycle_dims(rep: NumericRep, brieskorn: tuple[int, int, int], abc: tuple[int, int, int], tol: float = RANK_TOL) -> CocycleReport:
    """Cocycle dimensions for ``pi_1 Sigma(p,q,r)`` at the lift of a triangle-group rep.

    ``rep`` represents ``T(2p, q, r)`` with ``q`` and ``r`` odd.  The
    central generator is sent to ``rho(x)^p``, which equals ``rho(h)``
    once ``b`` and ``c`` are made even.  Generators are ordered
    ``x, y, z, h``.
    """
    p, q, r = brieskorn
    if q % 2 == 0 or r % 2 == 0:
        raise DomainError("order the Brieskorn triple so that q and r are odd")
    a, b, c = _normalized_abc(p, q, r, abc)
    x, y, z = rep.images
    h = np.linalg.matrix_power(x, p)
    x_, y_, z_, h_ = 1, 2, 3, 4
    relators = [
        [h_, x_, -h_, -x_],
        [h_, y_, -h_, -y_],
        [h_, z_, -h_, -z_],
        _power(x_, p) + _power(h_, -a),
        _power(y_, q) + _power(h_, -b),
        _power(z_, r) + _power(h_, -c),
        [x_, y_, z_],
    ]
    return cocycle_dims([x, y, z, h], relators, tol)


def seifert_cocycle_dims(rep: NumericRep, a, tol: float = RANK_TOL) -> CocycleReport:
    """Cocycle dimensions for ``pi_1 Sigma(a_1..a_n)`` at the lift of a polygon-group rep.

    Uses ``<x_1..x_n, h | h central, x_i^(a_i) = h^(-b_i), x_1...x_n = 1>``
    with ``b_2, ..., b_n`` made even.
    """
    st = a if isinstance(a, SeifertTuple) else SeifertTuple(a)
    n = st.n
    b = st.seifert_coefficients()
    for i in range(1, n):
        if b[i] % 2:
            b[i] += st[i]
            b[0] -= st[0]
    # b_1 is now odd, so x_1^(a_1) = h^(-b_1) = h
    h = np.linalg.matrix_power(rep.images[0], st[0])
    hh = n + 1
    relators = [[hh, i, -hh, -i] for i in range(1, n + 1)]
    relators += [_power(i + 1, st[i]) + _power(hh, b[i]) for i in range(n)]
    relators.append(list(range(1, n + 1)))
    return cocycle_dims(list(rep.images) + [h], relators, tol)
