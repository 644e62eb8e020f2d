from fractions import Fraction
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sl2casson.algebra import IntPoly1, LaurentPoly
from sl2casson.seifert import DomainError, lambda_seifert
from sl2casson.twist import (
    SeminormSpec,
    SizeCapError,
    Slope,
    TorusKnot,
    TwistKnot,
    WordSpec,
    alexander_poly,
    boundary_slopes,
    correction_terms,
    cs_norm,
    entry_properties_check,
    is_admissible,
    lambda_prime,
    lambda_torus_surgery,
    lambda_twist_surgery,
    norm_degree_oracle,
    rep_symbolic,
    riley_polynomial,
    seminorm,
    trace_polynomial,
    twist_word,
)

M, T = sympy.symbols("m t")
SYM = {
    "x": sympy.Matrix([[M, 1], [0, 1 / M]]),
    "y": sympy.Matrix([[M, 0], [T, 1 / M]]),
}
SYM["X"] = sympy.Matrix([[1 / M, -1], [0, M]])
SYM["Y"] = sympy.Matrix([[1 / M, 0], [-T, M]])


def sym_word(word):
    out = sympy.eye(2)
    for c in word.letters:
        out = out * SYM[c]
    return out


def to_sympy(p: LaurentPoly):
    return sum(c * M**i * T**j for (i, j), c in p.terms.items())


xis = st.integers(1, 12)


@st.composite
def slopes(draw, max_p=30, max_q=8):
    q = draw(st.integers(0, max_q))
    if q == 0:
        return Slope(1, 0)
    p = draw(st.integers(-max_p, max_p).filter(lambda v: gcd(v, q) == 1))
    return Slope(p, q)


# -- words and representations ------------------------------------------------------


def test_words():
    assert str(twist_word(TwistKnot(1))[0]) == "yx"
    assert str(twist_word(TwistKnot(2))[0]) == "yx^-1y^-1x"
    assert str(twist_word(TwistKnot(3))[0]) == "yxy^-1x^-1yx"


@pytest.mark.parametrize("xi", range(1, 11))
def test_word_recursion_and_longitude(xi):
    w, wstar, lon = twist_word(TwistKnot(xi))
    w2, _, _ = twist_word(TwistKnot(xi + 2))
    prefix = WordSpec(tuple("yXYx")) if xi % 2 == 0 else WordSpec(tuple("yxYX"))
    assert w2 == prefix + w
    assert wstar.letters == w.letters[::-1]
    assert lon == (w + wstar if xi % 2 == 0 else WordSpec(tuple("XXXX")) + w + wstar)


def test_rep_symbolic_examples():
    m, t = LaurentPoly.m, LaurentPoly.t
    x = rep_symbolic(WordSpec(("x",)))
    assert x.entries() == (m(1), LaurentPoly.constant(1), LaurentPoly(), m(-1))
    yx = rep_symbolic(WordSpec(("y", "x")))
    assert yx.entries() == (m(2), m(1), t() * m(1), t() + m(-2))


@pytest.mark.parametrize("xi", [1, 2, 3, 4, 5])
def test_rep_symbolic_matches_sympy(xi):
    assert sympy.expand(SYM["x"] * SYM["X"] - sympy.eye(2)) == sympy.zeros(2)
    assert sympy.expand(SYM["y"] * SYM["Y"] - sympy.eye(2)) == sympy.zeros(2)
    for word in twist_word(TwistKnot(xi)):
        ours = rep_symbolic(word)
        ref = sym_word(word)
        for e, r in zip(ours.entries(), ref):
            assert sympy.expand(to_sympy(e) - r) == 0
        assert ours.det() == LaurentPoly.constant(1)


@pytest.mark.parametrize("xi", range(1, 9))
def test_longitude_commutes_with_meridian(xi):
    _, _, lon = twist_word(TwistKnot(xi))
    r = riley_polynomial(TwistKnot(xi)).cleared
    m0 = 0.7 + 0.9j
    coeffs = [c(m0) for c in r.as_t_poly()]
    t0 = np.roots(coeffs[::-1])[0]
    x = np.array([[m0, 1], [0, 1 / m0]])
    y = np.array([[m0, 0], [t0, 1 / m0]])
    g = {"x": x, "X": np.linalg.inv(x), "y": y, "Y": np.linalg.inv(y)}
    L = np.eye(2, dtype=complex)
    for c in lon.letters:
        L = L @ g[c]
    assert np.abs(L @ x - x @ L).max() < 1e-6 * (1 + np.abs(L).max())


# -- defining polynomial ----------------------------------------------------------------


def test_riley_trefoil():
    r = riley_polynomial(TwistKnot(1))
    assert r.cleared == LaurentPoly({(4, 0): 1, (2, 1): 1, (2, 0): -1, (0, 0): 1})
    assert r.mu_shift == -2


@pytest.mark.parametrize("xi", range(1, 13))
def test_riley_reduces_to_corner_entry_at_unit_meridian(xi):
    r = riley_polynomial(TwistKnot(xi))
    d = rep_symbolic(twist_word(TwistKnot(xi))[0]).d
    for mu in (1, -1):
        ours = r.laurent().specialize_m(mu)
        ref = d.specialize_m(mu)
        assert ours == ref or ours == -ref


@pytest.mark.parametrize("xi", range(1, 13))
def test_riley_symmetry_and_degree(xi):
    r = riley_polynomial(TwistKnot(xi))
    assert r.is_mu_symmetric()
    assert r.degree_t() == xi


def test_corner_entry_alone_misses_the_relation():
    # d = 0 alone (t = -m^-2 for the trefoil) does not satisfy x w = w y
    m0 = 0.8 + 0.6j
    t0 = -1 / m0**2
    x = np.array([[m0, 1], [0, 1 / m0]])
    y = np.array([[m0, 0], [t0, 1 / m0]])
    w = y @ x
    assert np.abs(x @ w - w @ y).max() > 1e-3


def test_figure_eight_riley_not_identically_zero_at_t0():
    r = riley_polynomial(TwistKnot(2)).cleared
    assert any(c for (i, j), c in r.terms.items() if j == 0)


# -- entry identities -----------------------------------------------------------------


@pytest.mark.parametrize("xi", range(1, 13))
def test_entry_properties_plus_one(xi):
    assert entry_properties_check(TwistKnot(xi), 1).passed()


@pytest.mark.parametrize("xi", range(1, 13))
def test_entry_properties_minus_one(xi):
    rep = entry_properties_check(TwistKnot(xi), -1)
    assert rep.passed(("i", "ii", "iii"))
    name = "iv" if xi % 2 == 0 else "v"
    assert rep.results[name] is False
    assert rep.results[name + "_opposite"] is True


def test_entry_properties_reject_other_mu():
    with pytest.raises(DomainError):
        entry_properties_check(TwistKnot(1), 2)


# -- Alexander polynomial, slopes, admissibility ----------------------------------------


def test_alexander_examples():
    assert alexander_poly(TwistKnot(1)) == IntPoly1((2, -2, 2))
    assert alexander_poly(TwistKnot(2)) == IntPoly1((2, -6, 2))
    assert alexander_poly(TwistKnot(3)) == IntPoly1((4, -6, 4))
    roots = np.roots([2, -2, 2])
    assert np.allclose(roots**6, 1)


def test_boundary_slopes():
    assert boundary_slopes(TwistKnot(1)) == ([0, 6], [6])
    assert boundary_slopes(TwistKnot(2)) == ([-4, 0, 4], [-4, 4])
    assert sorted(boundary_slopes(TwistKnot(5))[1]) == [0, 4, 14]
    assert sorted(boundary_slopes(TwistKnot(6))[1]) == [-4, 0, 12]


def test_admissibility_examples():
    r = is_admissible(TwistKnot(1), Slope(12, 1))
    assert not r.admissible and r.alexander_obstruction and not r.strict_boundary
    r = is_admissible(TwistKnot(2), Slope(4, 1))
    assert not r.admissible and r.strict_boundary
    assert is_admissible(TwistKnot(3), Slope(5, 1)).admissible
    assert not is_admissible(TwistKnot(1), Slope(6, 1)).admissible
    assert is_admissible(TwistKnot(1), Slope(0, 1)).admissible
    assert not is_admissible(TwistKnot(1), Slope(-24, 5)).admissible


def test_slope_normalization():
    assert Slope(-3, -2) == Slope(3, 2)
    assert Slope(-1, 0) == Slope(1, 0)
    assert Slope.parse("-5/3") == Slope(-5, 3)
    assert Slope.parse("7") == Slope(7, 1)
    for bad in ((2, 4), (2, 0), (0, 0)):
        with pytest.raises(DomainError):
            Slope(*bad)
    with pytest.raises(DomainError):
        Slope.parse("x/2")


# -- norms and surgery formulas -------------------------------------------------------


def test_norm_examples():
    assert cs_norm(TwistKnot(2), Slope(1, 0)) == 4
    assert cs_norm(TwistKnot(2), Slope(-1, 1)) == 16
    assert cs_norm(TwistKnot(1), Slope(1, 1)) == 10


def test_trefoil_is_odd_formula_at_xi_one():
    spec = seminorm(TwistKnot(1))
    for p in range(-20, 21):
        for q in range(0, 5):
            if gcd(p, q) == 1 and (q or p == 1):
                s = Slope(p, q)
                odd = 2 * abs(6 * q - p)
                assert spec.evaluate(s) == odd


def test_seminorm_rejects_odd_weights():
    with pytest.raises(ValueError):
        SeminormSpec((((0, 1), 3),))


@given(xis, slopes(), st.integers(-5, 5))
def test_norm_homogeneous(xi, s, k):
    spec = seminorm(TwistKnot(xi))
    value = sum(a * abs(u * k * s.q - v * k * s.p) for (u, v), a in spec.terms)
    assert value == abs(k) * cs_norm(TwistKnot(xi), s)


@given(xis, slopes(), slopes())
def test_norm_triangle_inequality(xi, s1, s2):
    spec = seminorm(TwistKnot(xi))
    p, q = s1.p + s2.p, s1.q + s2.q
    total = sum(a * abs(u * q - v * p) for (u, v), a in spec.terms)
    assert total <= cs_norm(TwistKnot(xi), s1) + cs_norm(TwistKnot(xi), s2)


@given(st.integers(2, 12), slopes())
def test_norm_definite_beyond_trefoil(xi, s):
    assert cs_norm(TwistKnot(xi), s) > 0


def test_corrections():
    assert correction_terms(TwistKnot(1)) == (0, Fraction(1, 2))
    assert correction_terms(TwistKnot(2)) == (0, 1)
    for xi in range(1, 13):
        assert Fraction(cs_norm(TwistKnot(xi), Slope(1, 0)), 4) == correction_terms(TwistKnot(xi))[1]


def test_surgery_examples():
    assert lambda_twist_surgery(TwistKnot(3), Slope(1, 1)) == 5 == lambda_seifert((2, 3, 11))
    assert lambda_twist_surgery(TwistKnot(2), Slope(-1, 1)) == 3 == lambda_seifert((2, 3, 7))
    assert lambda_twist_surgery(TwistKnot(1), Slope(6, 1)) == 0
    assert lambda_twist_surgery(TwistKnot(1), Slope(12, 1)) == 1
    assert lambda_twist_surgery(TwistKnot(1), Slope(1, 1)) == 2


def test_strict_boundary_slope_rejected():
    with pytest.raises(DomainError):
        lambda_twist_surgery(TwistKnot(2), Slope(4, 1))
    with pytest.raises(DomainError):
        lambda_twist_surgery(TwistKnot(5), Slope(14, 1))


@given(xis, slopes())
@settings(max_examples=300)
def test_surgery_values_are_non_negative_integers(xi, s):
    k = TwistKnot(xi)
    if not is_admissible(k, s).admissible and xi > 1:
        return
    lam = lambda_twist_surgery(k, s)
    assert lam >= 0 and lam.denominator == 1


@pytest.mark.parametrize("xi", range(1, 13))
def test_meridian_surgery_is_trivial(xi):
    assert lambda_twist_surgery(TwistKnot(xi), Slope(1, 0)) == 0


@pytest.mark.parametrize("k", range(1, 11))
def test_seifert_cross_identities(k):
    assert lambda_twist_surgery(TwistKnot(2 * k - 1), Slope(1, 1)) == lambda_seifert((2, 3, 6 * k - 1))
    assert lambda_twist_surgery(TwistKnot(2 * k), Slope(-1, 1)) == lambda_seifert((2, 3, 6 * k + 1))


def test_torus_surgery():
    assert lambda_torus_surgery(2, 3, 1) == 2
    assert lambda_torus_surgery(2, 3, 2) == 5
    assert lambda_torus_surgery(3, 4, 1) == 15
    with pytest.raises(DomainError):
        lambda_torus_surgery(2, 4, 1)
    with pytest.raises(DomainError):
        lambda_torus_surgery(2, 3, 0)


def test_lambda_prime():
    assert lambda_prime(TorusKnot(2, 3)) == 3
    assert lambda_prime(TwistKnot(2)) == 4
    assert lambda_prime(TwistKnot(3)) == 7
    with pytest.raises(TypeError):
        lambda_prime("trefoil")


# -- trace polynomials and the oracle -------------------------------------------------


def test_trace_polynomial_meridian():
    tp = trace_polynomial(TwistKnot(1), Slope(1, 0))
    assert tp.cleared == LaurentPoly({(2, 0): 1, (1, 0): -2, (0, 0): 1})
    assert tp.mu_shift == -1


@pytest.mark.parametrize("xi", range(1, 6))
@pytest.mark.parametrize("s", [Slope(1, 0), Slope(0, 1), Slope(3, 2), Slope(-5, 1)])
def test_trace_polynomial_symmetric(xi, s):
    assert trace_polynomial(TwistKnot(xi), s).is_mu_symmetric()


def test_trace_polynomial_caps():
    with pytest.raises(SizeCapError):
        trace_polynomial(TwistKnot(13), Slope(1, 1))
    with pytest.raises(SizeCapError):
        trace_polynomial(TwistKnot(1), Slope(21, 1))
    with pytest.raises(SizeCapError):
        norm_degree_oracle(TwistKnot(1), Slope(1, 21))


def test_oracle_examples():
    assert norm_degree_oracle(TwistKnot(1), Slope(1, 0)) == 2
    assert norm_degree_oracle(TwistKnot(1), Slope(1, 1)) == 10
    assert norm_degree_oracle(TwistKnot(2), Slope(1, 0)) == 4
    assert norm_degree_oracle(TwistKnot(2), Slope(0, 1)) == 16


def test_oracle_needs_three_trials():
    with pytest.raises(ValueError):
        norm_degree_oracle(TwistKnot(1), Slope(1, 1), trials=2)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_oracle_seed_independent(seed):
    for s in (Slope(5, 2), Slope(-3, 1), Slope(1, 3)):
        for xi in (1, 2, 3, 4):
            assert norm_degree_oracle(TwistKnot(xi), s, seed=seed) == cs_norm(TwistKnot(xi), s)


def test_twist_knot_validation():
    with pytest.raises(DomainError):
        TwistKnot(0)
    with pytest.raises(DomainError):
        TorusKnot(2, 4)
