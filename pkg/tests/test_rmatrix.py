"""R-matrix components, skew inverse, symmetric polynomial helpers."""

from fractions import Fraction

import sympy

from hdcalc.ratfield import Poly, RatFun, eps_vec
from hdcalc.rmatrix import (r_component, psi_component, chi, phi, phi_inv,
                            q_plus, q_minus, elementary_symmetric,
                            complete_symmetric, CheckReport, verify_dybe,
                            verify_r_squared, verify_ice, verify_skew_inverse,
                            verify_q_identity, verify_chi_identity)


def test_r_components_closed_form():
    n = 2
    h12 = RatFun.from_poly(Poly.diff(n, 1, 2))
    assert r_component(n, 1, 2, 1, 2) == RatFun.inverse_diff(n, 1, 2)
    assert r_component(n, 1, 2, 2, 1) == (h12 * h12 - 1) / (h12 * h12)
    assert r_component(n, 2, 1, 2, 1) == -RatFun.inverse_diff(n, 1, 2)
    assert r_component(n, 2, 1, 1, 2) == RatFun.one(n)
    assert r_component(n, 1, 1, 1, 1) == RatFun.one(n)
    # ice rule: out-pair must be a permutation of the in-pair
    assert r_component(n, 1, 1, 1, 2).is_zero()
    assert r_component(3, 1, 2, 1, 3).is_zero()


def test_r_values_at_a_point():
    pt = (Fraction(3), Fraction(1))
    assert r_component(2, 1, 2, 1, 2).evaluate(pt) == Fraction(1, 2)
    assert r_component(2, 1, 2, 2, 1).evaluate(pt) == Fraction(3, 4)


def test_psi_diagonal_value():
    # Psi^{11}_{11} = (h12^2 - 1)/h12^2 at n=2
    n = 2
    h12 = RatFun.from_poly(Poly.diff(n, 1, 2))
    assert psi_component(n, 1, 1, 1, 1) == (h12 * h12 - 1) / (h12 * h12)
    assert psi_component(n, 1, 2, 2, 1) == RatFun.one(n)


def test_r_shift_invariance_by_constant_vector():
    # every component depends on the h's only through differences
    for (i, j, k, l) in [(1, 2, 1, 2), (1, 2, 2, 1), (2, 1, 1, 2), (1, 1, 1, 1)]:
        f = r_component(2, i, j, k, l)
        assert f.shift((5, 5)) == f


def test_chi_phi_q_relations():
    n = 3
    for i in range(1, n + 1):
        assert phi(n, i) * phi_inv(n, i) == RatFun.one(n)
        assert q_plus(n, i) == chi(n, i).shift(eps_vec(n, i)) / chi(n, i)
        assert q_minus(n, i) == chi(n, i).shift(eps_vec(n, i, -1)) / chi(n, i)


def test_elementary_symmetric_against_sympy():
    hs = sympy.symbols("h1:4")
    for L in range(4):
        p = elementary_symmetric(3, L)
        want = sum(sympy.prod(c) for c in sympy.utilities.iterables.subsets(hs, L))
        got = sum(sympy.Rational(v) * sympy.prod(h ** e for h, e in zip(hs, ev))
                  for ev, v in p.terms.items())
        assert sympy.expand(got - want) == 0
    # skip variable: e_2 without h2
    p = elementary_symmetric(3, 2, skip=2)
    assert p.terms == {(1, 0, 1): Fraction(1)}


def test_complete_symmetric_small_cases():
    assert complete_symmetric(2, 2).terms == {
        (2, 0): Fraction(1), (1, 1): Fraction(1), (0, 2): Fraction(1)}
    assert complete_symmetric(1, 5).terms == {(5,): Fraction(1)}
    assert complete_symmetric(3, 0).terms == {(0, 0, 0): Fraction(1)}


def test_newton_style_identity():
    # sum_{k=0..L} (-1)^k e_k H_{L-k} = 0 for L >= 1
    n = 3
    for L in range(1, 5):
        acc = Poly.zero(n)
        for k in range(L + 1):
            term = elementary_symmetric(n, k) * complete_symmetric(n, L - k)
            acc = acc + term.scale(Fraction((-1) ** k))
        assert acc.is_zero()


def test_chi_partial_fraction_identity_small():
    # sum_j h_j^L/chi_j vanishes for L <= n-2 and gives H_{L-n+1} above that
    assert verify_chi_identity(2, 3)
    assert verify_chi_identity(3, 0)
    assert verify_chi_identity(3, 1)
    assert verify_chi_identity(4, 2)
    assert verify_chi_identity(4, 6)


def test_identity_sweeps_n2():
    assert verify_dybe(2).passed
    assert verify_r_squared(2).passed
    assert verify_ice(2).passed
    assert verify_skew_inverse(2).passed
    assert verify_q_identity(2).passed


def test_checkreport_accounting():
    rep = CheckReport("demo", [("a", True), ("b", False), ("c", True)])
    assert not rep.passed
    assert rep.total == 3
    assert rep.failures == ["b"]
    assert rep.summary() == "demo: 2/3 pass"
