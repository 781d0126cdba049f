"""Commutative family c_1..c_n and its lowest weight characters."""

from fractions import Fraction

import pytest

from hdcalc.ratfield import Poly, RatFun
from hdcalc.rmatrix import chi, complete_symmetric
from hdcalc.potential import NotInW
from hdcalc.central import (central_family, verify_central, character_map,
                            center_basis_note, rho_for)
from hdcalc.diffring import commutator


def Hpot(n, L):
    out = RatFun.zero(n)
    for j in range(1, n + 1):
        out = out + RatFun.from_poly(Poly.var(n, j) ** (L + n - 1)) / chi(n, j)
    return out


def test_rho_for_h1():
    # Delta_j rho(t) = prod_{m != j}(1 + h_m t); for f = H_1 the solution is
    # rho(t) = sum_L e_L(h) t^{L-1} shifted one slot down... just freeze n=2
    n = 2
    rho = rho_for(Hpot(n, 1))
    e1 = RatFun.from_poly(complete_symmetric(n, 1))
    h1h2 = RatFun.from_poly(Poly(n, {(1, 1): Fraction(1)}))
    assert rho.coeff(0) == e1
    assert rho.coeff(1) == h1h2


def test_family_h1_frozen():
    n = 2
    fam = central_family(Hpot(n, 1))
    spec = fam.spec
    e1 = RatFun.from_poly(complete_symmetric(n, 1))
    c1 = spec.gamma(1) + spec.gamma(2) - spec.coeff(e1)
    assert fam.elements[0] == c1
    c2 = spec.gamma(1).scale(RatFun.var(n, 2)) \
        + spec.gamma(2).scale(RatFun.var(n, 1)) \
        - spec.coeff(RatFun.from_poly(Poly(n, {(1, 1): Fraction(1)})))
    assert fam.elements[1] == c2


def test_central_elements_commute_with_generators():
    for n, L in ((1, 1), (2, 2)):
        fam = central_family(Hpot(n, L))
        assert all(ok for _, ok in verify_central(fam))


def test_central_for_pole_potential():
    n = 2
    fam = central_family(RatFun.one(n) / chi(n, 1))
    assert all(ok for _, ok in verify_central(fam))


def test_family_elements_commute_mutually():
    n = 2
    fam = central_family(Hpot(n, 2))
    spec = fam.spec
    for a in range(n):
        for b in range(a + 1, n):
            assert commutator(spec, fam.elements[a], fam.elements[b]).is_zero()


def test_character_map_matches_family_definition():
    # v_k must satisfy the same vacuum evaluation the elements do: the
    # coefficient of the identity term of c_k after projecting d_i x^i to
    # its vacuum scalar
    n = 2
    fam = central_family(Hpot(n, 1))
    chars = character_map(fam)
    pt = (Fraction(7, 3), Fraction(1, 5))
    got = [v.evaluate(pt) for v in chars]
    assert got[0] != got[1]  # nondegenerate at a generic point
    assert all(isinstance(x, Fraction) for x in got)


def test_center_basis_rank_full():
    for n in (1, 2, 3):
        fam = central_family(Hpot(n, 1))
        rank, size = center_basis_note(fam)
        assert rank == size == n


def test_rho_rejects_potentials_outside_w():
    with pytest.raises(NotInW):
        rho_for(RatFun.from_poly(Poly.var(2, 1) ** 2))
