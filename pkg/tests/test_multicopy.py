"""Several commuting copies: mixed normal forms and flatness of sigma arrays."""

import random
from fractions import Fraction

from hdcalc.ratfield import Poly, RatFun
from hdcalc.rmatrix import chi
from hdcalc.potential import sigma_from_potential
from hdcalc.diffring import RingSpec, normal_form
from hdcalc.multicopy import (SigmaArray, constant_profile, mixed_normal_form,
                              vcopy_normal_form, flatness_check,
                              ambiguity_oracle)


def one_copy_sigma(n, f):
    return SigmaArray.from_one_copy(sigma_from_potential(f, n))


def as_exponents(n, key):
    a = [0] * n
    b = [0] * n
    for sp, i, _c in key:
        (b if sp == 'd' else a)[i - 1] += 1
    return tuple(b), tuple(a)


def test_single_copy_matches_ring_normal_form():
    n = 2
    sigma = (RatFun.one(n), RatFun.one(n))
    spec = RingSpec(n, sigma)
    s = SigmaArray.from_one_copy(sigma)
    words = [
        [('x', 1, 1), ('d', 1, 1)],
        [('x', 1, 1), ('x', 2, 1), ('d', 2, 1)],
        [('d', 2, 1), ('x', 1, 1), ('d', 1, 1)],
    ]
    for w in words:
        got = mixed_normal_form(n, s, w)
        ring = normal_form(spec, [(t[0], t[1]) for t in w])
        assert {as_exponents(n, k): v for k, v in got.items()} == ring.terms


def test_x_sector_confluent_without_sigma():
    rng = random.Random(9)
    n, nc = 2, 2
    for _ in range(12):
        w = [('x', rng.randrange(1, n + 1), rng.randrange(1, nc + 1))
             for _ in range(4)]
        left = vcopy_normal_form(n, nc, w, "left")
        right = vcopy_normal_form(n, nc, w, "right")
        assert left == right


def test_cross_copy_commutation_quadratic():
    # moving copy 2 past copy 1 and back is the identity (R^2 = Id aspect)
    n, nc = 2, 2
    for i in (1, 2):
        for j in (1, 2):
            w = [('x', i, 2), ('x', j, 1)]
            nf = vcopy_normal_form(n, nc, w, "left")
            back = {}
            for key, c in nf.items():
                for k2, c2 in vcopy_normal_form(n, nc, list(key), "left").items():
                    back[k2] = back.get(k2, RatFun.zero(n)) + c * c2
            back = {k: v for k, v in back.items() if not v.is_zero()}
            # original word in canonical order
            want = vcopy_normal_form(n, nc, w, "left")
            assert back == want


def test_constant_sigma_arrays_are_flat():
    s = SigmaArray.constant(2, 2, 2, {(1, 1): 1, (1, 2): 2,
                                      (2, 1): 0, (2, 2): Fraction(5, 3)})
    rep = flatness_check(2, 2, 2, s)
    assert rep.passed
    orep = ambiguity_oracle(2, 2, 2, s, budget=40, seed=1)
    assert orep.passed


def test_weight_dependent_entries_fail():
    n = 2
    ent = {(i, 1, 1): RatFun.var(n, i) for i in (1, 2)}
    s = SigmaArray(n, 2, 2, ent)
    rep = flatness_check(n, 2, 2, s)
    assert not rep.passed
    labels = " ".join(rep.failures)
    assert "ysy1" in labels or "ysy2" in labels
    orep = ambiguity_oracle(n, 2, 2, s, budget=60, seed=2)
    assert not orep.passed


def test_copy_dependent_constants_fail_sigma_system():
    # sigma_{i,1,1} = i is constant in h but depends on the ring index
    n = 2
    ent = {(i, 1, 1): RatFun.const(n, i) for i in (1, 2)}
    s = SigmaArray(n, 1, 1, ent)
    rep = flatness_check(n, 1, 1, s)
    assert not rep.passed
    assert any("eqsigib" in lbl for lbl in rep.failures)


def test_one_copy_rational_sigma_flat():
    n = 2
    s = one_copy_sigma(n, RatFun.one(n) / chi(n, 1))
    assert flatness_check(n, 1, 1, s).passed
    # the same entries used across two copies stop being flat
    ent = {(i, a, b): s.get(i, 1, 1)
           for i in (1, 2) for a in (1, 2) for b in (1, 2)}
    s2 = SigmaArray(n, 2, 2, ent)
    assert not flatness_check(n, 2, 2, s2).passed


def test_constant_profile():
    s = SigmaArray.constant(2, 2, 2, {(1, 1): 1, (1, 2): 2,
                                      (2, 1): 2, (2, 2): 4})
    assert constant_profile(s) == (1, (1, 0))
    s = SigmaArray.constant(2, 2, 2, {(1, 1): 1, (1, 2): 0,
                                      (2, 1): 0, (2, 2): 1})
    assert constant_profile(s) == (2, (1, 1))
    ent = {(1, 1, 1): RatFun.var(2, 1)}
    assert constant_profile(SigmaArray(2, 1, 1, ent)) is None


def test_sigma_array_json_roundtrip():
    n = 2
    ent = {(1, 1, 2): RatFun.inverse_diff(n, 1, 2),
           (2, 2, 1): RatFun.const(n, Fraction(-3, 7))}
    s = SigmaArray(n, 2, 2, ent)
    back = SigmaArray.from_json(s.to_json())
    assert (back.n, back.nx, back.nd) == (s.n, s.nx, s.nd)
    assert back.entries == s.entries


def test_family_and_get_defaults():
    s = SigmaArray.constant(3, 1, 1, 4)
    fam = s.family(1, 1)
    assert all(f == RatFun.const(3, 4) for f in fam)
    assert s.get(1, 1, 1) == RatFun.const(3, 4)
    empty = SigmaArray(3, 1, 1)
    assert empty.get(2, 1, 1).is_zero()
