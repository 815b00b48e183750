from fractions import Fraction

import pytest
from hypothesis import given

from bundledelta.blowup import BlowupClass, eval_power
from bundledelta.delta import s_exceptional, s_fiber
from bundledelta.divisors import DivisorClass, NotAmpleError, eval_top_power
from bundledelta.volumes import (
    Axis,
    chamber_profile,
    evaluate_profile,
    integral_volume,
    tau,
    volume_H_minus_tF,
    volume_L_minus_tD,
    volume_L_minus_tF,
    zariski_decompose,
)

from conftest import instances, one_step_bundles, semistable_bundles, small_rationals

L11 = DivisorClass(1, 1)


def test_zariski_alpha(demo):
    assert zariski_decompose(demo.mu_min, demo).alpha == 0
    assert zariski_decompose(demo.mu_max, demo).alpha == 1
    assert zariski_decompose(Fraction(1, 2), demo).alpha == Fraction(1, 2)
    with pytest.raises(ValueError):
        zariski_decompose(2, demo)


def test_volume_H_examples(demo):
    assert volume_H_minus_tF(Fraction(1, 2), demo) == Fraction(1, 4)
    assert volume_H_minus_tF(-1, demo) == 3
    assert volume_H_minus_tF(1, demo) == 0


@given(one_step_bundles())
def test_volume_H_vanishes_at_mu_max(b):
    assert volume_H_minus_tF(b.mu_max, b) == 0
    # the positive part's top power computed through the blowup agrees
    assert eval_power(zariski_decompose(b.mu_max, b).positive, b) == 0


def test_volume_L_examples(demo):
    assert volume_L_minus_tF(L11, 0, demo) == 3
    assert volume_L_minus_tF(L11, Fraction(3, 2), demo) == Fraction(1, 4)
    assert volume_L_minus_tF(L11, 2, demo) == 0
    assert volume_L_minus_tD(L11, 0, demo) == 3
    assert volume_L_minus_tD(L11, 1, demo) == eval_power(BlowupClass.of(1, 1, -1), demo) == 0
    assert volume_L_minus_tD(L11, 2, demo) == 0


def test_non_ample_rejected(demo):
    with pytest.raises(NotAmpleError):
        volume_L_minus_tF(DivisorClass(1, -2), 0, demo)


def test_profiles_demo(demo):
    f = chamber_profile(L11, Axis.F, demo)
    assert [ch.chamber for ch in f] == [(0, 1), (1, 2)]
    assert f[0].coefficients == (3, -2)
    assert f[1].coefficients == (4, -4, 1)
    d = chamber_profile(L11, Axis.D, demo)
    assert len(d) == 1 and d[0].chamber == (0, 1)
    assert d[0].coefficients == (3, -2, -1)


def test_profile_semistable_single_chamber():
    from bundledelta.bundle import BundleData

    b = BundleData(0, 3, 3, "polystable")
    L = DivisorClass(2, 1)
    prof = chamber_profile(L, Axis.F, b)
    assert len(prof) == 1 and prof[0].chamber == (0, 3)
    # n a^(n-1) (a mu + b - t)
    assert prof[0].coefficients == (36, -12)


def test_integrals(demo):
    from bundledelta.bundle import BundleData

    assert integral_volume(L11, Axis.F, demo) == Fraction(7, 3)
    assert integral_volume(L11, Axis.D, demo) == Fraction(5, 3)
    assert integral_volume(L11, Axis.F, BundleData(1, 2, 0, "polystable")) == 1


def test_evaluate_profile_reports_chamber(demo):
    prof = chamber_profile(L11, Axis.F, demo)
    assert evaluate_profile(prof, Fraction(1, 2)) == (2, 0)
    assert evaluate_profile(prof, Fraction(3, 2)) == (Fraction(1, 4), 1)
    assert evaluate_profile(prof, 5)[0] == 0


@given(instances())
def test_profile_matches_pointwise_and_is_continuous(inst):
    b, L = inst
    for axis in (Axis.F, Axis.D):
        prof = chamber_profile(L, axis, b)
        for left, right in zip(prof, prof[1:]):
            assert left.hi == right.lo
            assert left(left.hi) == right(right.lo)
        assert prof[-1](tau(L, axis, b)) == 0
        assert prof[0](0) == eval_top_power(L, b)
        volume = volume_L_minus_tF if axis is Axis.F else volume_L_minus_tD
        top = tau(L, axis, b)
        for k in range(7):
            t = top * Fraction(k, 6)
            assert evaluate_profile(prof, t)[0] == volume(L, t, b)


@given(instances())
def test_monotone_non_increasing_on_grid(inst):
    b, L = inst
    for axis, volume in ((Axis.F, volume_L_minus_tF), (Axis.D, volume_L_minus_tD)):
        top = tau(L, axis, b)
        vals = [volume(L, top * Fraction(k, 49), b) for k in range(50)]
        assert all(x >= y for x, y in zip(vals, vals[1:]))
        assert vals[-1] == 0 and vals[0] > 0


@given(instances(), small_rationals(1, 10, 5))
def test_homogeneity(inst, lam):
    b, L = inst
    n = b.rank
    t = tau(L, Axis.F, b) / 3
    assert volume_L_minus_tF(L.scale(lam), lam * t, b) == lam ** n * volume_L_minus_tF(L, t, b)
    assert volume_L_minus_tD(L.scale(lam), lam * t / 2, b) == lam ** n * volume_L_minus_tD(L, t / 2, b)
    assert integral_volume(L.scale(lam), Axis.F, b) == lam ** (n + 1) * integral_volume(L, Axis.F, b)


@given(instances())
def test_integrals_match_closed_forms(inst):
    b, L = inst
    vol = eval_top_power(L, b)
    assert integral_volume(L, Axis.F, b) == s_fiber(L, b) * vol
    assert integral_volume(L, Axis.D, b) == s_exceptional(L, b) * vol


@given(semistable_bundles())
def test_semistable_integrals(b):
    L = DivisorClass(3, -3 * b.mu + 2)
    vol = eval_top_power(L, b)
    assert integral_volume(L, Axis.F, b) == s_fiber(L, b) * vol
    assert integral_volume(L, Axis.D, b) == s_exceptional(L, b) * vol
