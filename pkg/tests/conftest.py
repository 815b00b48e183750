import os
from fractions import Fraction
from math import gcd

import hypothesis
import pytest
from hypothesis import strategies as st

from bundledelta.bundle import BundleData, Stability
from bundledelta.divisors import DivisorClass

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("ci", deadline=None, max_examples=200)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def demo():
    """n = 2, r = 1, mu_max = 1, mu_min = 0 on P^1."""
    return BundleData(genus=0, rank=2, degree=1, stability="unstable_one_step", hn_step=(1, 1))


@pytest.fixture
def elliptic():
    """Rank 2, degree 0, strictly semistable on an elliptic curve."""
    return BundleData(genus=1, rank=2, degree=0, stability="strictly_semistable", subbundle_rank=1)


def small_rationals(lo=-20, hi=20, max_den=20):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


@st.composite
def one_step_bundles(draw, n_max=6):
    n = draw(st.integers(2, n_max))
    r = draw(st.integers(1, n - 1))
    d1 = draw(st.integers(-15, 15))
    d2 = draw(st.integers(-15, 15).filter(lambda d2: d1 * (n - r) > d2 * r))
    return BundleData(
        genus=draw(st.integers(0, 3)),
        rank=n,
        degree=d1 + d2,
        stability=Stability.UNSTABLE_ONE_STEP,
        hn_step=(r, d1),
    )


@st.composite
def semistable_bundles(draw, n_max=6):
    n = draw(st.integers(2, n_max))
    r = draw(st.integers(1, n - 1))
    # degree divisible by n / gcd(n, r) so that a rank-r subbundle of slope mu exists
    unit = n // gcd(n, r)
    d = unit * draw(st.integers(-6, 6))
    return BundleData(
        genus=draw(st.integers(0, 3)),
        rank=n,
        degree=d,
        stability=Stability.STRICTLY_SEMISTABLE,
        subbundle_rank=r,
    )


@st.composite
def ample_classes(draw, bundle):
    a = draw(small_rationals(1, 20))
    gap = draw(small_rationals(1, 20))
    return DivisorClass(a, -a * bundle.mu_min + gap)


@st.composite
def instances(draw, bundles=None):
    b = draw(bundles if bundles is not None else one_step_bundles())
    return b, draw(ample_classes(b))
