"""Nefness-based K-semistability test and the semistable/K-semistable dictionary."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import RationalLike, to_rational
from .bundle import BundleData, Stability
from .divisors import (
    ConePosition,
    DivisorClass,
    canonical_class,
    cone_position,
    is_nef,
    mixed_intersection,
    require_ample,
)


class SufficientTest(str, enum.Enum):
    PASSES = "passes"
    FAILS_FIRST_NEF = "fails_first_nef"
    FAILS_SECOND_NEF = "fails_second_nef"
    NOT_APPLICABLE = "not_applicable"


class Classification(str, enum.Enum):
    KSEMISTABLE_NOT_POLYSTABLE = "all_ample_ksemistable_not_polystable"
    KPOLYSTABLE = "all_ample_kpolystable"
    NONE_KSEMISTABLE = "none_ksemistable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class KVerdict:
    sufficient_test: SufficientTest
    classification: Classification
    witness_classes: Optional[tuple[DivisorClass, DivisorClass]]
    note: str = ""

    @property
    def passes(self) -> bool:
        return self.sufficient_test is SufficientTest.PASSES


def witness_classes(L: DivisorClass, delta: RationalLike, b: BundleData) -> tuple[DivisorClass, DivisorClass]:
    """delta L + K_X  and  (n K_X.L^(n-1)/L^n + delta) L - (n-1) K_X."""
    delta = to_rational(delta)
    n = b.rank
    K = canonical_class(b)
    Ln = mixed_intersection([L] * n, b)
    KLn1 = mixed_intersection([K] + [L] * (n - 1), b)
    first = L.scale(delta) + K
    second = L.scale(n * KLn1 / Ln + delta) - K.scale(n - 1)
    return first, second


def classify_polarizations(b: BundleData) -> Classification:
    """K-(semi/poly)stability of every ample class, read off the stability type of E.

    Stable and polystable E give K-polystable polarizations, semistable but not
    polystable E gives K-semistable but never K-polystable ones, and an
    unstable E admits no K-semistable polarization.
    """
    st = b.stability
    if st in (Stability.STABLE, Stability.POLYSTABLE):
        return Classification.KPOLYSTABLE
    if st is Stability.STRICTLY_SEMISTABLE:
        return Classification.KSEMISTABLE_NOT_POLYSTABLE
    if st is Stability.UNSTABLE_ONE_STEP:
        return Classification.NONE_KSEMISTABLE
    return Classification.UNKNOWN


def ksemistable_sufficient(L: DivisorClass, delta: Optional[RationalLike], b: BundleData) -> KVerdict:
    """Check the two nefness conditions with a certified lower bound ``delta``.

    Passing is sufficient for K-semistability of L, never necessary.  Witnesses
    on the nef boundary count as passes (the argument perturbs by epsilon L).
    """
    require_ample(L, b)
    cls = classify_polarizations(b)
    if delta is None:
        return KVerdict(SufficientTest.NOT_APPLICABLE, cls, None, "no delta lower bound supplied")
    first, second = witness_classes(L, delta, b)
    if not is_nef(first, b):
        return KVerdict(SufficientTest.FAILS_FIRST_NEF, cls, (first, second))
    if not is_nef(second, b):
        return KVerdict(SufficientTest.FAILS_SECOND_NEF, cls, (first, second))
    boundary = [
        name
        for name, w in (("first", first), ("second", second))
        if cone_position(w, b) is ConePosition.NEF_NOT_AMPLE
    ]
    note = f"{' and '.join(boundary)} witness on the nef boundary" if boundary else ""
    return KVerdict(SufficientTest.PASSES, cls, (first, second), note)


def min_passing_delta(L: DivisorClass, b: BundleData) -> Fraction:
    """Least delta for which both witness classes are nef.

    Each witness is affine in delta with slope vector L (ample), so every
    nefness inequality reads delta * positive + constant >= 0 and the passing
    set is a closed ray [min_passing_delta, oo).
    """
    require_ample(L, b)
    w1_0, w2_0 = witness_classes(L, 0, b)
    lo = b.mu_min
    x_rate, f_rate = L.xi, L.f + L.xi * lo  # both > 0 for ample L
    bounds = []
    for w in (w1_0, w2_0):
        bounds.append(-w.xi / x_rate)
        bounds.append(-(w.f + w.xi * lo) / f_rate)
    return max(bounds)
