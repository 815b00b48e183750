"""Expected vanishing orders and delta-invariant bounds in closed form.

Two test divisors are used: the fibre F (log discrepancy 1) and the
exceptional divisor D over P(E/E1) (log discrepancy r).  Together with the
Abban-Zhuang lower bound on a fibre they give

    min(1/S(L,F), s2) <= delta(X, L) <= min(1/S(L,F), s1)

for a one-step HN filtration, and the exact value
min(2/(a mu + b), n/a) for strictly semistable E.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import Poly, RationalLike, to_rational
from .bundle import BundleData, Stability
from .divisors import DivisorClass, require_ample


class Branch(str, enum.Enum):
    FIBER = "fiber"
    EXCEPTIONAL = "exceptional"
    PROJECTIVE_SPACE = "projective_space_branch"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class DeltaReport:
    S_F: Fraction
    lower: Fraction
    upper: Fraction
    exact: bool
    attaining_branch: Branch
    S_D: Optional[Fraction] = None
    s1: Optional[Fraction] = None
    s2: Optional[Fraction] = None
    fiber_upper: Optional[Fraction] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise AssertionError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact and self.lower != self.upper:
            raise AssertionError("exact report with distinct bounds")

    @property
    def value(self) -> Optional[Fraction]:
        return self.lower if self.exact else None


def _require_one_step(b: BundleData, what: str) -> None:
    if b.hn_length != 2:
        raise ValueError(f"{what} needs a one-step HN filtration; use delta_semistable for semistable E")


def fibre_numerator(a, bb, n, r, mu_max, mu_min):
    """Integral of Vol(L - tF) over [0, tau_F], divided by a^(n-1).

    Ring-generic: works for Fractions, Poly coefficients or sympy symbols.
    """
    mu = (r * mu_max + (n - r) * mu_min) / n
    return (
        n * (a * mu_min + bb) * (a * (2 * mu - mu_min) + bb) / 2
        + a * a * (mu_max - mu_min) ** 2 * r * (r + 1) / (2 * (n + 1))
    )


def fiber_closed_form(a, bb, n, r, mu_max, mu_min):
    """S(L, F) for a one-step filtration, as a rational function of its inputs."""
    mu = (r * mu_max + (n - r) * mu_min) / n
    return fibre_numerator(a, bb, n, r, mu_max, mu_min) / (n * (a * mu + bb))


def exceptional_closed_form(a, bb, n, r, mu_max, mu_min):
    """S(L, D) for a one-step filtration."""
    mu = (r * mu_max + (n - r) * mu_min) / n
    return a * r * ((r + 1) * (a * mu_max + bb) + (n - r) * (a * mu_min + bb)) / (
        n * (n + 1) * (a * mu + bb)
    )


def _fibre_numerator(a, bb, b: BundleData):
    return fibre_numerator(a, bb, b.rank, Fraction(b.hn_step.rank), b.mu_max, b.mu_min)


def s_fiber(L: DivisorClass, b: BundleData) -> Fraction:
    """S(L, F)."""
    require_ample(L, b)
    a, bb = L.xi, L.f
    if b.hn_length == 1:
        return (a * b.mu + bb) / 2
    return fiber_closed_form(a, bb, b.rank, Fraction(b.hn_step.rank), b.mu_max, b.mu_min)


def s_exceptional(L: DivisorClass, b: BundleData) -> Fraction:
    """S(L, D) for the exceptional divisor over P(E/E1) (or P(E/E') when semistable)."""
    require_ample(L, b)
    a, bb, n = L.xi, L.f, b.rank
    if b.hn_length == 2:
        return exceptional_closed_form(a, bb, n, Fraction(b.hn_step.rank), b.mu_max, b.mu_min)
    if b.subbundle_rank is None:
        raise ValueError(
            "no exceptional divisor: the bundle is stable or no slope-equal "
            "subbundle rank was declared (subbundle_rank)"
        )
    return Fraction(b.subbundle_rank) * a / n


def s1_displayed(L: DivisorClass, b: BundleData) -> Fraction:
    """A_X(D)/S(L, D) written out directly; kept to cross-check r / S(L, D)."""
    _require_one_step(b, "s1")
    a, bb, n, r = L.xi, L.f, b.rank, b.hn_step.rank
    return n * (n + 1) * (a * b.mu + bb) / (
        a * ((r + 1) * (a * b.mu_max + bb) + (n - r) * (a * b.mu_min + bb))
    )


def az_thresholds(L: DivisorClass, b: BundleData) -> tuple[Fraction, Fraction, Fraction]:
    """(s1, s2, fiber_upper).

    s1 = r / S(L, D); s2 and fiber_upper bracket the delta of the refinement
    of L on a fibre.
    """
    _require_one_step(b, "az_thresholds")
    require_ample(L, b)
    a, bb, n = L.xi, L.f, b.rank
    s1 = b.hn_step.rank / s_exceptional(L, b)
    s2 = n * (a * b.mu + bb) / (a * (a * b.mu_max + bb))
    fiber_upper = n * (a * b.mu + bb) / (a * (a * b.mu_min + bb))
    return s1, s2, fiber_upper


_STABLE_NOTE = (
    "E is stable: only min(2/(a mu + b), n/a) <= delta <= 2/(a mu + b) is known; "
    "equality is open unless the fibre term is the smaller one"
)


def delta_semistable(L: DivisorClass, b: BundleData) -> DeltaReport:
    """delta(X, L) for semistable E (HN length 1)."""
    if b.hn_length != 1:
        raise ValueError("delta_semistable needs a semistable bundle; use delta_bounds")
    require_ample(L, b)
    a, bb, n = L.xi, L.f, b.rank
    S_F = (a * b.mu + bb) / 2
    fibre = 1 / S_F
    proj = Fraction(n) / a
    S_D = s_exceptional(L, b) if b.subbundle_rank is not None else None
    s1 = b.subbundle_rank / S_D if S_D is not None else None
    common = dict(S_F=S_F, S_D=S_D, s1=s1, s2=proj, fiber_upper=proj)

    if fibre < proj:
        branch = Branch.FIBER
    elif proj < fibre:
        branch = Branch.PROJECTIVE_SPACE
    else:
        branch = Branch.INDETERMINATE
    lo = min(fibre, proj)

    strictly = b.stability is Stability.STRICTLY_SEMISTABLE or (
        b.stability is Stability.POLYSTABLE and b.subbundle_rank is not None
    )
    if strictly:
        return DeltaReport(lower=lo, upper=lo, exact=True, attaining_branch=branch, **common)
    exact = fibre <= proj
    note = _STABLE_NOTE
    if b.stability is Stability.POLYSTABLE:
        note += "; declare subbundle_rank if E has a proper stable summand"
    return DeltaReport(
        lower=lo,
        upper=fibre,
        exact=exact,
        attaining_branch=branch if exact else Branch.INDETERMINATE,
        note=note,
        **common,
    )


def delta_bounds(L: DivisorClass, b: BundleData) -> DeltaReport:
    """Bounds on delta(X, L) for a one-step HN filtration."""
    _require_one_step(b, "delta_bounds")
    require_ample(L, b)
    S_F = s_fiber(L, b)
    S_D = s_exceptional(L, b)
    s1, s2, fiber_upper = az_thresholds(L, b)
    inv = 1 / S_F
    lower, upper = min(inv, s2), min(inv, s1)
    exact = inv <= s2
    if exact:
        branch, note = Branch.FIBER, ""
    else:
        branch = Branch.INDETERMINATE
        note = "1/S(L,F) > s2: only bounds are available"
    return DeltaReport(
        S_F=S_F, S_D=S_D, s1=s1, s2=s2, fiber_upper=fiber_upper,
        lower=lower, upper=upper, exact=exact, attaining_branch=branch, note=note,
    )


def delta_report(L: DivisorClass, b: BundleData) -> DeltaReport:
    """Dispatch on HN length."""
    if b.hn_length == 1:
        return delta_semistable(L, b)
    return delta_bounds(L, b)


def _exactness_quadratic(a: Fraction, b: BundleData) -> Poly:
    # 1/S_F <= s2  <=>  fibre numerator(beta) - a (a mu_max + beta) >= 0,
    # a quadratic in beta with leading coefficient n/2
    beta = Poly.var()
    return _fibre_numerator(Poly.const(a), beta, b) - a * (a * b.mu_max + beta)


def _sqrt_upper(x: Fraction, bits: int = 96) -> tuple[Fraction, bool]:
    """A rational u >= sqrt(x) together with a flag telling whether u is exact."""
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq), True
    scale = 1 << bits
    # sqrt(p/q) = sqrt(p q) / q
    return Fraction(math.isqrt(p * q * scale * scale) + 1, q * scale), False


def b_exactness_threshold(a: RationalLike, b: BundleData) -> Fraction:
    """Sufficient-condition threshold b* for exactness of the fibre bound.

    For every b >= b* (with L = a xi + b f ample) one has 1/S(L, F) <= s2, so
    delta(X, L) = 1/S(L, F).  Returns -a mu_min when this holds on the whole
    ample range.  When the boundary root is irrational the result is a
    rational upper bound on it, within 2^-96 relative to the denominator.
    This says nothing about delta below b*.
    """
    a = to_rational(a)
    if a <= 0:
        raise ValueError("a must be positive")
    _require_one_step(b, "b_exactness_threshold")
    floor = -a * b.mu_min
    quad = _exactness_quadratic(a, b)
    c0, c1, c2 = (list(quad.coeffs) + [Fraction(0)] * 3)[:3]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return floor
    root, _ = _sqrt_upper(disc)
    upper_root = (-c1 + root) / (2 * c2)
    return max(floor, upper_root)


def limit_check_small_a(
    b_coeff: RationalLike, b: BundleData, steps: int
) -> list[tuple[Fraction, Fraction, Fraction]]:
    """(a, lower, upper) along a = b_coeff / 2^k, k = 1..steps.

    Points where a xi + b_coeff f is not ample are skipped.  Both bounds tend
    to 2 / b_coeff.
    """
    b_coeff = to_rational(b_coeff)
    if b_coeff <= 0:
        raise ValueError("b_coeff must be positive")
    out = []
    for k in range(1, steps + 1):
        a = b_coeff / 2 ** k
        L = DivisorClass(a, b_coeff)
        if b_coeff <= -a * b.mu_min:
            continue
        rep = delta_report(L, b)
        out.append((a, rep.lower, rep.upper))
    return out
