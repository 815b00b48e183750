"""Self-verification: combinatorial identities and closed form vs chamber integration.

Every check compares two independently computed exact rationals.  The
integral side runs through the blowup intersection table and Zariski
decompositions; the closed-form side never touches them, so any error in
the table shows up as a mismatch.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import arith, delta, volumes
from .bundle import BundleData, Stability
from .divisors import DivisorClass, eval_top_power


@dataclass(frozen=True)
class Instance:
    bundle: BundleData
    L: DivisorClass


@dataclass
class CheckResult:
    name: str
    total: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        ok = self.total - len(self.failures)
        tail = f"  first failure: {self.failures[0]}" if self.failures else ""
        return f"{status}  {self.name}: {ok}/{self.total}{tail}"


def _small_rational(rng: random.Random, lo: int, hi: int, max_den: int = 20) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_one_step_bundle(rng: random.Random, n_max: int = 6, deg_range: int = 20) -> BundleData:
    """A random bundle with a one-step HN filtration, n <= n_max."""
    while True:
        n = rng.randint(2, n_max)
        r = rng.randint(1, n - 1)
        d1 = rng.randint(-deg_range, deg_range)
        d2 = rng.randint(-deg_range, deg_range)
        if d1 * (n - r) > d2 * r:
            return BundleData(
                genus=rng.randint(0, 3),
                rank=n,
                degree=d1 + d2,
                stability=Stability.UNSTABLE_ONE_STEP,
                hn_step=(r, d1),
            )


def random_ample(rng: random.Random, b: BundleData, max_num: int = 20, max_den: int = 20) -> DivisorClass:
    """Random ample a xi + b f with numerators and denominators bounded by 20."""
    while True:
        a = _small_rational(rng, 1, max_num, max_den)
        bb = _small_rational(rng, -max_num, max_num, max_den)
        if bb > -a * b.mu_min:
            return DivisorClass(a, bb)


def random_instances(seed: int, count: int, n_max: int = 6) -> Iterator[Instance]:
    rng = random.Random(seed)
    for _ in range(count):
        b = random_one_step_bundle(rng, n_max)
        yield Instance(b, random_ample(rng, b))


def check_identities(n_max: int) -> list[CheckResult]:
    results = []
    fails, total = [], 0
    for n in range(2, n_max + 1):
        for r in range(1, n):
            total += 1
            sides = arith.identity_main(n, r)
            if not sides.holds:
                fails.append(f"n={n} r={r}: {sides.lhs} != {sides.rhs}")
    results.append(CheckResult("identity_main", total, fails))
    for kind in arith.AUX_KINDS:
        fails, total = [], 0
        for n in range(1, n_max + 1):
            for r in range(0, n + 1):
                if not arith.aux_is_valid(kind, n, r):
                    continue
                total += 1
                sides = arith.identity_aux(kind, n, r)
                if not sides.holds:
                    fails.append(f"n={n} r={r}: {sides.lhs} != {sides.rhs}")
        results.append(CheckResult(f"identity_aux[{kind}]", total, fails))
    return results


def _compare(name: str, instances, left: Callable, right: Callable) -> CheckResult:
    fails, total = [], 0
    for inst in instances:
        total += 1
        try:
            x, y = left(inst), right(inst)
        except Exception as exc:  # a crash is a failed check, not an aborted suite
            fails.append(f"{inst}: {type(exc).__name__}: {exc}")
            continue
        if x != y:
            fails.append(f"n={inst.bundle.rank} r={inst.bundle.hn_step.rank} L={inst.L}: {x} != {y}")
    return CheckResult(name, total, fails)


def check_oracles(seed: int, count: int, n_max: int = 6) -> list[CheckResult]:
    insts = list(random_instances(seed, count, n_max))
    vol = lambda i: eval_top_power(i.L, i.bundle)
    return [
        _compare(
            "S(L,F) * Vol(L) == integral over F chambers",
            insts,
            lambda i: delta.s_fiber(i.L, i.bundle) * vol(i),
            lambda i: volumes.integral_volume(i.L, volumes.Axis.F, i.bundle),
        ),
        _compare(
            "S(L,D) * Vol(L) == integral over D chamber",
            insts,
            lambda i: delta.s_exceptional(i.L, i.bundle) * vol(i),
            lambda i: volumes.integral_volume(i.L, volumes.Axis.D, i.bundle),
        ),
        _compare(
            "r / S(L,D) == displayed s1",
            insts,
            lambda i: delta.az_thresholds(i.L, i.bundle)[0],
            lambda i: delta.s1_displayed(i.L, i.bundle),
        ),
        _compare(
            "F chambers agree at the wall; Vol(tau) == 0",
            insts,
            _wall_and_endpoint,
            lambda i: (True, 0, 0),
        ),
    ]


def _wall_and_endpoint(inst: Instance):
    prof = volumes.chamber_profile(inst.L, volumes.Axis.F, inst.bundle)
    left, right = prof
    prof_d = volumes.chamber_profile(inst.L, volumes.Axis.D, inst.bundle)
    return (left(left.hi) == right(right.lo), right(right.hi), prof_d[-1](prof_d[-1].hi))


def run_verification(n_max: int = 50, seed: int = 0, count: int = 100) -> list[CheckResult]:
    return check_identities(n_max) + check_oracles(seed, count)


def render(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)} checks")
    return "\n".join(lines)
