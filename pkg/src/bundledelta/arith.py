"""Exact scalars, binomial coefficients and a small exact polynomial type.

All published quantities are :class:`fractions.Fraction` values.  The
combinatorial identities used to collapse the fibre integral are exposed as
operations returning both sides, so they can be checked rather than trusted.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction.

    Floats are refused: every input to this package is meant to be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def binom(n: int, k: int) -> int:
    """C(n, k), with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError("binom requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinom(n: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be non-negative")
    if sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not sum to {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


class IdentitySides(NamedTuple):
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def identity_main(n: int, r: int) -> IdentitySides:
    """Both sides of the alternating sum that collapses the fibre integral.

    lhs = sum_{c=r+1}^{n} C(c-2, r-1) C(n+1, c+1) (-1)^(c+r+1)
    rhs = r(r+1)/2 + (n+1)(n/2 - r)
    """
    if r < 1 or n < r + 1:
        raise ValueError(f"identity_main needs 1 <= r and n >= r+1, got n={n}, r={r}")
    lhs = sum(
        binom(c - 2, r - 1) * binom(n + 1, c + 1) * _sign(c + r + 1)
        for c in range(r + 1, n + 1)
    )
    rhs = Fraction(r * (r + 1), 2) + (n + 1) * (Fraction(n, 2) - r)
    return IdentitySides(Fraction(lhs), rhs)


AUX_KINDS = ("sum_is_n_minus_r", "sum_is_one", "sum_is_zero")


def aux_is_valid(kind: str, n: int, r: int) -> bool:
    if kind == "sum_is_n_minus_r":
        return r >= 1 and n >= r + 2
    if kind == "sum_is_one":
        return r >= 1 and n >= r + 3
    if kind == "sum_is_zero":
        return r >= 0 and n >= r + 1
    raise ValueError(f"unknown identity kind {kind!r}")


def identity_aux(kind: str, n: int, r: int) -> IdentitySides:
    """Both sides of one of the three auxiliary identities.

    ``sum_is_n_minus_r``: sum_{c=r+1}^{n} C(c-2,r-1) C(n,c) (-1)^(c+r+1) = n - r
    ``sum_is_one``:       sum_{c=r+1}^{n+1} C(c-2,r-1) C(n,c-1) (-1)^(c+r+1) = 1
    ``sum_is_zero``:      sum_{c=r}^{n} C(c,r) C(n,c) (-1)^c = 0,  n > r

    The ``sum_is_one`` range runs to n+1, which is the sum the induction step
    for ``sum_is_n_minus_r`` produces; stopping at n makes it false.
    """
    if not aux_is_valid(kind, n, r):
        raise ValueError(f"(n={n}, r={r}) out of range for {kind}")
    if kind == "sum_is_n_minus_r":
        lhs = sum(
            binom(c - 2, r - 1) * binom(n, c) * _sign(c + r + 1)
            for c in range(r + 1, n + 1)
        )
        rhs = n - r
    elif kind == "sum_is_one":
        lhs = sum(
            binom(c - 2, r - 1) * binom(n, c - 1) * _sign(c + r + 1)
            for c in range(r + 1, n + 2)
        )
        rhs = 1
    else:
        lhs = sum(binom(c, r) * binom(n, c) * _sign(c) for c in range(r, n + 1))
        rhs = 0
    return IdentitySides(Fraction(lhs), Fraction(rhs))


class Poly:
    """Dense univariate polynomial with Fraction coefficients, lowest degree first.

    Supports exactly what the volume profiles need: ring operations with
    scalars, evaluation, composition with a linear map and antiderivatives.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [c if isinstance(c, Fraction) else to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def var(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [Fraction(0)] * (m - len(cs))
        return Poly(x + y for x, y in zip(pad(self.coeffs), pad(other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, t):
        acc = 0 * t
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def compose_linear(self, scale: Fraction, shift: Fraction) -> "Poly":
        """p(scale * t + shift) as a polynomial in t."""
        inner = Poly([shift, scale])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo: Fraction, hi: Fraction) -> Fraction:
        big = self.antiderivative()
        return Fraction(big(hi) - big(lo))
