"""Numerical model of a vector bundle E over a smooth curve.

Only the numbers that enter the computations are kept: genus, rank, degree,
at most one Harder-Narasimhan step, and a user-declared stability type.
Stability and polystability are not determined by (rank, degree), so they are
inputs, not outputs.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, NamedTuple, Optional, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class Stability(str, enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    POLYSTABLE = "polystable"
    UNSTABLE_ONE_STEP = "unstable_one_step"


class BundleError(ValueError):
    """Invalid bundle data.  ``code`` is a stable machine-readable tag."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class HNStep(NamedTuple):
    """Rank and degree of the maximal destabilising subbundle E1."""

    rank: int
    degree: int


class Slopes(NamedTuple):
    mu: Fraction
    mu_max: Fraction
    mu_min: Fraction


class BlowupCenter(NamedTuple):
    """Data of the centre P(E/E') that gets blown up: rank of E' and the two slopes."""

    r: int
    mu_max: Fraction
    mu_min: Fraction


def _as_int(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BundleError("invalid_field", f"{name} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class BundleData:
    """Numerical data of E.  Construction validates; instances are always valid.

    ``hn_step`` describes E1 when the HN filtration has length 2.
    ``subbundle_rank`` optionally declares a proper subbundle E' with
    mu(E') = mu(E) for semistable E; it locates the exceptional divisor used
    for S(L, D).
    """

    genus: int
    rank: int
    degree: int
    stability: Stability
    hn_step: Optional[HNStep] = None
    subbundle_rank: Optional[int] = None
    slopes: Slopes = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        set_ = lambda k, v: object.__setattr__(self, k, v)
        set_("genus", _as_int("genus", self.genus))
        set_("rank", _as_int("rank", self.rank))
        set_("degree", _as_int("degree", self.degree))
        try:
            set_("stability", Stability(self.stability))
        except ValueError:
            raise BundleError(
                "inconsistent_stability_flag",
                f"unknown stability {self.stability!r}; expected one of "
                + ", ".join(s.value for s in Stability),
            ) from None
        if self.hn_step is not None:
            step = self.hn_step
            if isinstance(step, Mapping):
                step = (step.get("rank"), step.get("degree"))
            r, d1 = step
            set_("hn_step", HNStep(_as_int("hn_step.rank", r), _as_int("hn_step.degree", d1)))
        if self.subbundle_rank is not None:
            set_("subbundle_rank", _as_int("subbundle_rank", self.subbundle_rank))
        self._check()
        n, d = self.rank, self.degree
        if self.hn_step is None:
            mu = Fraction(d, n)
            set_("slopes", Slopes(mu, mu, mu))
        else:
            r, d1 = self.hn_step
            set_("slopes", Slopes(Fraction(d, n), Fraction(d1, r), Fraction(d - d1, n - r)))

    def _check(self) -> None:
        n, d = self.rank, self.degree
        if self.genus < 0:
            raise BundleError("invalid_field", f"genus must be >= 0, got {self.genus}")
        if n < 2:
            raise BundleError("rank_out_of_range", f"rank must be >= 2, got {n}")
        st = self.stability
        if self.hn_step is None:
            if st is Stability.UNSTABLE_ONE_STEP:
                raise BundleError(
                    "inconsistent_stability_flag",
                    "unstable_one_step requires hn_step = {rank, degree}",
                )
        else:
            if st is not Stability.UNSTABLE_ONE_STEP:
                raise BundleError(
                    "inconsistent_stability_flag",
                    f"hn_step given but stability is {st.value}; use unstable_one_step",
                )
            r, d1 = self.hn_step
            if not 1 <= r <= n - 1:
                raise BundleError("rank_out_of_range", f"hn_step rank must lie in [1, {n - 1}], got {r}")
            # mu(E1) > mu(E/E1), cleared of denominators
            if d1 * (n - r) <= (d - d1) * r:
                raise BundleError(
                    "slope_not_decreasing",
                    f"mu_max = {Fraction(d1, r)} must exceed mu_min = {Fraction(d - d1, n - r)}",
                )
            if self.subbundle_rank is not None:
                raise BundleError(
                    "inconsistent_stability_flag",
                    "subbundle_rank is for semistable bundles; the HN step already fixes E1",
                )
        if st is Stability.STRICTLY_SEMISTABLE and math.gcd(n, d) == 1:
            raise BundleError(
                "inconsistent_stability_flag",
                f"gcd(rank, degree) = 1, so a semistable bundle of rank {n} and degree {d} is stable",
            )
        if self.subbundle_rank is not None:
            r = self.subbundle_rank
            if st is Stability.STABLE:
                raise BundleError(
                    "inconsistent_stability_flag",
                    "a stable bundle has no proper subbundle of equal slope",
                )
            if not 1 <= r <= n - 1:
                raise BundleError("rank_out_of_range", f"subbundle_rank must lie in [1, {n - 1}], got {r}")
            if (r * d) % n:
                raise BundleError(
                    "inconsistent_stability_flag",
                    f"a rank-{r} subbundle of slope {Fraction(d, n)} would have non-integral degree",
                )

    @property
    def hn_length(self) -> int:
        return 1 if self.hn_step is None else 2

    @property
    def mu(self) -> Fraction:
        return self.slopes.mu

    @property
    def mu_max(self) -> Fraction:
        return self.slopes.mu_max

    @property
    def mu_min(self) -> Fraction:
        return self.slopes.mu_min

    @property
    def has_exceptional_divisor(self) -> bool:
        return self.hn_step is not None or self.subbundle_rank is not None

    def blowup_center(self) -> BlowupCenter:
        """Centre of the blowup: E1 from the HN step, or the declared E'."""
        if self.hn_step is not None:
            return BlowupCenter(self.hn_step.rank, self.mu_max, self.mu_min)
        if self.subbundle_rank is not None:
            return BlowupCenter(self.subbundle_rank, self.mu, self.mu)
        raise BundleError(
            "no_exceptional_divisor",
            "bundle has no HN step and no declared slope-equal subbundle (subbundle_rank)",
        )

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "genus": self.genus,
            "rank": self.rank,
            "degree": self.degree,
            "stability": self.stability.value,
        }
        if self.hn_step is not None:
            out["hn_step"] = {"rank": self.hn_step.rank, "degree": self.hn_step.degree}
        if self.subbundle_rank is not None:
            out["subbundle_rank"] = self.subbundle_rank
        return out


_KNOWN_KEYS = {"genus", "rank", "degree", "stability", "hn_step", "subbundle_rank"}


def validate(spec: Union[BundleData, Mapping[str, Any]]) -> BundleData:
    """Return a validated BundleData, raising BundleError on bad input."""
    if isinstance(spec, BundleData):
        return BundleData(**spec.to_dict())
    data = dict(spec)
    if "hn_filtration" in data:
        steps = data.pop("hn_filtration")
        if len(steps) > 1:
            raise BundleError(
                "unsupported_filtration",
                f"HN filtrations of length {len(steps) + 1} are not supported for volumes or "
                "delta; only cone membership depends on them (through mu_max and mu_min)",
            )
        if steps:
            data["hn_step"] = steps[0]
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise BundleError("invalid_field", f"unknown keys: {sorted(unknown)}")
    missing = {"genus", "rank", "degree", "stability"} - set(data)
    if missing:
        raise BundleError("invalid_field", f"missing keys: {sorted(missing)}")
    return BundleData(**data)


def slopes(b: BundleData) -> Slopes:
    return b.slopes


def load_bundle(path: Union[str, Path]) -> BundleData:
    """Read a bundle spec file.  ``.json`` is parsed as JSON, anything else as TOML."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise BundleError("unreadable_spec", str(exc)) from exc
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise BundleError("unparseable_spec", f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise BundleError("unparseable_spec", f"{path}: top level must be a table")
    return validate(data)
