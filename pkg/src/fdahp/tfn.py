"""Triangular fuzzy numbers: representation, arithmetic, aggregation, defuzzification.

A triangular fuzzy number (TFN) is an ordered triple (l, m, u) whose membership
function rises linearly from l to the modal value m and falls linearly to u.
Every fuzzy quantity in the Delphi and AHP pipelines is carried as a TFN.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import ValidationError


class ValidationMode(Enum):
    """How containers treat malformed cells: fail fast, or record and continue."""

    STRICT = "strict"
    LENIENT = "lenient"

    @classmethod
    def parse(cls, text: str) -> "ValidationMode":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValidationError(
                f"unknown validation mode {text!r}; expected 'strict' or 'lenient'"
            ) from None


@dataclass(frozen=True)
class ValidationWarning:
    """A single recorded violation from lenient-mode validation."""

    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.location}: {self.message}"


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Ordered triple (l, m, u). All components must be finite.

    Monotonicity (l <= m <= u) is a contextual requirement: containers enforce
    it per their validation mode, so a lenient container can hold a raw
    non-monotone triple exactly as supplied.
    """

    l: float
    m: float
    u: float

    def __post_init__(self) -> None:
        for name in ("l", "m", "u"):
            v = getattr(self, name)
            if type(v) is not float:
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise ValidationError(
                        f"TFN component {name} must be a real number, got {v!r}"
                    )
                v = float(v)
                object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValidationError(f"TFN component {name} must be finite, got {v!r}")

    @property
    def is_monotone(self) -> bool:
        return self.l <= self.m <= self.u

    @property
    def is_nonnegative(self) -> bool:
        return self.l >= 0 and self.m >= 0 and self.u >= 0

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.l, self.m, self.u)

    def __str__(self) -> str:
        return f"({self.l:g}, {self.m:g}, {self.u:g})"


TFN = TriangularFuzzyNumber

UNIT_TFN = TFN(1.0, 1.0, 1.0)


def membership_at(t: TFN, x: float) -> float:
    """Degree of membership of x in t, in [0, 1].

    Piecewise linear: 0 outside [l, u], 1 at the modal value, interpolated on
    the rising and falling segments. A degenerate segment (l == m or m == u)
    contributes membership 1 at its collapsed point.
    """
    if not t.is_monotone:
        raise ValidationError(f"membership requires an ordered TFN, got {t}")
    if not math.isfinite(x):
        raise ValidationError(f"membership point must be finite, got {x!r}")
    if x < t.l or x > t.u:
        return 0.0
    if x == t.m:
        return 1.0
    if x < t.m:
        return (x - t.l) / (t.m - t.l)
    return (t.u - x) / (t.u - t.m)


def tfn_add(a: TFN, b: TFN) -> TFN:
    """Componentwise sum."""
    return TFN(a.l + b.l, a.m + b.m, a.u + b.u)


def tfn_multiply(a: TFN, b: TFN) -> TFN:
    """Componentwise product (the standard TFN approximation).

    Only monotone-safe for nonnegative operands, so negatives are rejected.
    """
    if not (a.is_nonnegative and b.is_nonnegative):
        raise ValidationError(f"TFN product requires nonnegative components: {a} * {b}")
    return TFN(a.l * b.l, a.m * b.m, a.u * b.u)


def tfn_reciprocal(t: TFN) -> TFN:
    """Reciprocal (1/u, 1/m, 1/l); order reversed so the result stays a valid TFN."""
    if t.l <= 0 or t.m <= 0 or t.u <= 0:
        raise ValidationError(f"TFN reciprocal requires strictly positive components, got {t}")
    return TFN(1.0 / t.u, 1.0 / t.m, 1.0 / t.l)


def tfn_total_inverse(total: TFN) -> TFN:
    """Reciprocal of a column total.

    Identical arithmetic to :func:`tfn_reciprocal`; named separately because it
    produces the normalization vector applied to every row geometric mean in
    the geometric-mean weighting method.
    """
    return tfn_reciprocal(total)


def geometric_mean(values: Sequence[float]) -> float:
    """Geometric mean of nonnegative reals, zero if any factor is zero.

    Computed through the mean of logarithms; math.fsum makes the result
    independent of input order bit-for-bit. The result is clamped to
    [min(values), max(values)] to absorb exp/log rounding at the boundary.
    """
    vals = [float(v) for v in values]
    if not vals:
        raise ValidationError("geometric mean of an empty sequence")
    for v in vals:
        if v < 0:
            raise ValidationError(f"geometric mean requires nonnegative values, got {v}")
    if len(vals) == 1:
        return vals[0]
    if any(v == 0.0 for v in vals):
        return 0.0
    g = math.exp(math.fsum(map(math.log, vals)) / len(vals))
    return min(max(g, min(vals)), max(vals))


def aggregate_min_geo_max(opinions: Iterable[TFN]) -> TFN:
    """Aggregate a panel of opinions: (min of l, geometric mean of m, max of u)."""
    ops = list(opinions)
    if not ops:
        raise ValidationError("cannot aggregate an empty panel")
    return TFN(
        min(o.l for o in ops),
        geometric_mean([o.m for o in ops]),
        max(o.u for o in ops),
    )


def centroid_defuzzify(t: TFN) -> float:
    """Center-of-gravity defuzzification: (l + m + u) / 3."""
    return (t.l + t.m + t.u) / 3.0
