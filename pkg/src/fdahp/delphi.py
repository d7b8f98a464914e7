"""Fuzzy Delphi screening of candidate criteria.

Expert ratings (linguistic levels encoded as TFNs) are aggregated per barrier
with the min/geometric-mean/max rule, defuzzified to a crisp significance
score, and screened against a threshold: a barrier survives iff its score is
at or above the threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ValidationError
from .tfn import (
    TFN,
    TriangularFuzzyNumber,
    ValidationMode,
    ValidationWarning,
    aggregate_min_geo_max,
    centroid_defuzzify,
)


@dataclass(frozen=True)
class Barrier:
    """A candidate criterion. `id` is the stable key; `name` is display-only."""

    id: str
    name: str = ""
    description: str | None = None

    @property
    def label(self) -> str:
        return self.name or self.id


@dataclass(frozen=True)
class LinguisticScale:
    """Named mapping from integer rating levels to TFNs.

    Ratings must be contiguous from 1, and every TFN must be ordered.
    """

    name: str
    entries: Mapping[int, TriangularFuzzyNumber]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValidationError(f"scale {self.name!r} has no entries")
        expected = list(range(1, len(self.entries) + 1))
        if sorted(self.entries) != expected:
            raise ValidationError(
                f"scale {self.name!r} ratings must be contiguous from 1, got {sorted(self.entries)}"
            )
        for rating, t in self.entries.items():
            if not t.is_monotone:
                raise ValidationError(f"scale {self.name!r} rating {rating} has unordered TFN {t}")
        object.__setattr__(self, "entries", dict(self.entries))

    def tfn(self, rating: int) -> TriangularFuzzyNumber:
        try:
            return self.entries[rating]
        except KeyError:
            raise ValidationError(
                f"rating {rating!r} is not on scale {self.name!r} (valid: 1..{len(self.entries)})"
            ) from None


# Ten-level significance scale: Very low (1) = (0,0,1) up to Extreme (10) = (10,10,10).
DELPHI_10 = LinguisticScale(
    "delphi-10",
    {
        1: TFN(0, 0, 1),
        2: TFN(1, 2, 3),
        3: TFN(2, 3, 4),
        4: TFN(3, 4, 5),
        5: TFN(4, 5, 6),
        6: TFN(5, 6, 7),
        7: TFN(6, 7, 8),
        8: TFN(7, 8, 9),
        9: TFN(8, 9, 10),
        10: TFN(10, 10, 10),
    },
)

SCALES: dict[str, LinguisticScale] = {DELPHI_10.name: DELPHI_10}


def get_scale(name: str) -> LinguisticScale:
    try:
        return SCALES[name]
    except KeyError:
        raise ValidationError(
            f"unknown linguistic scale {name!r} (available: {sorted(SCALES)})"
        ) from None


def encode_rating(scale: LinguisticScale, rating: int) -> TriangularFuzzyNumber:
    """Resolve an integer rating through a linguistic scale."""
    return scale.tfn(rating)


@dataclass
class RatingPanel:
    """Complete barriers x experts grid of TFN opinions.

    Validation runs at construction: structural problems (missing cells,
    duplicate ids, negative components) always raise; unordered cells raise in
    strict mode and are recorded as warnings in lenient mode.
    """

    barriers: tuple[Barrier, ...]
    experts: tuple[str, ...]
    ratings: dict[tuple[str, str], TriangularFuzzyNumber]
    mode: ValidationMode = ValidationMode.STRICT
    warnings: list[ValidationWarning] = field(default_factory=list, init=False)

    def __post_init__(self) -> None:
        self.barriers = tuple(
            b if isinstance(b, Barrier) else Barrier(str(b)) for b in self.barriers
        )
        self.experts = tuple(str(e) for e in self.experts)
        if not self.barriers:
            raise ValidationError("panel needs at least one barrier")
        if not self.experts:
            raise ValidationError("panel needs at least one expert")
        ids = [b.id for b in self.barriers]
        if len(set(ids)) != len(ids):
            raise ValidationError("barrier ids must be unique")
        if len(set(self.experts)) != len(self.experts):
            raise ValidationError("expert ids must be unique")
        for bid in ids:
            for eid in self.experts:
                cell = self.ratings.get((bid, eid))
                if cell is None:
                    raise ValidationError(f"panel is missing the rating for ({bid}, {eid})")
                self._check_cell(bid, eid, cell)
        extra = set(self.ratings) - {(b, e) for b in ids for e in self.experts}
        if extra:
            raise ValidationError(f"panel has ratings for unknown cells: {sorted(extra)}")

    def _check_cell(self, bid: str, eid: str, cell: TriangularFuzzyNumber) -> None:
        loc = f"({bid}, {eid})"
        if not cell.is_nonnegative:
            raise ValidationError(f"rating {loc} = {cell} has negative components")
        if not cell.is_monotone:
            if self.mode is ValidationMode.STRICT:
                raise ValidationError(f"rating {loc} = {cell} is not ordered l <= m <= u")
            self.warnings.append(
                ValidationWarning("non_monotone", loc, f"rating {cell} is not ordered l <= m <= u")
            )

    @property
    def barrier_ids(self) -> list[str]:
        return [b.id for b in self.barriers]

    def row(self, barrier_id: str) -> tuple[TriangularFuzzyNumber, ...]:
        """All opinions for one barrier, in expert order."""
        return tuple(self.ratings[(barrier_id, eid)] for eid in self.experts)

    @classmethod
    def from_rows(
        cls,
        barriers: Sequence[Barrier | str],
        experts: Sequence[str],
        rows: Mapping[str, Sequence[TriangularFuzzyNumber]],
        mode: ValidationMode = ValidationMode.STRICT,
    ) -> "RatingPanel":
        """Build from one opinion sequence per barrier id, in expert order."""
        bs = tuple(b if isinstance(b, Barrier) else Barrier(str(b)) for b in barriers)
        unknown = set(rows) - {b.id for b in bs}
        if unknown:
            raise ValidationError(f"rows given for unknown barriers: {sorted(unknown)}")
        grid: dict[tuple[str, str], TriangularFuzzyNumber] = {}
        for b in bs:
            opinions = rows.get(b.id)
            if opinions is None or len(opinions) != len(experts):
                raise ValidationError(
                    f"row for {b.id!r} must supply exactly {len(experts)} opinions"
                )
            for eid, t in zip(experts, opinions):
                grid[(b.id, str(eid))] = t
        return cls(bs, tuple(str(e) for e in experts), grid, mode)


@dataclass(frozen=True)
class ThresholdStrategy:
    """Either the mean of all scores, or a fixed cut value."""

    kind: str
    value: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("mean", "fixed"):
            raise ValidationError(f"unknown threshold strategy {self.kind!r}")
        if self.kind == "fixed":
            if self.value is None or not math.isfinite(self.value):
                raise ValidationError("fixed threshold needs a finite value")
        elif self.value is not None:
            raise ValidationError("mean threshold takes no value")

    @classmethod
    def mean(cls) -> "ThresholdStrategy":
        return cls("mean")

    @classmethod
    def fixed(cls, value: float) -> "ThresholdStrategy":
        return cls("fixed", float(value))

    @classmethod
    def parse(cls, text: str) -> "ThresholdStrategy":
        """Accepts 'mean' or 'fixed:<value>'."""
        if not isinstance(text, str):
            raise ValidationError(f"threshold strategy must be a string, got {text!r}")
        if text == "mean":
            return cls.mean()
        if text.startswith("fixed:"):
            try:
                return cls.fixed(float(text.split(":", 1)[1]))
            except ValueError:
                raise ValidationError(f"bad fixed threshold in {text!r}") from None
        raise ValidationError(f"unknown threshold strategy {text!r}; use 'mean' or 'fixed:<value>'")

    def __str__(self) -> str:
        return self.kind if self.kind == "mean" else f"fixed:{self.value:g}"


@dataclass(frozen=True)
class BarrierScreening:
    """Per-barrier screening outcome."""

    barrier: Barrier
    aggregate: TriangularFuzzyNumber
    score: float
    selected: bool


@dataclass
class ScreeningResult:
    """Full screening outcome, in the panel's barrier order."""

    rows: list[BarrierScreening]
    threshold: float
    strategy: ThresholdStrategy
    warnings: list[ValidationWarning] = field(default_factory=list)

    @property
    def selected_ids(self) -> list[str]:
        return [r.barrier.id for r in self.rows if r.selected]

    @property
    def rejected_ids(self) -> list[str]:
        return [r.barrier.id for r in self.rows if not r.selected]

    @property
    def selected_barriers(self) -> list[Barrier]:
        return [r.barrier for r in self.rows if r.selected]


def aggregate_panel(panel: RatingPanel) -> dict[str, TriangularFuzzyNumber]:
    """Min/geomean/max aggregate per barrier, keyed by id in barrier order."""
    return {bid: aggregate_min_geo_max(panel.row(bid)) for bid in panel.barrier_ids}


def score_barriers(aggregates: Mapping[str, TriangularFuzzyNumber]) -> dict[str, float]:
    """Centroid-defuzzify each aggregate into a crisp significance score."""
    if not aggregates:
        raise ValidationError("no aggregates to score")
    return {bid: centroid_defuzzify(t) for bid, t in aggregates.items()}


def compute_threshold(
    scores: Mapping[str, float],
    strategy: ThresholdStrategy = ThresholdStrategy.mean(),
) -> float:
    """Selection threshold: mean of the scores, or the fixed value."""
    if not scores:
        raise ValidationError("cannot compute a threshold from empty scores")
    if strategy.kind == "fixed":
        return float(strategy.value)  # type: ignore[arg-type]
    return math.fsum(scores.values()) / len(scores)


def screen(
    panel: RatingPanel,
    strategy: ThresholdStrategy = ThresholdStrategy.mean(),
) -> ScreeningResult:
    """Run the full screening pipeline: aggregate, defuzzify, threshold, decide.

    A barrier is selected iff its score is >= the threshold (ties inclusive).
    """
    aggregates = aggregate_panel(panel)
    scores = score_barriers(aggregates)
    threshold = compute_threshold(scores, strategy)
    rows = [
        BarrierScreening(b, aggregates[b.id], scores[b.id], scores[b.id] >= threshold)
        for b in panel.barriers
    ]
    return ScreeningResult(rows, threshold, strategy, list(panel.warnings))
