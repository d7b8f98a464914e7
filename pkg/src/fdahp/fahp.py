"""Fuzzy AHP ranking via row geometric means (Buckley's method).

Pipeline: validate the fuzzy pairwise comparison matrix, take the geometric
mean of each row, normalize by the inverted column total, defuzzify, normalize
to unit sum, and rank.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .delphi import Barrier
from .errors import ValidationError
from .tfn import (
    TFN,
    UNIT_TFN,
    TriangularFuzzyNumber,
    ValidationMode,
    ValidationWarning,
    centroid_defuzzify,
    geometric_mean,
    tfn_multiply,
    tfn_reciprocal,
    tfn_total_inverse,
)

# Relative per-component tolerance when checking that cell(j,i) mirrors the
# reciprocal of cell(i,j); printed matrices commonly carry ~3% rounding drift.
RECIPROCITY_TOLERANCE = 0.05


@dataclass(frozen=True)
class SaatyFuzzyScale:
    """Fuzzy 1..9 importance scale for pairwise comparisons."""

    entries: Mapping[int, TriangularFuzzyNumber]

    def __post_init__(self) -> None:
        if sorted(self.entries) != list(range(1, 10)):
            raise ValidationError("Saaty scale must define levels 1..9")
        object.__setattr__(self, "entries", dict(self.entries))

    def tfn(self, level: int) -> TriangularFuzzyNumber:
        try:
            return self.entries[level]
        except KeyError:
            raise ValidationError(f"Saaty level {level!r} not in 1..9") from None

    def reciprocal_tfn(self, level: int) -> TriangularFuzzyNumber:
        """TFN for 'level-times less important'."""
        return tfn_reciprocal(self.tfn(level))


SAATY_9 = SaatyFuzzyScale(
    {
        1: TFN(1, 1, 1),
        2: TFN(1, 2, 3),
        3: TFN(2, 3, 4),
        4: TFN(3, 4, 5),
        5: TFN(4, 5, 6),
        6: TFN(5, 6, 7),
        7: TFN(6, 7, 8),
        8: TFN(7, 8, 9),
        9: TFN(9, 9, 9),
    }
)


def _as_barriers(criteria: Sequence[Barrier | str]) -> tuple[Barrier, ...]:
    return tuple(c if isinstance(c, Barrier) else Barrier(str(c)) for c in criteria)


@dataclass
class PairwiseMatrix:
    """Square grid of fuzzy pairwise comparisons over an ordered criteria list.

    Construction validates: strict mode raises on the first violation, lenient
    mode records every violation as a warning and keeps cells exactly as given.
    """

    criteria: tuple[Barrier, ...]
    cells: tuple[tuple[TriangularFuzzyNumber, ...], ...]
    mode: ValidationMode = ValidationMode.STRICT
    warnings: list[ValidationWarning] = field(default_factory=list, init=False)

    def __post_init__(self) -> None:
        self.criteria = _as_barriers(self.criteria)
        ids = [c.id for c in self.criteria]
        if not ids:
            raise ValidationError("matrix needs at least one criterion")
        if len(set(ids)) != len(ids):
            raise ValidationError("criterion ids must be unique")
        n = len(ids)
        self.cells = tuple(
            tuple(t if isinstance(t, TriangularFuzzyNumber) else TFN(*t) for t in row)
            for row in self.cells
        )
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise ValidationError(f"matrix must be {n}x{n} to match its criteria")
        self.warnings = validate_cells(self.criteria, self.cells, self.mode)

    @property
    def size(self) -> int:
        return len(self.criteria)

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.criteria]

    def cell(self, row_id: str, col_id: str) -> TriangularFuzzyNumber:
        i = self.ids.index(row_id)
        j = self.ids.index(col_id)
        return self.cells[i][j]


def validate_cells(
    criteria: Sequence[Barrier],
    cells: Sequence[Sequence[TriangularFuzzyNumber]],
    mode: ValidationMode,
) -> list[ValidationWarning]:
    """Check cell ordering, unit diagonal, and reciprocity.

    Stages run in a fixed order; strict mode raises at the first offending
    cell, lenient mode returns one warning per violation. Pairs whose forward
    cell has a nonpositive component cannot be reciprocity-checked and are
    reported as such.
    """
    ids = [c.id for c in criteria]
    n = len(ids)
    warnings: list[ValidationWarning] = []

    def offend(code: str, location: str, message: str) -> None:
        if mode is ValidationMode.STRICT:
            raise ValidationError(f"{location}: {message}")
        warnings.append(ValidationWarning(code, location, message))

    for i in range(n):
        for j in range(n):
            t = cells[i][j]
            if not t.is_monotone:
                offend(
                    "non_monotone",
                    f"({ids[i]},{ids[j]})",
                    f"cell {t} is not ordered l <= m <= u",
                )
    for i in range(n):
        if cells[i][i] != UNIT_TFN:
            offend(
                "non_unit_diagonal",
                f"({ids[i]},{ids[i]})",
                f"diagonal cell is {cells[i][i]}, expected (1, 1, 1)",
            )
    for i in range(n):
        for j in range(i + 1, n):
            fwd = cells[i][j]
            back = cells[j][i]
            pair = f"({ids[i]},{ids[j]})/({ids[j]},{ids[i]})"
            if min(fwd.as_tuple()) <= 0 or min(back.as_tuple()) <= 0:
                offend(
                    "nonpositive_component",
                    pair,
                    "cells must be strictly positive to check reciprocity",
                )
                continue
            expected = tfn_reciprocal(fwd)
            rel = max(
                abs(b - e) / e for b, e in zip(back.as_tuple(), expected.as_tuple())
            )
            if rel > RECIPROCITY_TOLERANCE:
                offend(
                    "reciprocity_breach",
                    pair,
                    f"{back} deviates from reciprocal {expected} of {fwd} "
                    f"by {rel:.1%} (tolerance {RECIPROCITY_TOLERANCE:.0%})",
                )
    return warnings


def validate_matrix(m: PairwiseMatrix) -> list[ValidationWarning]:
    """Re-run validation on a built matrix and return the warning list."""
    return validate_cells(m.criteria, m.cells, m.mode)


def build_matrix(
    entries: Iterable[tuple[str, str, TriangularFuzzyNumber]],
    criteria: Sequence[Barrier | str],
    mode: ValidationMode = ValidationMode.STRICT,
) -> PairwiseMatrix:
    """Assemble a matrix from sparse (row_id, col_id, tfn) entries.

    The diagonal defaults to (1,1,1); a missing mirror cell is auto-filled
    with the reciprocal of its counterpart. Explicitly supplied cells are
    never overwritten.
    """
    crits = _as_barriers(criteria)
    ids = [c.id for c in crits]
    index = {cid: k for k, cid in enumerate(ids)}
    n = len(ids)
    grid: list[list[TriangularFuzzyNumber | None]] = [[None] * n for _ in range(n)]
    for row_id, col_id, t in entries:
        if row_id not in index:
            raise ValidationError(f"entry row id {row_id!r} is not a known criterion")
        if col_id not in index:
            raise ValidationError(f"entry col id {col_id!r} is not a known criterion")
        i, j = index[row_id], index[col_id]
        if grid[i][j] is not None:
            raise ValidationError(f"duplicate entry for cell ({row_id},{col_id})")
        grid[i][j] = t
    for i in range(n):
        if grid[i][i] is None:
            grid[i][i] = UNIT_TFN
    for i in range(n):
        for j in range(n):
            if grid[i][j] is None and grid[j][i] is not None:
                grid[i][j] = tfn_reciprocal(grid[j][i])  # type: ignore[arg-type]
    missing = [
        f"({ids[i]},{ids[j]})" for i in range(n) for j in range(n) if grid[i][j] is None
    ]
    if missing:
        raise ValidationError(f"matrix incomplete after auto-fill; missing cells: {missing}")
    return PairwiseMatrix(crits, tuple(tuple(row) for row in grid), mode)  # type: ignore[arg-type]


def row_geometric_means(m: PairwiseMatrix) -> list[TriangularFuzzyNumber]:
    """Componentwise geometric mean of each row."""
    out = []
    for row in m.cells:
        out.append(
            TFN(
                geometric_mean([t.l for t in row]),
                geometric_mean([t.m for t in row]),
                geometric_mean([t.u for t in row]),
            )
        )
    return out


def fuzzy_weights(
    r: Sequence[TriangularFuzzyNumber],
) -> tuple[list[TriangularFuzzyNumber], TriangularFuzzyNumber, TriangularFuzzyNumber]:
    """Fuzzy relative weights from row geometric means.

    Returns (weights, total, inverse) where total is the componentwise sum of
    r, inverse its reversed reciprocal, and each weight r_i * inverse, i.e.
    lower/total.u, modal/total.m, upper/total.l.
    """
    if not r:
        raise ValidationError("no row geometric means to weight")
    total = TFN(
        math.fsum(t.l for t in r),
        math.fsum(t.m for t in r),
        math.fsum(t.u for t in r),
    )
    if min(total.as_tuple()) <= 0:
        raise ValidationError(f"weight normalization requires positive totals, got {total}")
    inverse = tfn_total_inverse(total)
    weights = [tfn_multiply(t, inverse) for t in r]
    return weights, total, inverse


def crisp_weights(w: Sequence[TriangularFuzzyNumber]) -> tuple[list[float], list[float]]:
    """Centroid-defuzzified weights M and their unit-sum normalization N."""
    if not w:
        raise ValidationError("no fuzzy weights to defuzzify")
    m_vals = [centroid_defuzzify(t) for t in w]
    s = math.fsum(m_vals)
    if s == 0:
        raise ValidationError("crisp weights sum to zero; cannot normalize")
    return m_vals, [v / s for v in m_vals]


def rank(n_weights: Sequence[float], tie_break: str = "index") -> list[int]:
    """1-based ranks, descending by weight; ties broken by ascending index."""
    if not n_weights:
        raise ValidationError("nothing to rank")
    if tie_break != "index":
        raise ValidationError(f"unsupported tie-break policy {tie_break!r}")
    order = sorted(range(len(n_weights)), key=lambda i: (-n_weights[i], i))
    ranks = [0] * len(n_weights)
    for position, i in enumerate(order):
        ranks[i] = position + 1
    return ranks


@dataclass
class RankingResult:
    """All intermediates of one ranking run, in criteria order."""

    criteria: tuple[Barrier, ...]
    row_means: list[TriangularFuzzyNumber]
    weights: list[TriangularFuzzyNumber]
    total: TriangularFuzzyNumber
    inverse: TriangularFuzzyNumber
    crisp: list[float]
    normalized: list[float]
    ranks: list[int]
    warnings: list[ValidationWarning] = field(default_factory=list)

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.criteria]

    @property
    def rank_order(self) -> list[str]:
        """Criterion ids from rank 1 to rank n."""
        by_rank = sorted(zip(self.ranks, self.ids))
        return [cid for _, cid in by_rank]

    def normalized_by_id(self) -> dict[str, float]:
        return dict(zip(self.ids, self.normalized))


def run_fahp(m: PairwiseMatrix, tie_break: str = "index") -> RankingResult:
    """Full ranking pipeline over a validated matrix."""
    r = row_geometric_means(m)
    w, total, inverse = fuzzy_weights(r)
    m_vals, n_vals = crisp_weights(w)
    ranks = rank(n_vals, tie_break)
    return RankingResult(
        criteria=m.criteria,
        row_means=r,
        weights=w,
        total=total,
        inverse=inverse,
        crisp=m_vals,
        normalized=n_vals,
        ranks=ranks,
        warnings=list(m.warnings),
    )
