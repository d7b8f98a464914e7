"""File ingestion and export for rating panels and pairwise matrices.

CSV schemas (UTF-8, one cell per row):
  ratings, integer path:  barrier_id,expert_id,rating
  ratings, triple path:   barrier_id,expert_id,l,m,u
  matrix:                 row_id,col_id,l,m,u   (diagonal/reciprocals optional)

JSON schemas:
  ratings: {"scale": ..., "barriers": [...], "experts": [...],
            "ratings": [{"barrier_id", "expert_id", "rating"|"tfn"}]}
  matrix:  {"criteria": [...], "mode": "strict"|"lenient",
            "cells": [{"row", "col", "tfn": [l, m, u]}]}

Barriers/criteria may be bare id strings or {"id", "name"} objects.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Sequence

from .delphi import Barrier, LinguisticScale, RatingPanel, encode_rating, get_scale
from .errors import ValidationError
from .fahp import PairwiseMatrix, build_matrix
from .tfn import TFN, TriangularFuzzyNumber, ValidationMode

RATINGS_INT_HEADER = ["barrier_id", "expert_id", "rating"]
RATINGS_TFN_HEADER = ["barrier_id", "expert_id", "l", "m", "u"]
MATRIX_HEADER = ["row_id", "col_id", "l", "m", "u"]


def detect_format(path: str | Path, explicit: str | None = None) -> str:
    if explicit:
        if explicit not in ("csv", "json"):
            raise ValidationError(f"unknown input format {explicit!r}")
        return explicit
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".json":
        return "json"
    raise ValidationError(f"cannot infer format of {path}; pass format explicitly")


def _parse_float(path: Path, line: int, fieldname: str, raw: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ValidationError(
            f"{path} line {line}: field {fieldname!r} is not a number: {raw!r}"
        ) from None


def _parse_tfn_fields(path: Path, line: int, rec: dict[str, str]) -> TriangularFuzzyNumber:
    return TFN(*(_parse_float(path, line, k, rec[k]) for k in ("l", "m", "u")))


def _json_tfn(where: str, triple) -> TriangularFuzzyNumber:
    if (
        not isinstance(triple, list)
        or len(triple) != 3
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in triple)
    ):
        raise ValidationError(f"{where}: tfn must be a numeric [l, m, u] triple")
    return TFN(*(float(x) for x in triple))


def read_ratings_csv(
    path: str | Path,
    scale: LinguisticScale | None = None,
    mode: ValidationMode = ValidationMode.STRICT,
) -> RatingPanel:
    """Read a rating panel from CSV; the header picks the integer or triple path."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        if header == RATINGS_INT_HEADER:
            integer_path = True
        elif header == RATINGS_TFN_HEADER:
            integer_path = False
        else:
            raise ValidationError(
                f"{path} line 1: unexpected ratings header {header}; "
                f"expected {RATINGS_INT_HEADER} or {RATINGS_TFN_HEADER}"
            )
        if integer_path and scale is None:
            scale = get_scale("delphi-10")
        barriers: list[str] = []
        experts: list[str] = []
        grid: dict[tuple[str, str], TriangularFuzzyNumber] = {}
        for line, rec in enumerate(reader, start=2):
            if any(rec.get(k) in (None, "") for k in header):
                raise ValidationError(f"{path} line {line}: incomplete row {rec}")
            bid, eid = rec["barrier_id"], rec["expert_id"]
            if bid not in barriers:
                barriers.append(bid)
            if eid not in experts:
                experts.append(eid)
            if (bid, eid) in grid:
                raise ValidationError(f"{path} line {line}: duplicate rating for ({bid}, {eid})")
            if integer_path:
                raw = rec["rating"]
                try:
                    rating = int(raw)
                except ValueError:
                    raise ValidationError(
                        f"{path} line {line}: field 'rating' is not an integer: {raw!r}"
                    ) from None
                try:
                    grid[(bid, eid)] = encode_rating(scale, rating)  # type: ignore[arg-type]
                except ValidationError as exc:
                    raise ValidationError(f"{path} line {line}: {exc}") from None
            else:
                grid[(bid, eid)] = _parse_tfn_fields(path, line, rec)
    if not grid:
        raise ValidationError(f"{path}: no rating rows")
    return RatingPanel(tuple(Barrier(b) for b in barriers), tuple(experts), grid, mode)


def _parse_barrier_list(items: Sequence[Any]) -> list[Barrier]:
    out = []
    for item in items:
        if isinstance(item, str):
            out.append(Barrier(item))
        elif isinstance(item, dict) and "id" in item:
            out.append(Barrier(str(item["id"]), str(item.get("name", ""))))
        else:
            raise ValidationError(f"bad barrier entry {item!r}; expected id string or object")
    return out


def read_ratings_json(
    path: str | Path,
    scale: LinguisticScale | None = None,
    mode: ValidationMode = ValidationMode.STRICT,
) -> RatingPanel:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    try:
        barriers = _parse_barrier_list(doc["barriers"])
        experts = [str(e) for e in doc["experts"]]
        entries = doc["ratings"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: missing or malformed field: {exc}") from None
    if scale is None:
        scale = get_scale(doc.get("scale", "delphi-10"))
    grid: dict[tuple[str, str], TriangularFuzzyNumber] = {}
    for k, rec in enumerate(entries):
        where = f"{path} ratings[{k}]"
        if not isinstance(rec, dict) or "barrier_id" not in rec or "expert_id" not in rec:
            raise ValidationError(f"{where}: needs barrier_id and expert_id")
        key = (str(rec["barrier_id"]), str(rec["expert_id"]))
        if key in grid:
            raise ValidationError(f"{where}: duplicate rating for {key}")
        if "tfn" in rec:
            grid[key] = _json_tfn(where, rec["tfn"])
        elif "rating" in rec:
            rating = rec["rating"]
            if isinstance(rating, bool) or not isinstance(rating, int):
                raise ValidationError(f"{where}: rating must be an integer, got {rating!r}")
            grid[key] = encode_rating(scale, rating)
        else:
            raise ValidationError(f"{where}: needs either 'rating' or 'tfn'")
    return RatingPanel(tuple(barriers), tuple(experts), grid, mode)


def read_ratings(
    path: str | Path,
    fmt: str | None = None,
    scale: LinguisticScale | None = None,
    mode: ValidationMode = ValidationMode.STRICT,
) -> RatingPanel:
    fmt = detect_format(path, fmt)
    if fmt == "csv":
        return read_ratings_csv(path, scale, mode)
    return read_ratings_json(path, scale, mode)


def read_matrix_csv(
    path: str | Path, mode: ValidationMode = ValidationMode.STRICT
) -> PairwiseMatrix:
    """Read a pairwise matrix from CSV; criteria appear in first-seen order."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if (reader.fieldnames or []) != MATRIX_HEADER:
            raise ValidationError(
                f"{path} line 1: unexpected matrix header {reader.fieldnames}; "
                f"expected {MATRIX_HEADER}"
            )
        criteria: list[str] = []
        entries: list[tuple[str, str, TriangularFuzzyNumber]] = []
        for line, rec in enumerate(reader, start=2):
            if any(rec.get(k) in (None, "") for k in MATRIX_HEADER):
                raise ValidationError(f"{path} line {line}: incomplete row {rec}")
            rid, cid = rec["row_id"], rec["col_id"]
            for x in (rid, cid):
                if x not in criteria:
                    criteria.append(x)
            entries.append((rid, cid, _parse_tfn_fields(path, line, rec)))
    if not entries:
        raise ValidationError(f"{path}: no matrix rows")
    return build_matrix(entries, criteria, mode)


def read_matrix_json(
    path: str | Path, mode: ValidationMode | None = None
) -> PairwiseMatrix:
    """Read a pairwise matrix from JSON; an explicit `mode` overrides the file's."""
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    try:
        criteria = _parse_barrier_list(doc["criteria"])
        cells = doc["cells"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: missing or malformed field: {exc}") from None
    if mode is None:
        mode = ValidationMode.parse(doc.get("mode", "strict"))
    entries = []
    for k, rec in enumerate(cells):
        where = f"{path} cells[{k}]"
        if not isinstance(rec, dict) or not {"row", "col", "tfn"} <= set(rec):
            raise ValidationError(f"{where}: needs row, col, and tfn")
        entries.append((str(rec["row"]), str(rec["col"]), _json_tfn(where, rec["tfn"])))
    return build_matrix(entries, criteria, mode)


def read_matrix(
    path: str | Path, fmt: str | None = None, mode: ValidationMode | None = None
) -> PairwiseMatrix:
    fmt = detect_format(path, fmt)
    if fmt == "csv":
        return read_matrix_csv(path, mode or ValidationMode.STRICT)
    return read_matrix_json(path, mode)


# ---------------------------------------------------------------------------
# writers (used by the dataset export capability and for templating studies)

def write_ratings_csv(panel: RatingPanel, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(RATINGS_TFN_HEADER)
        for bid in panel.barrier_ids:
            for eid, t in zip(panel.experts, panel.row(bid)):
                w.writerow([bid, eid, repr(t.l), repr(t.m), repr(t.u)])


def write_ratings_json(panel: RatingPanel, path: str | Path, scale_name: str = "delphi-10") -> None:
    doc = {
        "scale": scale_name,
        "barriers": [{"id": b.id, "name": b.name} for b in panel.barriers],
        "experts": list(panel.experts),
        "ratings": [
            {"barrier_id": bid, "expert_id": eid, "tfn": list(t.as_tuple())}
            for bid in panel.barrier_ids
            for eid, t in zip(panel.experts, panel.row(bid))
        ],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def write_matrix_csv(matrix: PairwiseMatrix, path: str | Path) -> None:
    ids = matrix.ids
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(MATRIX_HEADER)
        for i, rid in enumerate(ids):
            for j, cid in enumerate(ids):
                t = matrix.cells[i][j]
                w.writerow([rid, cid, repr(t.l), repr(t.m), repr(t.u)])


def write_matrix_json(matrix: PairwiseMatrix, path: str | Path) -> None:
    ids = matrix.ids
    doc = {
        "criteria": [{"id": c.id, "name": c.name} for c in matrix.criteria],
        "mode": matrix.mode.value,
        "cells": [
            {"row": rid, "col": cid, "tfn": list(matrix.cells[i][j].as_tuple())}
            for i, rid in enumerate(ids)
            for j, cid in enumerate(ids)
        ],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
