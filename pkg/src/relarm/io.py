"""CSV/JSON readers and writers for pipeline artifacts.

All floats serialize via ``repr`` (shortest round-trip form), so re-reading
a written file reproduces the exact double.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .errors import ValidationError
from .rating import AgreementReport, ObjectRating, RatingResult


def _fmt(v: float) -> str:
    return repr(float(v))


def write_matrix_csv(path, values: np.ndarray, header: list[str], row_ids=None) -> None:
    values = np.atleast_2d(values)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for i, row in enumerate(values):
            cells = [_fmt(v) for v in row]
            if row_ids is not None:
                cells = [row_ids[i]] + cells
            w.writerow(cells)


def write_ratings_csv(path, ratings: RatingResult) -> None:
    proj = {c.cluster: c.projection for c in ratings.per_cluster}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["object", "cluster", "projection", "category"])
        for r in ratings.per_object:
            w.writerow([r.object_id, r.cluster, _fmt(proj[r.cluster]), r.category])


def read_ratings_csv(path) -> RatingResult:
    """Rebuild a minimal rating result (per-object rows only) from CSV."""
    from .rating import ClusterRating

    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValidationError(f"{path}: empty ratings file")
    needed = {"object", "cluster", "projection", "category"}
    if not needed.issubset(rows[0]):
        raise ValidationError(f"{path}: ratings file must have columns {sorted(needed)}")
    per_object = []
    seen: dict[int, ClusterRating] = {}
    for row in rows:
        cluster = int(row["cluster"])
        per_object.append(
            ObjectRating(
                object_id=row["object"], cluster=cluster, category=row["category"]
            )
        )
        seen.setdefault(
            cluster,
            ClusterRating(
                cluster=cluster,
                center=(),
                projection=float(row["projection"]),
                rank=0,
                category=row["category"],
            ),
        )
    ranked = sorted(seen.values(), key=lambda c: (-c.projection, c.cluster))
    per_cluster = tuple(
        ClusterRating(
            cluster=c.cluster,
            center=c.center,
            projection=c.projection,
            rank=i + 1,
            category=c.category,
        )
        for i, c in enumerate(ranked)
    )
    return RatingResult(per_object=tuple(per_object), per_cluster=per_cluster)


def read_reference_csv(path) -> dict[str, dict[str, str]]:
    """Reference agency ratings: columns object, agency, category."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"object", "agency", "category"}.issubset(
            reader.fieldnames
        ):
            raise ValidationError(
                f"{path}: reference file must have columns object, agency, category"
            )
        out: dict[str, dict[str, str]] = {}
        for row in reader:
            obj, agency, cat = row["object"], row["agency"], row["category"].strip()
            if not cat or cat.lower() == "not rated":
                continue
            out.setdefault(obj, {})[agency] = cat
    return out


def write_agreement_json(path, report: AgreementReport) -> None:
    doc = {
        "matched": report.matched,
        "compared": report.compared,
        "fraction": report.fraction,
        "no_comparable_objects": report.compared == 0,
        "skipped_reference_objects": list(report.skipped),
        "per_object": [
            {
                "object": a.object_id,
                "model_category": a.model_category,
                "reference": {agency: cat for agency, cat in a.reference},
                "matched": a.matched,
            }
            for a in report.per_object
        ],
        "note": report.note,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
