"""Direction-aware min-max scaling onto [0, 1]."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dataset import Direction, IndicatorSpec, RawDataset, _freeze
from .errors import ValidationError


class ConstantColumnWarning(UserWarning):
    """A column carried no information; all its entries were mapped to 0.5."""


@dataclass(frozen=True)
class NormalizedMatrix:
    """M x N matrix of values scaled to [0, 1], column order as declared.

    ``constant_columns`` lists indices of columns that were constant in
    the raw data and therefore mapped to 0.5 everywhere.
    """

    objects: tuple[str, ...]
    indicators: tuple[IndicatorSpec, ...]
    values: np.ndarray = field(repr=False)
    constant_columns: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise ValidationError("normalized values must lie in [0, 1]")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_indicators(self) -> int:
        return len(self.indicators)


def normalize_column(raw, direction: Direction) -> np.ndarray:
    """Min-max scale one column.

    Positive direction maps (p - min) / (max - min); negative maps
    (max - p) / (max - min).  A constant column has no spread and is
    mapped to 0.5 with a :class:`ConstantColumnWarning`.
    """
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 1 or raw.size < 2:
        raise ValidationError("column must be a 1-D vector of length >= 2")
    if not np.isfinite(raw).all():
        raise ValidationError("column contains non-finite values")
    lo, hi = raw.min(), raw.max()
    if lo == hi:
        warnings.warn(
            "constant column mapped to 0.5", ConstantColumnWarning, stacklevel=2
        )
        return np.full(raw.shape, 0.5)
    if direction is Direction.POSITIVE:
        out = (raw - lo) / (hi - lo)
    else:
        out = (hi - raw) / (hi - lo)
    # guard against rounding just past the endpoints
    return np.clip(out, 0.0, 1.0)


def normalize_dataset(raw: RawDataset) -> NormalizedMatrix:
    """Apply per-column normalization with each indicator's direction.

    Columns flagged pre-normalized are copied verbatim after a range check.
    """
    values = np.empty_like(raw.values)
    constant = []
    for j, spec in enumerate(raw.indicators):
        col = raw.values[:, j]
        if spec.pre_normalized:
            if col.min() < 0.0 or col.max() > 1.0:
                bad = int(np.argmax((col < 0.0) | (col > 1.0)))
                raise ValidationError(
                    f"pre-normalized column {spec.name!r} has value "
                    f"{col[bad]} outside [0, 1] at row {bad + 1}"
                )
            values[:, j] = col
        else:
            if col.min() == col.max():
                constant.append(j)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", ConstantColumnWarning)
                    values[:, j] = normalize_column(col, spec.direction)
                warnings.warn(
                    f"column {spec.name!r} is constant; mapped to 0.5",
                    ConstantColumnWarning,
                    stacklevel=2,
                )
            else:
                values[:, j] = normalize_column(col, spec.direction)
    return NormalizedMatrix(
        objects=raw.objects,
        indicators=raw.indicators,
        values=values,
        constant_columns=tuple(constant),
    )
