"""Relative attribute vectors, ranking functions, and the map from the
normalized matrix into ranking-function space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .normalize import NormalizedMatrix
from .pca import PcaModel, _freeze


@dataclass(frozen=True)
class RelativeAttribute:
    """Per-coordinate contribution of one object to one component:
    the entrywise product of a normalized row with that component."""

    component_index: int  # 1-based
    values: np.ndarray = field(repr=False)
    object_index: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(self.values))

    @property
    def strength(self) -> float:
        """l1 norm; the object's ranking-function value for nonnegative rows."""
        return float(np.abs(self.values).sum())


@dataclass(frozen=True)
class RankedFeatureMatrix:
    """M x d matrix; row i holds object i's d ranking-function values."""

    objects: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(self.values))
        if len(self.objects) != self.values.shape[0]:
            raise ValidationError("objects/values length mismatch")


def _check_component(model: PcaModel, p: int) -> None:
    if not 1 <= p <= model.d:
        raise ValidationError(f"component index {p} out of range [1, {model.d}]")


def attribute_vector(
    b: np.ndarray, model: PcaModel, p: int, object_index: int | None = None
) -> RelativeAttribute:
    """Entrywise product of a normalized row with the (signed) p-th
    component; p is 1-based."""
    _check_component(model, p)
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (model.n_indicators,):
        raise ValidationError(
            f"row has length {b.size}, model expects {model.n_indicators}"
        )
    return RelativeAttribute(
        component_index=p,
        values=b * model.components[:, p - 1],
        object_index=object_index,
    )


def rank_value(b: np.ndarray, model: PcaModel, p: int) -> float:
    """Ranking-function value: sum_k |w_kp| * b_k, with p 1-based."""
    _check_component(model, p)
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (model.n_indicators,):
        raise ValidationError(
            f"row has length {b.size}, model expects {model.n_indicators}"
        )
    return float(model.W[:, p - 1] @ b)


def map_to_feature_space(
    B: NormalizedMatrix | np.ndarray, model: PcaModel
) -> RankedFeatureMatrix:
    """Map every normalized row into ranking-function space: B @ W."""
    if isinstance(B, NormalizedMatrix):
        objects, x = B.objects, B.values
    else:
        x = np.asarray(B, dtype=np.float64)
        objects = tuple(str(i) for i in range(x.shape[0]))
    if x.ndim != 2 or x.shape[1] != model.n_indicators:
        raise ValidationError(
            f"matrix has {x.shape[1] if x.ndim == 2 else '?'} columns, "
            f"model expects {model.n_indicators}"
        )
    return RankedFeatureMatrix(objects=objects, values=x @ model.W)
