"""Deterministic k-means with careful seeding over the ranked feature space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .attributes import RankedFeatureMatrix
from .errors import ValidationError
from .pca import _freeze

_MASK64 = (1 << 64) - 1


class Xorshift64Star:
    """Deterministic 64-bit generator, identical on every platform.

    State update (Marsaglia xorshift with Vigna's star multiplier), all
    arithmetic mod 2**64:

        x ^= x >> 12
        x ^= x << 25
        x ^= x >> 27
        output = x * 2685821657736338717

    The seed is whitened through one splitmix64 step so that seed 0 is
    usable and nearby seeds give unrelated streams.
    """

    def __init__(self, seed: int) -> None:
        self._x = _splitmix64(seed & _MASK64)
        if self._x == 0:
            self._x = 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._x
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._x = x
        return (x * 2685821657736338717) & _MASK64

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self.random() * n) % n


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class ClusteringResult:
    """Outcome of the best restart: assignments are 1-based cluster ids."""

    objects: tuple[str, ...]
    assignments: tuple[int, ...]
    centers: np.ndarray = field(repr=False)
    sse: float
    restarts_used: int
    seed: int
    sse_history: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", _freeze(self.centers))

    @property
    def k(self) -> int:
        return self.centers.shape[0]


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _kmeanspp_init(points: np.ndarray, k: int, rng: Xorshift64Star) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.randint(n)]
    d2 = _sq_dists(points, centers[:1]).min(axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # all remaining mass at existing centers; fall back to uniform
            idx = rng.randint(n)
        else:
            r = rng.random() * total
            idx = min(int(np.searchsorted(np.cumsum(d2), r, side="right")), n - 1)
        centers[i] = points[idx]
        d2 = np.minimum(d2, _sq_dists(points, centers[i : i + 1]).min(axis=1))
    return centers


def _lloyd(
    points: np.ndarray, centers: np.ndarray, max_iterations: int
) -> tuple[np.ndarray, np.ndarray, float, list[float]]:
    """Lloyd iterations to an assignment fixed point (or the cap).

    Returns (assignments 0-based, centers, sse, per-iteration sse).
    Empty clusters are repaired by promoting the point farthest from its
    current center to a singleton center.
    """
    k = centers.shape[0]
    prev = None
    history: list[float] = []
    for _ in range(max_iterations):
        d2 = _sq_dists(points, centers)
        assign = d2.argmin(axis=1)
        point_d2 = d2[np.arange(points.shape[0]), assign]

        empties = [q for q in range(k) if not np.any(assign == q)]
        if empties:
            taken: set[int] = set()
            for q in empties:
                order = np.argsort(-point_d2, kind="stable")
                idx = next(int(i) for i in order if int(i) not in taken)
                taken.add(idx)
                centers[q] = points[idx]
                assign[idx] = q
                point_d2[idx] = 0.0

        sse = float(point_d2.sum())
        history.append(sse)
        if prev is not None and np.array_equal(assign, prev) and not empties:
            break
        prev = assign
        for q in range(k):
            centers[q] = points[assign == q].mean(axis=0)
    return assign, centers, history[-1], history


def kmeans(
    points: RankedFeatureMatrix | np.ndarray,
    k: int,
    seed: int,
    restarts: int = 50,
    max_iterations: int = 300,
    distance: str = "euclidean",
) -> ClusteringResult:
    """Best of ``restarts`` independently seeded k-means++ runs.

    Each restart draws from its own deterministic stream derived from
    (seed, restart index), so results are independent of execution order.
    Ties on the final sum of squared errors go to the earliest restart.
    """
    if distance != "euclidean":
        raise ValidationError(f"unsupported distance {distance!r}; only 'euclidean'")
    if isinstance(points, RankedFeatureMatrix):
        objects, x = points.objects, np.array(points.values)
    else:
        x = np.array(points, dtype=np.float64)
        objects = tuple(str(i) for i in range(x.shape[0]))
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValidationError("points must be a non-empty 2-D matrix")
    distinct = np.unique(x, axis=0).shape[0]
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if k > distinct:
        raise ValidationError(
            f"k={k} exceeds the number of distinct points ({distinct})"
        )
    if restarts < 1:
        raise ValidationError(f"restarts must be >= 1, got {restarts}")

    best = None
    for r in range(restarts):
        rng = Xorshift64Star(_splitmix64(seed & _MASK64) ^ r)
        centers = _kmeanspp_init(x, k, rng)
        assign, centers, sse, history = _lloyd(x, centers, max_iterations)
        if best is None or sse < best[0]:
            best = (sse, r, assign, centers, history)

    sse, _, assign, centers, history = best
    return ClusteringResult(
        objects=objects,
        assignments=tuple(int(a) + 1 for a in assign),
        centers=centers,
        sse=sse,
        restarts_used=restarts,
        seed=seed,
        sse_history=tuple(history),
    )
