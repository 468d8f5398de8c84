"""Lagrange gap filling for missing samples, 1-D and the 2-D weight systems.

The 1-D path substitutes a quadratic Lagrange polynomial through the three
nearest available neighbors of a missing index (circular distance).  The 2-D
machinery solves the four-neighbor weight system with a three-neighbor
fallback and keeps a small cache of weights for the neighbor shapes that
dominate at high availability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import AvailabilityMask

__all__ = [
    "InterpolationImpossible",
    "NeighborSet1D",
    "Shape2D",
    "WeightSet",
    "lagrange3",
    "find_neighbors_1d",
    "weights_2d",
    "shape_probability",
    "shape_cache_lookup",
    "BatchInterpolator",
]

_PIVOT_TOL = 1e-10


class InterpolationImpossible(RuntimeError):
    """Too few usable neighbors (or all weight systems singular)."""


@dataclass(frozen=True)
class NeighborSet1D:
    """Three interpolation nodes: canonical indices plus unwrapped positions.

    ``positions`` are the node coordinates on the real line nearest to the
    target (they may leave [0, n)); ``indices`` are the same nodes mod n for
    sample lookup.
    """

    indices: tuple[int, int, int]
    positions: tuple[int, int, int]

    def __post_init__(self):
        if len(set(self.positions)) != 3:
            raise ValueError("interpolation nodes must be distinct")


@dataclass(frozen=True)
class Shape2D:
    """Relative offsets of a missing 2-D point's available neighbors."""

    offsets: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not 3 <= len(self.offsets) <= 4:
            raise ValueError("need 3 or 4 neighbor offsets")
        if any(dx == 0 and dy == 0 for dx, dy in self.offsets):
            raise ValueError("offsets must be nonzero")


@dataclass(frozen=True)
class WeightSet:
    weights: tuple[float, ...]

    def __post_init__(self):
        if not np.isfinite(self.weights).all():
            raise ValueError("weights must be finite")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


def lagrange3(neighbors: NeighborSet1D, values, t: float) -> complex:
    """Quadratic Lagrange polynomial through the three nodes, evaluated at t.

    ``values`` are the complex samples at the three nodes; real and imaginary
    parts interpolate independently (Lagrange is linear in the data).
    """
    t1, t2, t3 = neighbors.positions
    v1, v2, v3 = values
    w1 = (t - t2) * (t - t3) / ((t1 - t2) * (t1 - t3))
    w2 = (t - t1) * (t - t3) / ((t2 - t1) * (t2 - t3))
    w3 = (t - t2) * (t - t1) / ((t3 - t2) * (t3 - t1))
    return complex(w1 * v1 + w2 * v2 + w3 * v3)


def find_neighbors_1d(mask: AvailabilityMask, t: int, window: int) -> NeighborSet1D:
    """Three nearest available indices by circular distance around missing t.

    Scans outward (left/right alternating, wrapping mod n); equal distances
    break toward the smaller canonical index.  Raises
    :class:`InterpolationImpossible` if fewer than 3 available indices lie
    within +/- window.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if mask.flags[t % mask.n]:
        raise ValueError("target index is available; nothing to interpolate")
    n = mask.n
    found: list[tuple[int, int]] = []  # (position, canonical index)
    for d in range(1, window + 1):
        candidates = []
        left, right = (t - d) % n, (t + d) % n
        if mask.flags[left]:
            candidates.append((t - d, left))
        if right != left and mask.flags[right]:
            candidates.append((t + d, right))
        candidates.sort(key=lambda pc: pc[1])  # smaller index first on ties
        found.extend(candidates)
        if len(found) >= 3:
            break
    if len(found) < 3:
        raise InterpolationImpossible(
            f"fewer than 3 available neighbors within +/-{window} of {t}"
        )
    found = found[:3]
    return NeighborSet1D(
        indices=tuple(c for _, c in found), positions=tuple(p for p, _ in found)
    )


def _solve_partial_pivot(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Gaussian elimination with partial pivoting; None on a tiny pivot."""
    a = a.astype(float).copy()
    b = b.astype(float).copy()
    m = len(b)
    for col in range(m):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[piv, col]) < _PIVOT_TOL:
            return None
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        for row in range(col + 1, m):
            f = a[row, col] / a[col, col]
            a[row, col:] -= f * a[col, col:]
            b[row] -= f * b[col]
    x = np.zeros(m)
    for row in range(m - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x


def weights_2d(shape: Shape2D) -> WeightSet:
    """Neighbor weights reproducing a + b*x + c*y + d*x*y at the missing point.

    Offsets are taken relative to the missing point (the system is translation
    invariant), so the right-hand side is (0, 0, 0, 1).  A singular 4-point
    system falls back to the 3-point affine system on the three nearest
    neighbors in distinct quadrants.
    """
    pts = np.asarray(shape.offsets, dtype=float)
    if len(pts) == 4:
        a = np.vstack([pts[:, 0], pts[:, 1], pts[:, 0] * pts[:, 1], np.ones(4)])
        b = np.array([0.0, 0.0, 0.0, 1.0])
        # minimum-norm solution: a rank-deficient but consistent system (the
        # axis cross, whose xy row vanishes) still yields the symmetric weights
        w = np.linalg.lstsq(a, b, rcond=None)[0]
        if np.allclose(a @ w, b, atol=1e-9):
            return WeightSet(weights=tuple(w))
        pts = _three_nearest_distinct_quadrants(pts)
    if len(pts) != 3:
        raise InterpolationImpossible("no usable 3-point subset")
    a = np.vstack([pts[:, 0], pts[:, 1], np.ones(3)])
    w = _solve_partial_pivot(a, np.array([0.0, 0.0, 1.0]))
    if w is None:
        raise InterpolationImpossible("both 2-D weight systems are singular")
    return WeightSet(weights=tuple(w))


def _quadrant(dx: float, dy: float) -> int:
    return (0 if dx >= 0 else 1) + (0 if dy >= 0 else 2)


def _three_nearest_distinct_quadrants(pts: np.ndarray) -> np.ndarray:
    order = np.argsort(np.hypot(pts[:, 0], pts[:, 1]), kind="stable")
    chosen, seen = [], set()
    for k in order:
        q = _quadrant(*pts[k])
        if q not in seen:
            seen.add(q)
            chosen.append(k)
        if len(chosen) == 3:
            break
    return pts[chosen] if len(chosen) == 3 else pts[:0]


def shape_probability(p: float, shape_id: str) -> float:
    """Occurrence probability of a canonical neighbor shape at availability p."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if shape_id == "cross":
        return p ** 4
    if shape_id == "diagonal":
        return 4 * p ** 4 * (1 - p) * (2 - p)
    raise ValueError(f"unknown shape_id {shape_id!r}")


def _classify_shape(offsets: np.ndarray) -> tuple[float, ...] | None:
    """Cached weights for the cross / moved-to-diagonal shapes, else None."""
    if len(offsets) != 4:
        return None
    d = np.max(np.abs(offsets))
    if d <= 0:
        return None
    axis = {(d, 0.0), (-d, 0.0), (0.0, d), (0.0, -d)}
    pts = [tuple(map(float, q)) for q in offsets]
    if set(pts) == axis:
        return (0.25, 0.25, 0.25, 0.25)
    # one axis point moved to a diagonal corner at the same distance scale
    diag = [q for q in pts if abs(q[0]) == d and abs(q[1]) == d]
    rest = [q for q in pts if q not in diag]
    if len(diag) != 1 or len(set(rest)) != 3 or not set(rest) < axis:
        return None
    (missing_axis,) = axis - set(rest)
    weights = []
    for q in pts:
        if q in diag or q == tuple(-np.array(missing_axis)):
            weights.append(0.0)
        else:
            weights.append(0.5)
    return tuple(weights) if abs(sum(weights) - 1.0) < 1e-12 else None


def shape_cache_lookup(offsets) -> WeightSet | None:
    """Exact-match weights for a canonical shape; None means solve directly."""
    cached = _classify_shape(np.asarray(offsets, dtype=float))
    return WeightSet(weights=cached) if cached is not None else None


class BatchInterpolator:
    """Vectorized 1-D Lagrange interpolation over a fixed availability mask.

    Nearest neighbors come from a sorted available-index table (binary
    search), which reproduces the outward-scan semantics of
    :func:`find_neighbors_1d` including its smaller-index tie-break.
    """

    def __init__(self, mask: AvailabilityMask, values: np.ndarray, window: int):
        self.n = mask.n
        self.window = window
        self.flags = mask.flags
        self.avail = mask.available_indices()
        self.values = values
        if len(self.avail) < 3:
            raise InterpolationImpossible("fewer than 3 available samples overall")

    def interpolate(self, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Interpolate missing indices; returns (values, ok_flags).

        ``idx`` must contain only missing indices.  ``ok`` is False where the
        third-nearest neighbor falls outside the window.
        """
        idx = np.asarray(idx, dtype=np.int64)
        m, L, n = len(idx), len(self.avail), self.n
        pos = np.searchsorted(self.avail, idx)
        # six candidate neighbors around the insertion point, circularly
        k = np.arange(-3, 3)
        cand = (pos[:, None] + k[None, :]) % L
        cand_idx = self.avail[cand]
        # unwrap to the representative nearest the target
        delta = (cand_idx - idx[:, None] + n // 2) % n - n // 2
        positions = idx[:, None] + delta
        sort_key = np.abs(delta) + cand_idx / (2.0 * n)  # ties: smaller index
        order = np.argsort(sort_key, axis=1, kind="stable")[:, :3]
        rows = np.arange(m)[:, None]
        t123 = positions[rows, order].astype(float)
        v123 = self.values[cand_idx[rows, order]]
        ok = np.abs(delta[rows, order]).max(axis=1) <= self.window
        # distinct by construction (distinct available indices)
        t = idx.astype(float)
        t1, t2, t3 = t123[:, 0], t123[:, 1], t123[:, 2]
        w1 = (t - t2) * (t - t3) / ((t1 - t2) * (t1 - t3))
        w2 = (t - t1) * (t - t3) / ((t2 - t1) * (t2 - t3))
        w3 = (t - t2) * (t - t1) / ((t3 - t2) * (t3 - t1))
        vals = w1 * v123[:, 0] + w2 * v123[:, 1] + w3 * v123[:, 2]
        return vals, ok
