"""Rectangular solver grids in mass-weighted coordinates.

A grid axis is either active (count >= 2, spanning [lo, hi]) or frozen
(count == 1, pinned at a single coordinate value).  Frozen axes let the
same machinery run 1D-5D subspaces of one potential: the pinned value is
substituted when the potential is sampled and no kinetic term is applied
along that axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

MAX_ACTIVE_DIM = 5


@dataclass(frozen=True)
class Axis:
    label: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not self.label:
            raise ConfigError("axis label must be non-empty")
        if self.count < 1:
            raise ConfigError(f"axis {self.label!r}: count must be >= 1")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ConfigError(f"axis {self.label!r}: bounds must be finite")
        if self.count == 1:
            if self.lo != self.hi:
                raise ConfigError(
                    f"axis {self.label!r}: a frozen axis needs lo == hi (the pinned value)"
                )
        elif self.lo >= self.hi:
            raise ConfigError(f"axis {self.label!r}: requires lo < hi")

    @classmethod
    def frozen(cls, label: str, value: float) -> "Axis":
        return cls(label, value, value, 1)

    @property
    def active(self) -> bool:
        return self.count >= 2

    @property
    def pinned(self) -> float:
        if self.active:
            raise ConfigError(f"axis {self.label!r} is active, not pinned")
        return self.lo

    @property
    def spacing(self) -> float:
        if not self.active:
            raise ConfigError(f"axis {self.label!r} is frozen; no spacing")
        return (self.hi - self.lo) / (self.count - 1)

    def points(self) -> np.ndarray:
        if self.active:
            return np.linspace(self.lo, self.hi, self.count)
        return np.array([self.lo])


class GridSpec:
    """Ordered collection of axes defining a rectangular grid."""

    def __init__(self, axes):
        axes = tuple(axes)
        labels = [a.label for a in axes]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"duplicate axis labels in {labels}")
        ndim = sum(1 for a in axes if a.active)
        if not 1 <= ndim <= MAX_ACTIVE_DIM:
            raise ConfigError(
                f"active dimension must be 1..{MAX_ACTIVE_DIM}, got {ndim}"
            )
        self.axes = axes

    # -- basic geometry -------------------------------------------------
    @property
    def labels(self):
        return tuple(a.label for a in self.axes)

    @property
    def shape(self):
        return tuple(a.count for a in self.axes)

    @property
    def n_points(self) -> int:
        return int(np.prod(self.shape))

    @property
    def active_axes(self):
        return tuple(a for a in self.axes if a.active)

    @property
    def ndim_active(self) -> int:
        return len(self.active_axes)

    def axis(self, label: str) -> Axis:
        for a in self.axes:
            if a.label == label:
                return a
        raise KeyError(f"no axis labeled {label!r}")

    def axis_index(self, label: str) -> int:
        for i, a in enumerate(self.axes):
            if a.label == label:
                return i
        raise KeyError(f"no axis labeled {label!r}")

    def box(self):
        """Per-axis (lo, hi) bounds; frozen axes collapse to a point."""
        return tuple((a.lo, a.hi) for a in self.axes)

    # -- node coordinates ----------------------------------------------
    def points_1d(self):
        return [a.points() for a in self.axes]

    def nodes(self) -> np.ndarray:
        """All grid nodes as an (n_points, n_axes) array, C-order."""
        mesh = np.meshgrid(*self.points_1d(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def trapezoid_weights(self) -> np.ndarray:
        """Flat per-node quadrature weights (product trapezoid rule)."""
        per_axis = []
        for a in self.axes:
            if a.active:
                w = np.full(a.count, a.spacing)
                w[0] *= 0.5
                w[-1] *= 0.5
            else:
                w = np.ones(1)
            per_axis.append(w)
        total = per_axis[0]
        for w in per_axis[1:]:
            total = np.multiply.outer(total, w)
        return total.ravel()

    def refine(self, factor: int) -> "GridSpec":
        """Multiply each active axis count by an integer factor >= 1."""
        if int(factor) != factor or factor < 1:
            raise ConfigError(f"refinement factor must be a positive integer, got {factor}")
        axes = [
            Axis(a.label, a.lo, a.hi, a.count * int(factor)) if a.active else a
            for a in self.axes
        ]
        return GridSpec(axes)

    def with_counts(self, counts) -> "GridSpec":
        """Replace per-axis counts (frozen axes must keep count 1)."""
        if len(counts) != len(self.axes):
            raise ConfigError("count list length must match axis count")
        axes = []
        for a, c in zip(self.axes, counts):
            if not a.active and c != 1:
                raise ConfigError(f"axis {a.label!r} is frozen; count must stay 1")
            axes.append(Axis(a.label, a.lo, a.hi, int(c)))
        return GridSpec(axes)

    def __repr__(self):
        parts = ", ".join(
            f"{a.label}:[{a.lo:g},{a.hi:g}]x{a.count}" if a.active else f"{a.label}@{a.lo:g}"
            for a in self.axes
        )
        return f"GridSpec({parts})"
