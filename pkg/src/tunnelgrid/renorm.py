"""Renormalization studies: subspace reductions and composite-mass sweeps.

Freezing axes at pinned values reduces the Hamiltonian dimension (the
rigid-lattice light-particle picture is the composite axis pinned at the
coincidence point).  Rescaling the composite mass m relative to the host
reference stretches that axis by sqrt(m/m_ref); equivalently the kinetic
coefficient of the axis is divided by m/m_ref.  Both routes are
implemented and must agree.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .constants import HBAR2_MEV_AMU_A2, MASS_NB
from .errors import (
    AxisInactive,
    InsufficientPoints,
    NonPositiveInput,
    NoActiveAxis,
    PinnedOutOfDomain,
)
from .grids import Axis, GridSpec
from .operator import GridOperator
from .potential import PotentialField


@dataclass(frozen=True)
class SubspaceSelection:
    """Active axes kept in a reduction, plus pinned values for the rest."""

    active: tuple
    pins: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.active:
            raise NoActiveAxis("subspace keeps no axes")


def subspace(fld: PotentialField, selection: SubspaceSelection) -> PotentialField:
    """Restrict a field to the active-axis hyperplane through the pins."""
    for lbl in selection.active:
        if lbl not in fld.labels:
            raise KeyError(f"field has no axis {lbl!r}")
    pins = {}
    for lbl in fld.labels:
        if lbl in selection.active:
            continue
        if lbl not in selection.pins:
            raise PinnedOutOfDomain(f"axis {lbl!r} needs a pinned value")
        pins[lbl] = float(selection.pins[lbl])
    for lbl, v in pins.items():
        lo, hi = fld.box[fld.labels.index(lbl)]
        if not (lo - 1e-12 <= v <= hi + 1e-12):
            raise PinnedOutOfDomain(
                f"pin {lbl}={v:g} outside [{lo:g}, {hi:g}]"
            )

    keep = [lbl for lbl in fld.labels if lbl in selection.active]
    keep_idx = [fld.labels.index(lbl) for lbl in keep]
    box = tuple(fld.box[i] for i in keep_idx)
    pin_vec = np.array([pins.get(lbl, 0.0) for lbl in fld.labels])
    n_full = len(fld.labels)

    def fn(points, _fld=fld, _keep=tuple(keep_idx), _pin=pin_vec, _n=n_full):
        pts = np.asarray(points, dtype=float)
        full = np.broadcast_to(_pin, pts.shape[:-1] + (_n,)).copy()
        for j, i in enumerate(_keep):
            full[..., i] = pts[..., j]
        return _fld.eval_many(full)

    hints = None
    if fld.well_hints is not None:
        hints = [w[keep_idx] for w in fld.well_hints]
    return PotentialField(tuple(keep), box, fn, well_hints=hints,
                          metadata=dict(fld.metadata, pins=pins))


@dataclass(frozen=True)
class MassRescale:
    """Composite-mass substitution m for the reference host mass."""

    m: float
    m_ref: float = MASS_NB

    def __post_init__(self):
        if self.m <= 0 or self.m_ref <= 0:
            raise NonPositiveInput("masses must be > 0")

    @property
    def factor(self) -> float:
        """Coordinate stretch sqrt(m / m_ref)."""
        return math.sqrt(self.m / self.m_ref)


def rescale_operator(op: GridOperator, rescale: MassRescale, axis="Q") -> GridOperator:
    """Kinetic-coefficient route: divide the axis kinetic term by m/m_ref."""
    axes = (axis,) if isinstance(axis, str) else tuple(axis)
    scale = dict(op.kinetic_scale)
    for lbl in axes:
        if lbl not in op.spec.labels or not op.spec.axis(lbl).active:
            raise AxisInactive(f"axis {lbl!r} is not active in the grid")
        scale[lbl] = scale[lbl] / (rescale.m / rescale.m_ref)
    return GridOperator(op.spec, op.potential_diag, order=op.order,
                        hbar2=op.hbar2, kinetic_scale=scale)


def stretch_field(fld: PotentialField, rescale: MassRescale, axis="Q"):
    """Coordinate-stretch route: widen the axis by sqrt(m/m_ref).

    Returns the stretched field; solve it on a grid whose axis range is
    stretched by the same factor (same counts) with the standard kinetic
    coefficient.
    """
    axes = (axis,) if isinstance(axis, str) else tuple(axis)
    for lbl in axes:
        if lbl not in fld.labels:
            raise AxisInactive(f"field has no axis {lbl!r}")
    s = rescale.factor
    idxs = [fld.labels.index(lbl) for lbl in axes]
    box = list(fld.box)
    for i in idxs:
        lo, hi = box[i]
        box[i] = (lo * s, hi * s)

    def fn(points, _fld=fld, _idxs=tuple(idxs), _s=s):
        pts = np.array(points, dtype=float, copy=True)
        for i in _idxs:
            pts[..., i] = pts[..., i] / _s
        return _fld.eval_many(pts)

    hints = None
    if fld.well_hints is not None:
        hints = []
        for w in fld.well_hints:
            w2 = np.array(w, dtype=float, copy=True)
            for i in idxs:
                w2[i] *= s
            hints.append(w2)
    return PotentialField(fld.labels, tuple(box), fn, well_hints=hints,
                          metadata=dict(fld.metadata))


def stretch_spec(spec: GridSpec, rescale: MassRescale, axis="Q") -> GridSpec:
    axes_l = (axis,) if isinstance(axis, str) else tuple(axis)
    s = rescale.factor
    out = []
    for a in spec.axes:
        if a.label in axes_l:
            if not a.active:
                raise AxisInactive(f"axis {a.label!r} is frozen")
            out.append(Axis(a.label, a.lo * s, a.hi * s, a.count))
        else:
            out.append(a)
    return GridSpec(out)


# ----------------------------------------------------------------------
# mass sweeps
# ----------------------------------------------------------------------

@dataclass
class SweepPoint:
    mass: float
    scale_factor: float
    J: float | None
    converged: bool


@dataclass
class MassSweepResult:
    points: list
    slope: float
    intercept: float
    r_squared: float
    m_ref: float

    @property
    def complete(self) -> bool:
        return all(p.converged for p in self.points)


def sweep_mass(solve_j, masses, m_ref: float = MASS_NB) -> MassSweepResult:
    """Tunnel splitting versus composite mass, with a log-linear fit.

    solve_j(mass) must return (J_mev, converged_flag).  Duplicate masses
    are dropped with a warning; at least three distinct masses are
    required.  The fit is unweighted least squares of ln J against
    sqrt(m/m_ref); unconverged points are excluded from it and flagged.
    """
    seen = set()
    unique = []
    for m in masses:
        if m in seen:
            warnings.warn(f"duplicate mass {m} amu dropped from sweep")
            continue
        seen.add(m)
        unique.append(float(m))
    if len(unique) < 3:
        raise InsufficientPoints(
            f"mass sweep needs >= 3 distinct masses, got {len(unique)}"
        )
    unique.sort()
    points = []
    for m in unique:
        J, conv = solve_j(m)
        points.append(SweepPoint(m, math.sqrt(m / m_ref),
                                 None if J is None else float(J), bool(conv)))
    xs = np.array([p.scale_factor for p in points if p.converged and p.J and p.J > 0])
    ys = np.log([p.J for p in points if p.converged and p.J and p.J > 0])
    if xs.size < 2:
        slope = intercept = r2 = float("nan")
    else:
        slope, intercept = np.polyfit(xs, ys, 1)
        pred = slope * xs + intercept
        ss_res = float(np.sum((ys - pred) ** 2))
        ss_tot = float(np.sum((ys - ys.mean()) ** 2))
        r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return MassSweepResult(points, float(slope), float(intercept), float(r2),
                           float(m_ref))


def harmonic_estimate(e_c: float, q_c: float,
                      hbar2: float = HBAR2_MEV_AMU_A2):
    """Harmonic frequency along the composite coordinate and the
    Gaussian amplitude ratio psi(Q_c)/psi(0).

    hbar*omega = sqrt(2 * hbar^2 * E_c) / Q_c; the ratio follows the
    Gaussian ground-state form psi ~ exp(-omega Q^2 / 2 hbar).
    """
    if e_c <= 0 or q_c <= 0:
        raise NonPositiveInput("E_c and Q_c must both be > 0")
    hbar_omega = math.sqrt(2.0 * hbar2 * e_c) / q_c
    exponent = hbar_omega * q_c**2 / (2.0 * hbar2)
    return hbar_omega, math.exp(-exponent)
