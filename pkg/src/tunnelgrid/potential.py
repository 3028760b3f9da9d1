"""Potential-energy fields over mass-weighted grids.

Two field sources are supported: analytic model potentials (the canonical
coupled double well and friends, used as benchmark surrogates) and
sampled data ingested from disk, mapped onto solver grids by
tensor-product cubic splines (not-a-knot ends).  Landscape scalars --
well minima, the coincidence point of the two wells' composite-coordinate
energy curves, and the symmetric barrier height -- are extracted here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.optimize import brentq

from .errors import (
    MissingQAxis,
    NoBarrier,
    NoCrossing,
    OutOfDomain,
    SingleWell,
    TargetExceedsDomain,
)
from .grids import Axis, GridSpec

_DOMAIN_SLACK = 1e-9  # relative slack when checking box membership

# default per-axis scan counts used to locate wells, by dimensionality
_SCAN_COUNTS = {1: 401, 2: 81, 3: 31, 4: 17, 5: 11}


class PotentialField:
    """Evaluator over continuous mass-weighted coordinates.

    labels fixes the coordinate order; box is the rectangular domain.
    Evaluation outside the box raises OutOfDomain.  Instances are
    immutable after construction and safe for concurrent evaluation.
    """

    def __init__(self, labels, box, fn, well_hints=None, metadata=None):
        self.labels = tuple(labels)
        self.box = tuple((float(lo), float(hi)) for lo, hi in box)
        if len(self.labels) != len(self.box):
            raise ValueError("one (lo, hi) pair per label required")
        self._fn = fn
        self.well_hints = None if well_hints is None else [
            np.asarray(w, dtype=float) for w in well_hints
        ]
        self.metadata = dict(metadata or {})

    @property
    def ndim(self) -> int:
        return len(self.labels)

    def _check_domain(self, pts):
        for d, (lo, hi) in enumerate(self.box):
            slack = _DOMAIN_SLACK * max(abs(lo), abs(hi), 1.0)
            x = pts[..., d]
            if np.any(x < lo - slack) or np.any(x > hi + slack):
                bad = float(x.flat[np.argmax((x < lo - slack) | (x > hi + slack))])
                raise OutOfDomain(
                    f"coordinate {self.labels[d]}={bad:g} outside [{lo:g}, {hi:g}]"
                )

    def eval(self, point) -> float:
        pt = np.asarray(point, dtype=float).reshape(self.ndim)
        self._check_domain(pt[None, :])
        return float(self._fn(pt[None, :])[0])

    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.shape[-1] != self.ndim:
            raise ValueError(f"points must have last dim {self.ndim}")
        self._check_domain(pts)
        return np.asarray(self._fn(pts), dtype=float)

    def sample(self, spec: GridSpec) -> np.ndarray:
        """Field values at all grid nodes of spec, flattened C-order."""
        if spec.labels != self.labels:
            missing = set(spec.labels) - set(self.labels)
            if missing:
                raise KeyError(f"grid labels {missing} not in field {self.labels}")
            # allow reordered / subset grids only via renorm.subspace
            raise KeyError(
                f"grid labels {spec.labels} must match field labels {self.labels}"
            )
        return self.eval_many(spec.nodes())

    def clipped(self, box) -> "PotentialField":
        """Same evaluator restricted to a smaller domain box."""
        box = tuple((float(lo), float(hi)) for lo, hi in box)
        for (lo, hi), (flo, fhi) in zip(box, self.box):
            slack = _DOMAIN_SLACK * max(abs(flo), abs(fhi), 1.0)
            if lo < flo - slack or hi > fhi + slack:
                raise TargetExceedsDomain(
                    f"[{lo:g},{hi:g}] exceeds field domain [{flo:g},{fhi:g}]"
                )
        return PotentialField(self.labels, box, self._fn,
                              well_hints=self.well_hints, metadata=self.metadata)


@dataclass
class SampledPotential:
    """Energies on a rectangular grid, re-referenced so the minimum is 0."""

    spec: GridSpec
    energies: np.ndarray
    metadata: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float).reshape(self.spec.shape)
        if not np.all(np.isfinite(e)):
            raise ValueError("sampled energies contain non-finite values")
        e = e - e.min()
        self.energies = e

    def as_field(self) -> PotentialField:
        """Cubic-spline field over the full sampled box."""
        return interpolate(self, GridSpec(self.spec.axes))


def interpolate(sampled: SampledPotential, target: GridSpec) -> PotentialField:
    """Tensor-product cubic-spline field over the target box.

    The target box must lie inside the sampled box; frozen target axes
    must pin a coordinate the sample provides.  Knot values are
    reproduced exactly (to solver round-off, far below 1e-9 meV).
    """
    if target.labels != sampled.spec.labels:
        raise TargetExceedsDomain(
            f"target labels {target.labels} != sample labels {sampled.spec.labels}"
        )
    for t, s in zip(target.axes, sampled.spec.axes):
        slack = _DOMAIN_SLACK * max(abs(s.lo), abs(s.hi), 1.0)
        if t.lo < s.lo - slack or t.hi > s.hi + slack:
            raise TargetExceedsDomain(
                f"axis {t.label!r}: target [{t.lo:g},{t.hi:g}] exceeds "
                f"sampled [{s.lo:g},{s.hi:g}]"
            )

    active = [i for i, a in enumerate(sampled.spec.axes) if a.active]
    frozen = [i for i, a in enumerate(sampled.spec.axes) if not a.active]
    pts = [sampled.spec.axes[i].points() for i in active]
    values = sampled.energies
    if frozen:
        values = values.reshape([sampled.spec.axes[i].count for i in active])
    for i in active:
        if sampled.spec.axes[i].count < 4:
            raise TargetExceedsDomain(
                f"axis {sampled.spec.axes[i].label!r}: cubic interpolation "
                f"needs >= 4 samples, got {sampled.spec.axes[i].count}"
            )

    interp = RegularGridInterpolator(tuple(pts), values, method="cubic",
                                     bounds_error=False, fill_value=None)

    def fn(points, _interp=interp, _active=tuple(active)):
        pts_nd = np.asarray(points, dtype=float)
        flat = pts_nd.reshape(-1, pts_nd.shape[-1])
        out = _interp(flat[:, _active])
        return out.reshape(pts_nd.shape[:-1])

    return PotentialField(target.labels, target.box(), fn,
                          metadata=dict(sampled.metadata))


# ----------------------------------------------------------------------
# analytic model potentials
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoupledDoubleWell:
    """Canonical coupled double well over (qx, qy, qz, Q).

    V = V_b [(qy/a)^2 - 1]^2 + k_Q (Q - Q0)^2 / 2 + g qy (Q - Q0)
        + k_x qx^2 (1 + beta_x qy^2 / a^2) / 2
        + k_z qz^2 (1 + beta_z qy^2 / a^2) / 2
        - (well offset)

    The bilinear g coupling lets the lattice coordinate relax differently
    in the two wells; the beta terms modulate the transverse stiffness
    along the tunneling path.  Energies are referenced so the two
    (numerically verified) degenerate minima sit at exactly 0.
    """

    V_b: float
    a: float
    k_Q: float
    g: float = 0.0
    k_x: float = 0.0
    k_z: float = 0.0
    beta_x: float = 0.0
    beta_z: float = 0.0
    Q0: float = 0.0

    def __post_init__(self):
        if self.V_b <= 0 or self.a <= 0 or self.k_Q <= 0:
            raise ValueError("V_b, a and k_Q must all be > 0")
        if self.k_x < 0 or self.k_z < 0:
            raise ValueError("transverse stiffnesses must be >= 0")

    # analytic well geometry
    @property
    def eta(self) -> float:
        return self.g**2 * self.a**2 / (4 * self.V_b * self.k_Q)

    @property
    def qy_well(self) -> float:
        return self.a * np.sqrt(1 + self.eta)

    @property
    def dQ_well(self) -> float:
        """Composite-coordinate offset of each well from Q0."""
        return self.g * self.qy_well / self.k_Q

    @property
    def Q_lr(self) -> float:
        return 2 * abs(self.dQ_well)

    @property
    def well_offset(self) -> float:
        qs = self.qy_well
        return (self.V_b * self.eta**2
                - self.g**2 * qs**2 / (2 * self.k_Q))

    def wells(self):
        qs, dq = self.qy_well, self.dQ_well
        return (np.array([0.0, -qs, 0.0, self.Q0 + dq]),
                np.array([0.0, +qs, 0.0, self.Q0 - dq]))

    def raw(self, qx, qy, qz, Q):
        u2 = (qy / self.a) ** 2
        dQ = Q - self.Q0
        v = self.V_b * (u2 - 1.0) ** 2
        v = v + 0.5 * self.k_Q * dQ**2 + self.g * qy * dQ
        v = v + 0.5 * self.k_x * qx**2 * (1.0 + self.beta_x * u2)
        v = v + 0.5 * self.k_z * qz**2 * (1.0 + self.beta_z * u2)
        return v

    def default_box(self):
        """Domain box following the usual subgrid margins: transverse
        axes span +-(half separation), the tunneling axis extends half a
        separation past each well, the composite axis two inter-well
        distances past each well."""
        qs = self.qy_well
        half = qs
        dq = abs(self.dQ_well)
        qlr = max(self.Q_lr, 1e-3 * self.a)
        return (
            (-half, half),
            (-2 * qs, 2 * qs),
            (-half, half),
            (self.Q0 - dq - 2 * qlr, self.Q0 + dq + 2 * qlr),
        )

    def field(self, box=None) -> PotentialField:
        box = self.default_box() if box is None else box
        # transverse stiffness must stay positive across the box
        u2max = max(box[1][0] ** 2, box[1][1] ** 2) / self.a**2
        for beta, name in ((self.beta_x, "beta_x"), (self.beta_z, "beta_z")):
            if 1.0 + beta * u2max <= 0:
                raise ValueError(f"{name}={beta} makes a transverse stiffness "
                                 f"non-positive inside the box")
        offset = self.well_offset
        w1, w2 = self.wells()

        def fn(points):
            p = np.asarray(points, dtype=float)
            return (self.raw(p[..., 0], p[..., 1], p[..., 2], p[..., 3])
                    - offset)

        fld = PotentialField(("qx", "qy", "qz", "Q"), box, fn,
                             well_hints=[w1, w2])
        _verify_degenerate_minima(fld, [w1, w2])
        return fld


@dataclass(frozen=True)
class FourWellModel:
    """Four degenerate wells over (qx, qy, qz, S, T).

    Two quartic double wells place the light particle at the corners
    (+-a, +-a); each lattice coordinate couples bilinearly to one particle
    axis, so the host relaxes into four distinct configurations.  qz is a
    harmonic spectator.
    """

    V_b: float
    a: float
    k_L: float
    g: float = 0.0
    g_T: float | None = None   # defaults to g; set 0 to merge T wells
    k_z: float = 0.0
    S0: float = 0.0
    T0: float = 0.0

    def __post_init__(self):
        if self.V_b <= 0 or self.a <= 0 or self.k_L <= 0:
            raise ValueError("V_b, a and k_L must all be > 0")

    @property
    def _gT(self) -> float:
        return self.g if self.g_T is None else self.g_T

    def _geom(self, g):
        eta = g**2 * self.a**2 / (4 * self.V_b * self.k_L)
        q = self.a * np.sqrt(1 + eta)
        return q, g * q / self.k_L

    def wells(self):
        qx, dS = self._geom(self.g)
        qy, dT = self._geom(self._gT)
        out = []
        for sx in (-1, 1):
            for sy in (-1, 1):
                out.append(np.array([sx * qx, sy * qy, 0.0,
                                     self.S0 - sx * dS, self.T0 - sy * dT]))
        return out

    def raw(self, qx, qy, qz, S, T):
        dS, dT = S - self.S0, T - self.T0
        v = self.V_b * ((qx / self.a) ** 2 - 1.0) ** 2
        v = v + self.V_b * ((qy / self.a) ** 2 - 1.0) ** 2
        v = v + 0.5 * self.k_L * (dS**2 + dT**2)
        v = v + self.g * qx * dS + self._gT * qy * dT
        v = v + 0.5 * self.k_z * qz**2
        return v

    def default_box(self):
        qx, dS = self._geom(self.g)
        qy, dT = self._geom(self._gT)
        mx, my = qx, qy
        ls = max(2 * abs(dS), 0.3 * self.a)
        lt = max(2 * abs(dT), 0.3 * self.a)
        return (
            (-qx - mx, qx + mx),
            (-qy - my, qy + my),
            (-0.5 * self.a, 0.5 * self.a),
            (self.S0 - abs(dS) - 2 * ls, self.S0 + abs(dS) + 2 * ls),
            (self.T0 - abs(dT) - 2 * lt, self.T0 + abs(dT) + 2 * lt),
        )

    def field(self, box=None) -> PotentialField:
        box = self.default_box() if box is None else box
        wells = self.wells()
        offset = float(self.raw(*wells[0]))

        def fn(points):
            p = np.asarray(points, dtype=float)
            return (self.raw(p[..., 0], p[..., 1], p[..., 2],
                             p[..., 3], p[..., 4]) - offset)

        fld = PotentialField(("qx", "qy", "qz", "S", "T"), box, fn,
                             well_hints=wells)
        _verify_degenerate_minima(fld, wells)
        return fld

    def tls_field(self, pin_sym=0.0) -> PotentialField:
        """Two-well restriction: rotate (S, T) into the symmetric and
        antisymmetric lattice combinations and pin the symmetric one.

        The surviving coordinate Qc = (S~ - T~)/sqrt(2) connects the two
        opposite corners that stay degenerate under the pin."""
        inv = 1.0 / np.sqrt(2.0)
        sbox, tbox = self.default_box()[3], self.default_box()[4]
        half = 0.5 * ((sbox[1] - sbox[0]) + (tbox[1] - tbox[0])) * 0.5
        box = self.default_box()[:3] + ((-half, half),)
        qx, dS = self._geom(self.g)
        qy, dT = self._geom(self._gT)
        offset = float(self.raw(*self.wells()[0]))

        def fn(points):
            p = np.asarray(points, dtype=float)
            qc = p[..., 3]
            s = self.S0 + (pin_sym + qc) * inv
            t = self.T0 + (pin_sym - qc) * inv
            return self.raw(p[..., 0], p[..., 1], p[..., 2], s, t) - offset

        w1 = np.array([+qx, -qy, 0.0, -(dS + dT) / np.sqrt(2.0)])
        w2 = np.array([-qx, +qy, 0.0, +(dS + dT) / np.sqrt(2.0)])
        return PotentialField(("qx", "qy", "qz", "Qc"), box, fn,
                              well_hints=[w1, w2])


@dataclass(frozen=True)
class SeparableHarmonic:
    """Sum of independent parabolas, one per labeled axis."""

    stiffness: tuple
    labels: tuple
    centers: tuple | None = None

    def field(self, box) -> PotentialField:
        k = np.asarray(self.stiffness, dtype=float)
        c = (np.zeros(len(k)) if self.centers is None
             else np.asarray(self.centers, dtype=float))

        def fn(points):
            p = np.asarray(points, dtype=float)
            return 0.5 * np.sum(k * (p - c) ** 2, axis=-1)

        return PotentialField(self.labels, box, fn, well_hints=[c])


def _verify_degenerate_minima(fld, wells, tol=1e-6):
    vals = [fld.eval(w) for w in wells]
    spread = max(vals) - min(vals)
    if spread > tol:
        raise ValueError(f"well energies not degenerate: spread {spread:.3e} meV")
    # each hinted well must be a genuine local minimum
    for w in wells:
        x, v = refine_minimum(fld, w)
        if np.linalg.norm(x - w) > 1e-3 * (1 + np.linalg.norm(w)):
            raise ValueError("a model well drifted under polishing; "
                             "parameters do not produce the expected minima")


# ----------------------------------------------------------------------
# well location
# ----------------------------------------------------------------------

def refine_minimum(fld: PotentialField, start, tol_e=1e-6, max_sweeps=200):
    """Descend from start by cyclic per-axis quadratic steps.

    Fits a parabola through (x-h, x, x+h) per axis, moves to its vertex
    (clamped inside the box), shrinking h as the bracket tightens; stops
    when a full sweep improves the energy by less than tol_e meV.
    """
    x = np.asarray(start, dtype=float).copy()
    lo = np.array([b[0] for b in fld.box])
    hi = np.array([b[1] for b in fld.box])
    x = np.clip(x, lo, hi)
    span = hi - lo
    h = np.where(span > 0, span / 40.0, 0.0)
    v = fld.eval(x)
    for _ in range(max_sweeps):
        v_before = v
        for d in range(len(x)):
            if span[d] == 0 or h[d] == 0:
                continue
            hd = h[d]
            xm = max(lo[d], x[d] - hd)
            xp = min(hi[d], x[d] + hd)
            if xp - xm <= 0:
                continue
            pm, pp = x.copy(), x.copy()
            pm[d], pp[d] = xm, xp
            vm, vp = fld.eval(pm), fld.eval(pp)
            denom = (vm - v) * (x[d] - xp) - (vp - v) * (x[d] - xm)
            if denom != 0:
                num = ((vm - v) * (x[d] - xp) ** 2
                       - (vp - v) * (x[d] - xm) ** 2)
                cand = x[d] - 0.5 * num / denom
            else:
                cand = x[d]
            cand = min(max(cand, max(lo[d], x[d] - 2 * hd)),
                       min(hi[d], x[d] + 2 * hd))
            trial = x.copy()
            trial[d] = cand
            vt = fld.eval(trial)
            best = min((v, x[d]), (vm, xm), (vp, xp), (vt, cand))
            if best[0] < v:
                x[d] = best[1]
                v = best[0]
            # tighten the bracket once the vertex stays interior
            if vm > v and vp > v:
                h[d] = max(hd * 0.5, 1e-9 * max(span[d], 1.0))
        if v_before - v < tol_e and np.all(h <= span / 160.0 + 1e-300):
            break
    return x, v


def grid_local_minima(values_nd) -> list:
    """Index tuples of grid points strictly below all axis-neighbors."""
    v = np.asarray(values_nd)
    mask = np.ones(v.shape, dtype=bool)
    for d in range(v.ndim):
        sl_lo = [slice(None)] * v.ndim
        sl_hi = [slice(None)] * v.ndim
        sl_lo[d] = slice(1, None)
        sl_hi[d] = slice(None, -1)
        m = np.ones(v.shape, dtype=bool)
        m[tuple(sl_lo)] &= v[tuple(sl_lo)] < v[tuple(sl_hi)]
        m[tuple(sl_hi)] &= v[tuple(sl_hi)] < v[tuple(sl_lo)]
        mask &= m
    return [tuple(idx) for idx in np.argwhere(mask)]


def find_wells(fld: PotentialField, n_wells=2, scan_counts=None):
    """The n_wells lowest local minima of the field, polished.

    Uses the field's analytic well hints when present, otherwise scans a
    rectangular probe grid.  Returns a list of (coords, energy) sorted by
    energy; raises SingleWell when fewer than n_wells distinct minima
    exist.
    """
    candidates = []
    if fld.well_hints is not None:
        candidates = [np.asarray(w, float) for w in fld.well_hints]
    else:
        ndim = fld.ndim
        count = scan_counts or _SCAN_COUNTS.get(ndim, 9)
        axes = [Axis(lbl, lo, hi, count) for lbl, (lo, hi) in zip(fld.labels, fld.box)]
        spec = GridSpec(axes)
        vals = fld.sample(spec).reshape(spec.shape)
        idxs = grid_local_minima(vals)
        pts = spec.points_1d()
        candidates = [np.array([pts[d][i[d]] for d in range(len(pts))])
                      for i in idxs]
        candidates.sort(key=lambda c: fld.eval(c))
        candidates = candidates[: max(4 * n_wells, 8)]

    polished = []
    diag = np.linalg.norm([hi - lo for lo, hi in fld.box])
    for c in candidates:
        x, v = refine_minimum(fld, c)
        if all(np.linalg.norm(x - px) > 1e-4 * diag for px, _ in polished):
            polished.append((x, v))
    polished.sort(key=lambda t: t[1])
    if len(polished) < n_wells:
        raise SingleWell(
            f"found {len(polished)} distinct minima, need {n_wells}"
        )
    return polished[:n_wells]


# ----------------------------------------------------------------------
# landscape scalars
# ----------------------------------------------------------------------

def coincidence(fld: PotentialField, frame=None, tunneling_axis="qy",
                composite_axis="Q", wells=None):
    """Composite coordinate and energy where the two wells' curves meet.

    With the light-particle coordinates clamped at each well in turn, the
    two energy curves V(q_well1, Q) and V(q_well2, Q) intersect at Q_c;
    the common energy above the well bottom is the effective coincidence
    energy.  Returns (Q_c, E_c_prime).
    """
    if composite_axis not in fld.labels:
        raise MissingQAxis(
            f"field has no {composite_axis!r} axis (labels {fld.labels})"
        )
    iq = fld.labels.index(composite_axis)
    if wells is None:
        wells = find_wells(fld, n_wells=2)
    (w1, v1), (w2, v2) = wells
    q1, q2 = w1[iq], w2[iq]

    def diff(Q):
        p1, p2 = w1.copy(), w2.copy()
        p1[iq] = Q
        p2[iq] = Q
        return fld.eval(p1) - fld.eval(p2)

    lo_q, hi_q = min(q1, q2), max(q1, q2)
    if hi_q - lo_q < 1e-12:
        Qc = q1
    else:
        f_lo, f_hi = diff(lo_q), diff(hi_q)
        if f_lo == 0.0:
            Qc = lo_q
        elif f_hi == 0.0:
            Qc = hi_q
        elif f_lo * f_hi < 0:
            Qc = brentq(diff, lo_q, hi_q, xtol=1e-13, rtol=1e-15)
        else:
            # scan the interior for a bracket before giving up
            qs = np.linspace(lo_q, hi_q, 101)
            vals = [diff(q) for q in qs]
            Qc = None
            for i in range(len(qs) - 1):
                if vals[i] == 0.0:
                    Qc = qs[i]
                    break
                if vals[i] * vals[i + 1] < 0:
                    Qc = brentq(diff, qs[i], qs[i + 1], xtol=1e-13, rtol=1e-15)
                    break
            if Qc is None:
                raise NoCrossing(
                    "the two wells' composite-coordinate curves do not "
                    "intersect between their minima"
                )
    p = w1.copy()
    p[iq] = Qc
    e_c_prime = fld.eval(p) - min(v1, v2)
    return float(Qc), float(e_c_prime)


def barrier_height(fld: PotentialField, frame=None, tunneling_axis="qy",
                   composite_axis="Q", wells=None):
    """Symmetric barrier: saddle value along the inter-well path.

    The composite coordinate is held at the coincidence point while the
    barrier top is located along the tunneling axis; remaining transverse
    coordinates are relaxed to their stationary values by alternating
    1-D maximization (tunneling axis) and minimization (transverse).
    Returned relative to the well bottom.
    """
    if tunneling_axis not in fld.labels:
        raise MissingQAxis(f"field has no {tunneling_axis!r} axis")
    iy = fld.labels.index(tunneling_axis)
    if wells is None:
        wells = find_wells(fld, n_wells=2)
    (w1, v1), (w2, v2) = wells
    v_well = min(v1, v2)

    x = 0.5 * (w1 + w2)
    if composite_axis in fld.labels:
        iq = fld.labels.index(composite_axis)
        Qc, _ = coincidence(fld, tunneling_axis=tunneling_axis,
                            composite_axis=composite_axis, wells=wells)
        x[iq] = Qc
        frozen = {iq}
    else:
        frozen = set()

    y_lo, y_hi = sorted((w1[iy], w2[iy]))

    def max_along_y(base):
        ys = np.linspace(y_lo, y_hi, 201)
        pts = np.tile(base, (ys.size, 1))
        pts[:, iy] = ys
        vals = fld.eval_many(pts)
        j = int(np.argmax(vals))
        if j in (0, ys.size - 1):
            return None, None
        # quadratic polish of the maximum
        yl, y0, yr = ys[j - 1], ys[j], ys[j + 1]
        vl, v0, vr = vals[j - 1], vals[j], vals[j + 1]
        denom = (vl - v0) * (y0 - yr) - (vr - v0) * (y0 - yl)
        if denom != 0:
            y0 = y0 - 0.5 * ((vl - v0) * (y0 - yr) ** 2
                             - (vr - v0) * (y0 - yl) ** 2) / denom
            y0 = min(max(y0, yl), yr)
        p = base.copy()
        p[iy] = y0
        return y0, fld.eval(p)

    v_top = None
    for _ in range(60):
        y_star, v_new = max_along_y(x)
        if y_star is None:
            raise NoBarrier("potential is monotone between the wells")
        x[iy] = y_star
        # relax transverse coordinates at the barrier top
        trans = [d for d in range(fld.ndim) if d not in frozen and d != iy]
        if trans:
            sub = _frozen_axis_polish(fld, x, trans)
            x = sub
        v_relaxed = fld.eval(x)
        if v_top is not None and abs(v_relaxed - v_top) < 1e-8:
            v_top = v_relaxed
            break
        v_top = v_relaxed
    if v_top <= v_well + 1e-12:
        raise NoBarrier("no barrier above the well energy")
    return float(v_top - v_well)


def _frozen_axis_polish(fld, x0, free_dims, tol_e=1e-9, max_sweeps=80):
    """Minimize over a subset of axes with the rest held fixed."""
    x = x0.copy()
    lo = np.array([b[0] for b in fld.box])
    hi = np.array([b[1] for b in fld.box])
    span = hi - lo
    h = {d: span[d] / 40.0 for d in free_dims}
    v = fld.eval(x)
    for _ in range(max_sweeps):
        v_before = v
        for d in free_dims:
            if span[d] == 0:
                continue
            hd = h[d]
            xm, xp = max(lo[d], x[d] - hd), min(hi[d], x[d] + hd)
            pm, pp = x.copy(), x.copy()
            pm[d], pp[d] = xm, xp
            vm, vp = fld.eval(pm), fld.eval(pp)
            denom = (vm - v) * (x[d] - xp) - (vp - v) * (x[d] - xm)
            cand = x[d]
            if denom != 0:
                cand = x[d] - 0.5 * ((vm - v) * (x[d] - xp) ** 2
                                     - (vp - v) * (x[d] - xm) ** 2) / denom
                cand = min(max(cand, xm), xp)
            pt = x.copy()
            pt[d] = cand
            vt = fld.eval(pt)
            best = min((v, x[d]), (vm, xm), (vp, xp), (vt, cand))
            if best[0] < v:
                v, x[d] = best[0], best[1]
            if vm > v and vp > v:
                h[d] = max(hd * 0.5, 1e-10 * max(span[d], 1.0))
        if v_before - v < tol_e:
            break
    return x
