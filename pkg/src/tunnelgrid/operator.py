"""Discretized Hamiltonian: finite-difference kinetic stencil + diagonal potential.

The operator is matrix-free and symmetric: central differences of order 2
or 4 along each active grid axis (Dirichlet-zero outside the box) with
the potential sampled onto the diagonal.  Per-axis kinetic scale factors
support composite-mass rescaling without touching the potential.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .constants import HBAR2_MEV_AMU_A2
from .errors import DomainMismatch, LengthMismatch, OrderUnsupported, OutOfDomain, TargetExceedsDomain
from .grids import GridSpec

_STENCILS = {
    # order -> (diag, first-neighbor, second-neighbor) of -(1/2) d^2/dx^2, unit spacing
    2: (1.0, -0.5, 0.0),
    4: (30.0 / 24.0, -16.0 / 24.0, 1.0 / 24.0),
}


class GridOperator:
    """Symmetric matrix-free Hamiltonian on a GridSpec."""

    def __init__(self, spec: GridSpec, potential_diag, order: int = 2,
                 hbar2: float = HBAR2_MEV_AMU_A2, kinetic_scale=None):
        if order not in _STENCILS:
            raise OrderUnsupported(f"stencil order {order} not in {sorted(_STENCILS)}")
        diag = np.ascontiguousarray(potential_diag, dtype=float).ravel()
        if diag.size != spec.n_points:
            raise DomainMismatch(
                f"potential has {diag.size} values, grid has {spec.n_points} points"
            )
        if not np.all(np.isfinite(diag)):
            raise DomainMismatch("potential diagonal contains non-finite values")
        self.spec = spec
        self.potential_diag = diag
        self.order = order
        self.hbar2 = float(hbar2)
        if kinetic_scale is None:
            kinetic_scale = {}
        self.kinetic_scale = {
            label: float(kinetic_scale.get(label, 1.0)) for label in spec.labels
        }

        # per-axis plan: (pre, n, post, c1, c2); diagonal terms folded into
        # one combined diagonal so apply() makes a single diagonal pass
        shape = spec.shape
        d0, d1, d2 = _STENCILS[order]
        plan = []
        diag_total = diag.copy()
        for i, ax in enumerate(spec.axes):
            if not ax.active:
                continue
            h = ax.spacing
            scale = self.hbar2 * self.kinetic_scale[ax.label] / h**2
            pre = int(np.prod(shape[:i], dtype=np.int64))
            post = int(np.prod(shape[i + 1:], dtype=np.int64))
            diag_total += d0 * scale
            plan.append((pre, ax.count, post, d1 * scale, d2 * scale))
        self._plan = tuple(plan)
        self._diag_total = diag_total

    @property
    def n(self) -> int:
        return self.spec.n_points

    @property
    def shape(self):
        return (self.n, self.n)

    def apply(self, state: np.ndarray) -> np.ndarray:
        """Matrix-free H @ state; safe for concurrent read-only use."""
        u = np.ascontiguousarray(state, dtype=float).ravel()
        if u.size != self.n:
            raise LengthMismatch(f"state has {u.size} entries, grid has {self.n}")
        out = np.empty_like(u)
        kernels.diag_apply(u, self._diag_total, out)
        for pre, n, post, c1, c2 in self._plan:
            kernels.add_neighbors_axis(u, out, pre, n, post, c1, c2)
        return out

    # alias used by iterative solvers
    matvec = apply

    def rayleigh(self, state) -> float:
        u = np.asarray(state, dtype=float).ravel()
        return float(u @ self.apply(u) / (u @ u))

    def to_coo(self):
        """Explicit (rows, cols, values) triplets of the operator."""
        n = self.n
        shape = self.spec.shape
        idx = np.arange(n).reshape(shape)
        rows = [np.arange(n)]
        cols = [np.arange(n)]
        vals = [self._diag_total.copy()]
        axis_i = [i for i, a in enumerate(self.spec.axes) if a.active]
        for (pre, cnt, post, c1, c2), ai in zip(self._plan, axis_i):
            for off, c in ((1, c1), (2, c2)):
                if c == 0.0 or cnt <= off:
                    continue
                lo = [slice(None)] * len(shape)
                hi = [slice(None)] * len(shape)
                lo[ai] = slice(None, -off)
                hi[ai] = slice(off, None)
                a = idx[tuple(lo)].ravel()
                b = idx[tuple(hi)].ravel()
                rows += [a, b]
                cols += [b, a]
                vals += [np.full(a.size, c), np.full(a.size, c)]
        return (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))

    def to_sparse(self):
        from scipy.sparse import coo_matrix

        r, c, v = self.to_coo()
        return coo_matrix((v, (r, c)), shape=self.shape).tocsr()

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def dump_stencil(self, path):
        """Write the operator as 'row,col,value' triplet text."""
        r, c, v = self.to_coo()
        order = np.lexsort((c, r))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("# row,col,value\n")
            for i in order:
                fh.write(f"{r[i]},{c[i]},{v[i]!r}\n")


def assemble(field, spec: GridSpec, order: int = 2,
             hbar2: float = HBAR2_MEV_AMU_A2, kinetic_scale=None) -> GridOperator:
    """Sample the field at the grid nodes and build the Hamiltonian."""
    if order not in _STENCILS:
        raise OrderUnsupported(f"stencil order {order} not in {sorted(_STENCILS)}")
    try:
        diag = field.sample(spec)
    except (OutOfDomain, TargetExceedsDomain, KeyError) as exc:
        raise DomainMismatch(str(exc)) from exc
    return GridOperator(spec, diag, order=order, hbar2=hbar2,
                        kinetic_scale=kinetic_scale)


def boundary_shell_probability(state, spec: GridSpec) -> float:
    """Probability mass on the outermost grid layer (active axes).

    States of a well-posed bound problem should have negligible weight
    here; the solve pipeline warns above 1e-6.
    """
    u = np.asarray(state, dtype=float).reshape(spec.shape)
    w = spec.trapezoid_weights().reshape(spec.shape)
    dens = u**2 * w
    total = dens.sum()
    mask = np.zeros(spec.shape, dtype=bool)
    for i, ax in enumerate(spec.axes):
        if not ax.active:
            continue
        sl = [slice(None)] * len(spec.shape)
        sl[i] = 0
        mask[tuple(sl)] = True
        sl[i] = ax.count - 1
        mask[tuple(sl)] = True
    return float(dens[mask].sum() / total)
