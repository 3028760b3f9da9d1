"""Strain coupling and discrete few-level defect Hamiltonians.

The well-to-well asymmetry of a tunneling defect under macroscopic strain
is the double contraction of the elastic-dipole difference with the
strain tensor.  Biased two-site and ring four-site models give the level
structures; the grid route solves the full four-well field and compares
against the ring model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .constants import MEV_PER_EV
from .errors import (
    FourWellsNotFound,
    NonPositiveEpsilon,
    OrthogonalStrainDirection,
)

_VOIGT = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))


def _sym3(matrix, name):
    m = np.asarray(matrix, dtype=float).reshape(3, 3)
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return 0.5 * (m + m.T)


@dataclass(frozen=True)
class ElasticDipole:
    """Symmetric 3x3 elastic dipole tensor, eV (per site/orientation)."""

    P: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "P", _sym3(self.P, "elastic dipole"))

    @classmethod
    def from_voigt(cls, row) -> "ElasticDipole":
        r = np.asarray(row, dtype=float).reshape(6)
        m = np.zeros((3, 3))
        for v, (i, j) in enumerate(_VOIGT):
            m[i, j] = r[v]
            m[j, i] = r[v]
        return cls(m)


@dataclass(frozen=True)
class StrainTensor:
    """Symmetric dimensionless strain; sanity-bounded at |eps| < 0.1."""

    eps: np.ndarray

    def __post_init__(self):
        e = _sym3(self.eps, "strain")
        if np.max(np.abs(e)) >= 0.1:
            raise ValueError("strain components must satisfy |eps| < 0.1")
        object.__setattr__(self, "eps", e)

    @classmethod
    def from_voigt(cls, row) -> "StrainTensor":
        r = np.asarray(row, dtype=float).reshape(6)
        m = np.zeros((3, 3))
        for v, (i, j) in enumerate(_VOIGT):
            m[i, j] = r[v]
            m[j, i] = r[v]
        return cls(m)


def direction_tensor(matrix_or_voigt) -> np.ndarray:
    """Dimensionless strain direction as a plain symmetric 3x3 array.

    Directions are unit-scale tensors, so they bypass the |eps| < 0.1
    physical-strain bound of StrainTensor.
    """
    arr = np.asarray(matrix_or_voigt, dtype=float)
    if arr.shape == (6,):
        m = np.zeros((3, 3))
        for v, (i, j) in enumerate(_VOIGT):
            m[i, j] = m[j, i] = arr[v]
        arr = m
    return _sym3(arr, "strain direction")


def asymmetry(p_i: ElasticDipole, p_j: ElasticDipole, eps: StrainTensor) -> float:
    """Site asymmetry (P_j - P_i) : eps, in meV."""
    de = float(np.tensordot(p_j.P - p_i.P, eps.eps, axes=2))
    return de * MEV_PER_EV


def two_site_levels(j: float, delta: float):
    """Eigenvalues of the biased two-site model: +- sqrt(J^2+D^2)/2."""
    if j < 0:
        raise ValueError("tunneling coupling J must be >= 0")
    half = 0.5 * math.hypot(j, delta)
    return (-half, +half)


def two_site_splitting(j: float, delta: float) -> float:
    return math.hypot(j, delta)


@dataclass(frozen=True)
class SiteNetwork:
    """n degenerate-ish sites with nearest (and optional next-nearest)
    tunneling couplings.

    The default adjacency is the n-ring; an explicit adjacency matrix of
    0/1/2 (none / nearest / next-nearest) can replace it, covering site
    clusters up to the 24 tetrahedral neighbors of a substitutional
    defect.  The coupling matrix elements are J/2 and J'/2.
    """

    deltas: tuple                 # per-site asymmetry, meV
    j: float                      # nearest-neighbor coupling scale, meV
    j_prime: float = 0.0          # next-nearest coupling scale, meV
    adjacency: np.ndarray | None = None

    def __post_init__(self):
        deltas = tuple(float(v) for v in self.deltas)
        if not 2 <= len(deltas) <= 24:
            raise ValueError("networks support 2..24 sites")
        object.__setattr__(self, "deltas", deltas)
        if self.adjacency is not None:
            a = np.asarray(self.adjacency, dtype=int)
            if a.shape != (len(deltas), len(deltas)) or not np.array_equal(a, a.T):
                raise ValueError("adjacency must be a symmetric n x n matrix")
            object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return len(self.deltas)

    def _adj(self) -> np.ndarray:
        if self.adjacency is not None:
            return self.adjacency
        n = self.n
        a = np.zeros((n, n), dtype=int)
        for i in range(n):
            a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
            if n > 4:
                a[i, (i + 2) % n] = a[(i + 2) % n, i] = 2
        if n == 4:
            a[0, 2] = a[2, 0] = 2
            a[1, 3] = a[3, 1] = 2
        return a

    def hamiltonian(self) -> np.ndarray:
        h = np.diag(np.asarray(self.deltas, dtype=float))
        a = self._adj()
        h[a == 1] += self.j / 2.0
        h[a == 2] += self.j_prime / 2.0
        return h

    def levels(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.hamiltonian())


def fls_levels(network: SiteNetwork) -> np.ndarray:
    """Four-site ring eigenvalues referenced to (E1 + E2)/2.

    The degenerate ring (all asymmetries zero, no next-nearest coupling)
    gives (-J, 0, 0, +J).
    """
    if network.n != 4:
        raise ValueError(f"four-level structure needs 4 sites, got {network.n}")
    e = network.levels()
    return e - 0.5 * (e[1] + e[2])


@dataclass
class FlsGridResult:
    levels: np.ndarray            # 4 lowest, referenced to (E1+E2)/2
    J: float                      # -E0
    nnn_coupling: float           # E3 - J; ~0 when next-nearest hops vanish
    raw_energies: np.ndarray
    converged: bool


def fls_from_grid(fld, spec, order: int = 2, tol_rel: float = 1e-10,
                  seed: int = 7, k: int = 6) -> FlsGridResult:
    """Solve a four-well field on its grid and reduce to ring-model form.

    Returns the four lowest levels referenced to (E1+E2)/2, the effective
    coupling J = -E0, and the next-nearest-coupling diagnostic E3 - J.
    """
    from .eigensolve import lowest
    from .operator import assemble
    from .potential import find_wells

    try:
        find_wells(fld, n_wells=4)
    except Exception as exc:
        raise FourWellsNotFound(str(exc)) from exc
    op = assemble(fld, spec, order=order)
    res = lowest(op, k=max(4, k), tol_rel=tol_rel, seed=seed)
    e = res.eigenvalues[:4]
    ref = 0.5 * (e[1] + e[2])
    levels = e - ref
    jj = -float(levels[0])
    return FlsGridResult(levels, jj, float(levels[3] - jj),
                         res.eigenvalues.copy(), res.converged)


def quench_strain(j: float, dp: ElasticDipole, eps_direction) -> float:
    """Strain magnitude where the asymmetry equals the splitting.

    eps_direction is a unit-scale direction (3x3 array, Voigt row, or
    StrainTensor); the result is the dimensionless magnitude
    eps* = J / |dP : eps_dir|.
    """
    direction = (eps_direction.eps if isinstance(eps_direction, StrainTensor)
                 else direction_tensor(eps_direction))
    coupling = abs(float(np.tensordot(dp.P, direction, axes=2)))
    if coupling < 1e-15:
        raise OrthogonalStrainDirection(
            "dipole difference is orthogonal to the strain direction"
        )
    if j < 0:
        raise ValueError("J must be >= 0")
    return (j / MEV_PER_EV) / coupling


def tls_density(rho_h: float, eps0: float) -> float:
    """Two-level-system density 2 rho_H / (pi eps0), in 1/(eV nm^3).

    rho_h in 1/nm^3, eps0 in meV.
    """
    if eps0 <= 0:
        raise NonPositiveEpsilon(f"eps0 must be > 0, got {eps0}")
    if rho_h < 0:
        raise ValueError("rho_h must be >= 0")
    return 2.0 * rho_h / (math.pi * eps0 / MEV_PER_EV)
