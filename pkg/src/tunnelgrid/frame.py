"""Mass-weighted coordinates and the axis frame spanning degenerate wells.

The solver coordinates are mass-weighted displacements q = sqrt(m) * r
(amu^(1/2) A).  Three axes describe the tunneling atom (qx along
path x mirror, qy along the inter-site path, qz along the mirror normal)
and one or two composite axes describe the collective host-lattice
relaxation between degenerate configurations.

Axes are represented in a common embedding space: a 3-component block for
the tunneling atom followed by one 3-component block per lattice atom of
the composite displacement field.  All frame axes are unit vectors in that
space and mutually orthonormal to 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AtomCountMismatch,
    DegenerateAxes,
    LengthMismatch,
    NonPositiveMass,
    ZeroComposite,
)

ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class MassWeightedVector:
    """A vector in mass-weighted coordinates, components in amu^(1/2) A."""

    components: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=float)
        if arr.ndim != 1:
            arr = arr.ravel()
        if not np.all(np.isfinite(arr)):
            raise ValueError("mass-weighted vector has non-finite components")
        object.__setattr__(self, "components", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def __len__(self):
        return len(self.components)


def mass_weight(displacements, masses) -> MassWeightedVector:
    """Mass-weight per-atom Cartesian displacements: q_i = sqrt(m_i) r_i.

    displacements: (n_atoms, 3) in A; masses: (n_atoms,) in amu.  The
    result stacks the weighted per-atom vectors, so its Euclidean norm is
    sqrt(sum_i m_i |r_i|^2).
    """
    r = np.asarray(displacements, dtype=float)
    if r.ndim == 1:
        r = r.reshape(1, -1)
    m = np.atleast_1d(np.asarray(masses, dtype=float))
    if r.shape[0] != m.shape[0]:
        raise LengthMismatch(
            f"{r.shape[0]} displacement rows vs {m.shape[0]} masses"
        )
    if np.any(m <= 0):
        raise NonPositiveMass(f"masses must be > 0, got {m[m <= 0]}")
    weighted = np.sqrt(m)[:, None] * r
    return MassWeightedVector(weighted.ravel())


@dataclass(frozen=True)
class CompositeMode:
    """Collective lattice displacement between two relaxed configurations.

    displacement_per_atom holds (atom_index, mass_amu, dxyz_A) for every
    atom in the transformation; Q_norm is the Euclidean norm of the
    mass-weighted displacement field.
    """

    displacement_per_atom: tuple
    Q_norm: float = field(init=False)

    def __post_init__(self):
        rows = []
        for idx, mass, d in self.displacement_per_atom:
            if mass <= 0:
                raise NonPositiveMass(f"atom {idx}: mass {mass} <= 0")
            rows.append((int(idx), float(mass), np.asarray(d, dtype=float)))
        object.__setattr__(self, "displacement_per_atom", tuple(rows))
        q2 = sum(m * float(np.dot(d, d)) for _, m, d in rows)
        object.__setattr__(self, "Q_norm", float(np.sqrt(q2)))

    def mass_weighted_flat(self) -> np.ndarray:
        """Concatenated sqrt(m)*dR blocks, in stored atom order."""
        if not self.displacement_per_atom:
            return np.zeros(0)
        return np.concatenate(
            [np.sqrt(m) * d for _, m, d in self.displacement_per_atom]
        )


def build_composite(relaxed_site_1, relaxed_site_2, masses, atom_indices=None) -> CompositeMode:
    """Composite mode from two relaxed atomic configurations.

    Positions are (n_atoms, 3) arrays in A with identical atom ordering.
    The tunneling atom itself should already be excluded from both lists;
    the composite transforms only the host lattice.
    """
    a = np.asarray(relaxed_site_1, dtype=float).reshape(-1, 3)
    b = np.asarray(relaxed_site_2, dtype=float).reshape(-1, 3)
    m = np.atleast_1d(np.asarray(masses, dtype=float))
    if a.shape != b.shape:
        raise AtomCountMismatch(f"site lists differ: {a.shape} vs {b.shape}")
    if a.shape[0] != m.shape[0]:
        raise AtomCountMismatch(f"{a.shape[0]} atoms vs {m.shape[0]} masses")
    if atom_indices is None:
        atom_indices = range(a.shape[0])
    disp = b - a
    rows = tuple((i, mi, d) for i, mi, d in zip(atom_indices, m, disp))
    return CompositeMode(rows)


@dataclass(frozen=True)
class CoordinateFrame:
    """Orthonormal mass-weighted axes plus the two characteristic lengths.

    axes: (qx_hat, qy_hat, qz_hat[, Q_hat] or [, S_hat, T_hat]) as unit
    MassWeightedVectors in the embedding space; q_y12 is the inter-site
    distance along qy_hat; Q_lr the inter-configuration distance along the
    composite axis (0 for rigid-lattice frames).
    """

    axes: tuple
    labels: tuple
    q_y12: float
    Q_lr: float

    def __post_init__(self):
        if self.q_y12 <= 0:
            raise ValueError(f"q_y12 must be > 0, got {self.q_y12}")
        if self.Q_lr < 0:
            raise ValueError(f"Q_lr must be >= 0, got {self.Q_lr}")
        if len(self.axes) != len(self.labels):
            raise ValueError("one label per axis required")
        mats = np.stack([a.components for a in self.axes])
        gram = mats @ mats.T
        resid = np.max(np.abs(gram - np.eye(len(self.axes))))
        if resid >= ORTHO_TOL:
            raise DegenerateAxes(f"axes not orthonormal: residual {resid:.2e}")

    def gram_residual(self) -> float:
        mats = np.stack([a.components for a in self.axes])
        return float(np.max(np.abs(mats @ mats.T - np.eye(len(self.axes)))))


def _unit3(v, name):
    v = np.asarray(v, dtype=float).reshape(3)
    n = np.linalg.norm(v)
    if n == 0:
        raise DegenerateAxes(f"{name} is the zero vector")
    return v / n


def _embed(block3, lattice, dim):
    out = np.zeros(dim)
    out[:3] = block3
    if lattice is not None:
        out[3 : 3 + len(lattice)] = lattice
    return out


def _gram_schmidt(v, basis):
    # classical Gram-Schmidt applied twice for orthogonality to ~1e-15
    for _ in range(2):
        for b in basis:
            v = v - np.dot(v, b) * b
    return v


def build_frame(path_direction, mirror_normal, composite=None, q_y12=1.0,
                second_composite=None, hydrogen_block=None) -> CoordinateFrame:
    """Construct the orthonormal frame spanning two degenerate wells.

    qy_hat follows the inter-site path; qz_hat is the mirror-normal
    component orthogonal to qy_hat; qx_hat completes the right-handed
    triad.  The composite direction is Gram-Schmidt orthogonalized against
    the three atom axes and normalized to give Q_hat (S_hat and T_hat for
    the four-well extension).  hydrogen_block optionally supplies the
    tunneling-atom part of a composite's direction so deliberately
    non-orthogonal composites can be handled.
    """
    y = _unit3(path_direction, "path_direction")
    zraw = np.asarray(mirror_normal, dtype=float).reshape(3)
    if np.linalg.norm(zraw) == 0:
        raise DegenerateAxes("mirror_normal is the zero vector")
    z = zraw - np.dot(zraw, y) * y
    nz = np.linalg.norm(z)
    if nz < 1e-12 * np.linalg.norm(zraw):
        raise DegenerateAxes("path_direction and mirror_normal are parallel")
    z = z / nz
    x = np.cross(y, z)

    composites = [c for c in (composite, second_composite) if c is not None]
    lattice_dim = max((len(c.mass_weighted_flat()) for c in composites), default=0)
    dim = 3 + lattice_dim

    axes = [
        MassWeightedVector(_embed(x, None, dim)),
        MassWeightedVector(_embed(y, None, dim)),
        MassWeightedVector(_embed(z, None, dim)),
    ]
    labels = ["qx", "qy", "qz"]
    Q_lr = 0.0

    basis = [a.components for a in axes]
    comp_labels = ["Q"] if second_composite is None else ["S", "T"]
    for name, comp in zip(comp_labels, composites):
        if comp.Q_norm == 0:
            raise ZeroComposite(f"composite for axis {name!r} has zero norm")
        flat = comp.mass_weighted_flat()
        h3 = np.zeros(3) if hydrogen_block is None else np.asarray(hydrogen_block, float)
        direction = _embed(h3, flat, dim)
        direction = _gram_schmidt(direction, basis)
        n = np.linalg.norm(direction)
        if n < 1e-12 * comp.Q_norm:
            raise DegenerateAxes(f"composite for {name!r} lies in the atom axes' span")
        direction /= n
        axes.append(MassWeightedVector(direction))
        labels.append(name)
        basis.append(direction)
        Q_lr = comp.Q_norm if name in ("Q", "S") else Q_lr

    return CoordinateFrame(tuple(axes), tuple(labels), float(q_y12), float(Q_lr))
