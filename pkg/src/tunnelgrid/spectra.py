"""From eigenpairs to physics: splittings, labels, occupations, tables.

States live on the solver grid; all integrals use product-trapezoid
quadrature consistent with the finite-difference discretization.  Parity
along the tunneling axis is determined by counting sign changes of the
wavefunction along grid lines, weighted by probability mass, so it also
works for mildly asymmetric (ingested) fields where exact mirror symmetry
is absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .constants import HBAR2_MEV_AMU_A2
from .errors import (
    DoubletNotFound,
    InsufficientAssignedStates,
    SingleWell,
    SplittingUnresolved,
    UnnormalizedState,
)
from .grids import GridSpec
from .potential import find_wells, refine_minimum

PARITY_SYMMETRIC = "symmetric"
PARITY_ANTISYMMETRIC = "antisymmetric"
PARITY_UNASSIGNED = "unassigned"

ASSIGN_OVERLAP_FLOOR = 0.4


@dataclass(frozen=True)
class WellPartition:
    """Nearest-minimum assignment of grid points (mass-weighted metric)."""

    centers: tuple             # well coordinates, ascending energy
    assignment: np.ndarray     # flat per-grid-point well index
    spec: GridSpec

    @property
    def n_wells(self) -> int:
        return len(self.centers)

    def counts(self):
        return tuple(int(np.sum(self.assignment == i)) for i in range(self.n_wells))


def partition_wells(fld, spec: GridSpec, n_wells: int | None = None) -> WellPartition:
    """Assign every grid node to its nearest potential minimum.

    Ties go to the lower well index.  Raises SingleWell when the field
    has fewer than two distinct minima.
    """
    if n_wells is None:
        try:
            wells = find_wells(fld, n_wells=4)
        except SingleWell:
            wells = find_wells(fld, n_wells=2)
    else:
        wells = find_wells(fld, n_wells=n_wells)
    centers = [w for w, _ in wells]
    nodes = spec.nodes()
    d2 = np.stack([np.sum((nodes - c) ** 2, axis=1) for c in centers], axis=1)
    assignment = np.argmin(d2, axis=1).astype(np.intp)
    return WellPartition(tuple(centers), assignment, spec)


def quadrature_normalize(state, spec: GridSpec) -> np.ndarray:
    """Rescale a grid vector to unit trapezoid-quadrature norm."""
    u = np.asarray(state, dtype=float).ravel()
    w = spec.trapezoid_weights()
    z = float(np.sum(u * u * w))
    if z <= 0:
        raise UnnormalizedState("state has zero quadrature norm")
    return u / np.sqrt(z)


def occupations(state, partition: WellPartition) -> np.ndarray:
    """Per-well probabilities of a quadrature-normalized state."""
    u = np.asarray(state, dtype=float).ravel()
    w = partition.spec.trapezoid_weights()
    dens = u * u * w
    total = float(dens.sum())
    if abs(total - 1.0) > 1e-8:
        raise UnnormalizedState(
            f"state quadrature norm is {total:.12f}, expected 1 within 1e-8"
        )
    return np.array([
        float(dens[partition.assignment == i].sum())
        for i in range(partition.n_wells)
    ])


# ----------------------------------------------------------------------
# parity via nodal structure
# ----------------------------------------------------------------------

def count_axis_sign_changes(state, spec: GridSpec, axis_label: str,
                            amplitude_floor: float = 1e-6) -> int:
    """Mass-weighted majority count of sign changes along one grid axis.

    Each grid line parallel to the axis contributes its own sign-change
    count; lines vote with their probability mass.  Amplitudes below
    amplitude_floor * max|psi| are treated as zero, and the outermost
    grid point at each end is dropped (the wide-stencil Dirichlet edge
    can carry a sign-flipping artifact of relative size ~1e-5).
    """
    ai = spec.axis_index(axis_label)
    u = np.asarray(state, dtype=float).reshape(spec.shape)
    u = np.moveaxis(u, ai, -1)
    flat = u.reshape(-1, u.shape[-1])
    if flat.shape[1] > 4:
        flat = flat[:, 1:-1]
    floor = amplitude_floor * np.max(np.abs(flat))
    mass = np.sum(flat**2, axis=1)
    votes: dict[int, float] = {}
    for line, m in zip(flat, mass):
        if m <= 0:
            continue
        sig = line[np.abs(line) > floor]
        if sig.size < 2:
            continue
        changes = int(np.sum(np.sign(sig[:-1]) != np.sign(sig[1:])))
        votes[changes] = votes.get(changes, 0.0) + m
    if not votes:
        return 0
    return max(votes, key=votes.get)


# ----------------------------------------------------------------------
# tunnel splitting
# ----------------------------------------------------------------------

def tunnel_splitting(result, spec: GridSpec | None = None,
                     tunneling_axis: str = "qy", labels=None) -> float:
    """Ground-doublet gap J = E1 - E0.

    The lowest two states must form a parity doublet: either matching
    assigned labels with opposite parity (when labels are supplied) or,
    from the nodal structure, zero and one sign changes along the
    tunneling axis.  Residuals of both members must resolve the gap
    (< J/100), otherwise SplittingUnresolved is raised.
    """
    if result.k < 2:
        raise DoubletNotFound("need at least two converged states")
    e = result.eigenvalues
    j = float(e[1] - e[0])
    if labels is not None:
        l0, l1 = labels[0], labels[1]
        if l0.numbers != l1.numbers or {l0.parity, l1.parity} != {
            PARITY_SYMMETRIC, PARITY_ANTISYMMETRIC
        }:
            raise DoubletNotFound(
                f"lowest states labeled {l0.numbers}/{l0.parity} and "
                f"{l1.numbers}/{l1.parity} are not a parity doublet"
            )
    elif spec is not None:
        n0 = count_axis_sign_changes(result.eigenvectors[:, 0], spec, tunneling_axis)
        n1 = count_axis_sign_changes(result.eigenvectors[:, 1], spec, tunneling_axis)
        if (n0, n1) != (0, 1):
            raise DoubletNotFound(
                f"nodal counts along {tunneling_axis} are ({n0}, {n1}), "
                "expected (0, 1)"
            )
    if j < 0:
        raise DoubletNotFound("eigenvalues not ascending")
    guard = j / 100.0
    if result.residuals[0] > guard or result.residuals[1] > guard:
        raise SplittingUnresolved(
            f"residuals ({result.residuals[0]:.3e}, {result.residuals[1]:.3e}) "
            f"exceed J/100 = {guard:.3e} meV"
        )
    return j


def zero_point_energy(result, fld=None, v_min: float | None = None) -> float:
    """Ground-state energy above the potential minimum."""
    if v_min is None:
        if fld is None:
            v_min = 0.0
        else:
            wells = find_wells(fld, n_wells=1)
            v_min = wells[0][1]
    return float(result.eigenvalues[0] - v_min)


# ----------------------------------------------------------------------
# automated state assignment
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class StateLabel:
    numbers: tuple          # per-active-axis harmonic quantum numbers
    parity: str             # symmetric / antisymmetric / unassigned
    overlap: float          # dominant squared overlap in [0, 1]

    def text(self) -> str:
        n = ",".join(str(v) for v in self.numbers)
        return f"({n}){'' if self.parity == PARITY_UNASSIGNED else ';' + self.parity[0]}"


def _oscillator_axis_functions(points, center, curvature, n_max, hbar2):
    """Harmonic eigenfunctions of one axis, evaluated on grid points."""
    import math

    if curvature <= 0:
        curvature = 1e-6
    alpha = (curvature / hbar2) ** 0.25  # 1/length scale
    xi = alpha * (points - center)
    gauss = np.exp(-0.5 * xi**2)
    funcs = []
    h_nm1 = np.zeros_like(xi)
    h_n = np.ones_like(xi)
    for n in range(n_max + 1):
        norm = np.sqrt(alpha) * np.pi**-0.25 / np.sqrt(2.0**n * math.factorial(n))
        funcs.append(norm * h_n * gauss)
        h_nm1, h_n = h_n, 2 * xi * h_n - 2 * n * h_nm1
    return funcs


def _axis_curvatures(fld, well, spec: GridSpec, hbar2):
    """Second-order central-difference curvature per active axis."""
    curv = []
    for a in spec.axes:
        if not a.active:
            continue
        i = fld.labels.index(a.label)
        h = a.spacing
        lo, hi = fld.box[i]
        x0 = min(max(well[i], lo + h), hi - h)
        pm, pp, pc = well.copy(), well.copy(), well.copy()
        pm[i], pp[i], pc[i] = x0 - h, x0 + h, x0
        k2 = (fld.eval(pm) - 2 * fld.eval(pc) + fld.eval(pp)) / h**2
        curv.append(max(k2, 1e-9))
    return curv


def assign_states(result, fld, spec: GridSpec, n_max: int = 3,
                  hbar2: float = HBAR2_MEV_AMU_A2,
                  overlap_floor: float = ASSIGN_OVERLAP_FLOOR):
    """Label states by overlap with two-well symmetrized oscillator products.

    Per-axis harmonic frequencies come from central second differences of
    the field at each well minimum.  Every eigenstate is matched against
    the symmetric and antisymmetric combinations of per-well product
    states; the argmax overlap assigns (quantum numbers, parity).  States
    whose best squared overlap falls below overlap_floor stay unassigned
    (the regime that historically needed manual inspection).
    """
    wells = find_wells(fld, n_wells=2)
    centers = [w for w, _ in wells]
    weights = spec.trapezoid_weights()
    active = [a for a in spec.axes if a.active]
    pts = {a.label: a.points() for a in active}

    # per-well, per-axis ladders
    ladders = []
    for c, _v in wells:
        curv = _axis_curvatures(fld, c, spec, hbar2)
        per_axis = []
        for a, k2 in zip(active, curv):
            i = fld.labels.index(a.label)
            per_axis.append(
                _oscillator_axis_functions(pts[a.label], c[i], k2, n_max, hbar2)
            )
        ladders.append(per_axis)

    shape = spec.shape
    full_weights = weights.reshape(shape)

    def product_state(well_i, numbers):
        axes_funcs = []
        ai = 0
        for a in spec.axes:
            if a.active:
                axes_funcs.append(ladders[well_i][ai][numbers[ai]])
                ai += 1
            else:
                axes_funcs.append(np.ones(1))
        prod = axes_funcs[0]
        for f in axes_funcs[1:]:
            prod = np.multiply.outer(prod, f)
        return prod

    combos = []
    for numbers in product(range(n_max + 1), repeat=len(active)):
        p1 = product_state(0, numbers)
        p2 = product_state(1, numbers)
        for parity, sign in ((PARITY_SYMMETRIC, 1.0), (PARITY_ANTISYMMETRIC, -1.0)):
            psi = p1 + sign * p2
            norm2 = float(np.sum(psi * psi * full_weights))
            if norm2 < 1e-12:
                continue
            combos.append((numbers, parity, psi / np.sqrt(norm2)))

    labels = []
    for i in range(result.k):
        psi = quadrature_normalize(result.eigenvectors[:, i], spec).reshape(shape)
        best = (0.0, None, None)
        for numbers, parity, ref in combos:
            ov = float(np.sum(psi * ref * full_weights)) ** 2
            if ov > best[0]:
                best = (ov, numbers, parity)
        ov, numbers, parity = best
        if numbers is None or ov < overlap_floor:
            labels.append(StateLabel((-1,) * len(active), PARITY_UNASSIGNED,
                                     float(ov)))
        else:
            labels.append(StateLabel(tuple(numbers), parity, float(ov)))
    return labels


# ----------------------------------------------------------------------
# transition table and the bundled spectrum result
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TransitionTable:
    transition_energies: tuple   # mean excited doublet minus mean ground doublet
    splittings: tuple            # intra-doublet gap per excited doublet
    ground_splitting: float
    doublets: tuple              # ((numbers, (i_sym, i_anti)), ...) by energy


def transition_table(result, labels, n_transitions: int = 3) -> TransitionTable:
    """Excited-doublet transition energies and intra-doublet splittings.

    Doublets pair states with identical quantum numbers and opposite
    parity; they are ordered by mean energy.  Needs the ground doublet
    plus at least n_transitions assigned excited doublets.
    """
    e = result.eigenvalues
    by_numbers: dict[tuple, dict[str, int]] = {}
    for i, lab in enumerate(labels):
        if lab.parity == PARITY_UNASSIGNED:
            continue
        slot = by_numbers.setdefault(lab.numbers, {})
        if lab.parity not in slot:
            slot[lab.parity] = i
    doublets = []
    for numbers, slot in by_numbers.items():
        if PARITY_SYMMETRIC in slot and PARITY_ANTISYMMETRIC in slot:
            i_s, i_a = slot[PARITY_SYMMETRIC], slot[PARITY_ANTISYMMETRIC]
            doublets.append((numbers, (i_s, i_a)))
    if not doublets:
        raise InsufficientAssignedStates("no parity doublets found")
    doublets.sort(key=lambda d: 0.5 * (e[d[1][0]] + e[d[1][1]]))
    ground_numbers, (g_s, g_a) = doublets[0]
    if any(n != 0 for n in ground_numbers):
        raise InsufficientAssignedStates(
            f"lowest doublet has numbers {ground_numbers}, expected all zero"
        )
    ground_mean = 0.5 * (e[g_s] + e[g_a])
    excited = doublets[1:]
    if len(excited) < n_transitions:
        raise InsufficientAssignedStates(
            f"need {n_transitions} excited doublets, found {len(excited)}"
        )
    hw, js = [], []
    for numbers, (i_s, i_a) in excited[:n_transitions]:
        hw.append(0.5 * (e[i_s] + e[i_a]) - ground_mean)
        js.append(abs(e[i_a] - e[i_s]))
    return TransitionTable(tuple(hw), tuple(js),
                           float(abs(e[g_a] - e[g_s])), tuple(doublets))


@dataclass
class SpectrumResult:
    """Bundle of solved-state physics for one case."""

    eigenvalues: np.ndarray
    labels: list
    occupations: np.ndarray        # (k, n_wells)
    zpe: float
    ground_splitting: float | None
    table: TransitionTable | None
    residuals: np.ndarray
    metadata: dict = dc_field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "energies_mev": [float(v) for v in self.eigenvalues],
            "labels": [
                {"numbers": list(l.numbers), "parity": l.parity,
                 "overlap": float(l.overlap)}
                for l in self.labels
            ],
            "occupations": [[float(x) for x in row] for row in self.occupations],
            "zpe_mev": float(self.zpe),
            "residuals_mev": [float(r) for r in self.residuals],
            "metadata": self.metadata,
        }
        if self.ground_splitting is not None:
            out["J_mev"] = float(self.ground_splitting)
        if self.table is not None:
            out["transitions_mev"] = [float(v) for v in self.table.transition_energies]
            out["transition_splittings_mev"] = [float(v) for v in self.table.splittings]
            # Ji convention recorded so downstream tables are unambiguous
            out["splitting_convention"] = "intra-doublet gap of each excited doublet"
        return out

    def csv_rows(self):
        rows = []
        for i, ev in enumerate(self.eigenvalues):
            lab = self.labels[i] if i < len(self.labels) else None
            occ = self.occupations[i] if i < len(self.occupations) else []
            occ_l = float(occ[0]) if len(occ) > 0 else ""
            occ_r = float(occ[1]) if len(occ) > 1 else ""
            rows.append((
                i, float(ev),
                "" if lab is None else "|".join(str(n) for n in lab.numbers),
                "" if lab is None else lab.parity,
                occ_l, occ_r,
            ))
        return rows
