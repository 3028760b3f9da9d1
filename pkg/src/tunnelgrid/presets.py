"""Documented model fixtures and their solver grids.

The coupled-double-well presets are benchmark surrogates: their
parameters are tuned analytically so the landscape scalars land on
chosen anchors (coincidence energy, barrier height, well separation)
resembling hydrogen trapped at an interstitial defect in a bcc host.
They are fixtures for tests and demos, not library defaults.
"""

from __future__ import annotations

import math

from .constants import HBAR2_MEV_AMU_A2, MASS_H
from .grids import Axis, GridSpec
from .potential import CoupledDoubleWell, FourWellModel, SeparableHarmonic

PAPER_COUNTS = (7, 13, 7, 11)   # (qx, qy, qz, Q) default subgrid preset


def tune_double_well(e_c_prime: float, barrier: float, a: float, q_lr: float,
                     hw_x: float = 150.0, hw_z: float = 160.0,
                     beta_x: float = 0.0, beta_z: float = 0.0) -> CoupledDoubleWell:
    """Coupled double well hitting exact coincidence/barrier anchors.

    Closed-form relations fix the stiffness and coupling: the coincidence
    energy of the mirror-symmetric model is k_Q * Q_lr^2 / 8 and the
    barrier is V_b (1 - eta^2) + E_c'; a short fixed-point iteration
    resolves the well-position correction eta.
    """
    if not 0 < e_c_prime < barrier:
        raise ValueError("need 0 < E_c' < barrier")
    k_q = 8.0 * e_c_prime / q_lr**2
    eta = 0.0
    for _ in range(200):
        v_b = (barrier - e_c_prime) / (1.0 - eta**2)
        qs = a * math.sqrt(1.0 + eta)
        g = k_q * q_lr / (2.0 * qs)
        eta_new = g * g * a * a / (4.0 * v_b * k_q)
        if abs(eta_new - eta) < 1e-15:
            eta = eta_new
            break
        eta = eta_new
    v_b = (barrier - e_c_prime) / (1.0 - eta**2)
    qs = a * math.sqrt(1.0 + eta)
    g = k_q * q_lr / (2.0 * qs)
    k_x = hw_x**2 / HBAR2_MEV_AMU_A2
    k_z = hw_z**2 / HBAR2_MEV_AMU_A2
    return CoupledDoubleWell(V_b=v_b, a=a, k_Q=k_q, g=g, k_x=k_x, k_z=k_z,
                             beta_x=beta_x, beta_z=beta_z, Q0=0.0)


def oh_like() -> CoupledDoubleWell:
    """Oxygen-trapped-hydrogen-like fixture.

    Anchors: effective coincidence energy 13.5 meV, symmetric barrier
    153 meV, well separation 1.10 A of hydrogen travel (mass-weighted
    half-separation ~0.55), composite inter-well distance 1.0, transverse
    modes near 150/160 meV.  The negative beta terms stiffen the
    transverse confinement toward the barrier top, which suppresses the
    splitting as dimensions are added.
    """
    r_h = 1.10
    a = 0.5 * r_h * math.sqrt(MASS_H)
    return tune_double_well(e_c_prime=13.5, barrier=153.0, a=a, q_lr=1.0,
                            hw_x=150.0, hw_z=160.0,
                            beta_x=-0.08, beta_z=-0.08)


def quartic_1d(v_b: float = 150.0, a: float = 0.55):
    """Symmetric 1-D quartic double-well benchmark field."""
    def fn(points):
        import numpy as np

        q = np.asarray(points, dtype=float)[..., 0]
        return v_b * ((q / a) ** 2 - 1.0) ** 2

    from .potential import PotentialField
    import numpy as np

    return PotentialField(("qy",), ((-2.0 * a, 2.0 * a),), fn,
                          well_hints=[np.array([-a]), np.array([a])])


def fls_fixture(coupled: bool = True) -> FourWellModel:
    """Symmetric four-well fixture over (qx, qy, qz, S, T).

    Moderate barriers keep the four-level couplings in the resolvable
    0.01-1 meV range at desk-scale grids; g couples each particle axis to
    its lattice coordinate.  With coupled=False the T coordinate is
    detached, which merges its well pairs and makes the field exactly
    separable (used by the collapse limit test).
    """
    a = 0.45
    hw_lattice = 18.0
    k_l = hw_lattice**2 / HBAR2_MEV_AMU_A2
    hw_z = 120.0
    return FourWellModel(V_b=60.0, a=a, k_L=k_l,
                         g=9.0, g_T=(9.0 if coupled else 0.0),
                         k_z=hw_z**2 / HBAR2_MEV_AMU_A2)


def double_well_grid(model: CoupledDoubleWell, counts=PAPER_COUNTS,
                     refine: int = 1) -> GridSpec:
    """Solver grid over the model's default box (the standard margins)."""
    box = model.default_box()
    labels = ("qx", "qy", "qz", "Q")
    axes = [Axis(lbl, lo, hi, c) for lbl, (lo, hi), c in zip(labels, box, counts)]
    return GridSpec(axes).refine(refine)


def four_well_grid(model: FourWellModel, counts=(9, 9, 7, 9, 9),
                   refine: int = 1) -> GridSpec:
    box = model.default_box()
    labels = ("qx", "qy", "qz", "S", "T")
    axes = [Axis(lbl, lo, hi, c) for lbl, (lo, hi), c in zip(labels, box, counts)]
    return GridSpec(axes).refine(refine)


def harmonic_preset(hws, labels=None, span_turning: float = 3.4):
    """Separable harmonic field + box helper for ladder checks."""
    labels = tuple(labels or ("qx", "qy", "qz", "Q", "S")[: len(hws)])
    ks = tuple((hw * hw) / HBAR2_MEV_AMU_A2 for hw in hws)
    xts = [(HBAR2_MEV_AMU_A2 / k) ** 0.25 for k in ks]
    box = tuple((-span_turning * xt, span_turning * xt) for xt in xts)
    return SeparableHarmonic(ks, labels).field(box)
