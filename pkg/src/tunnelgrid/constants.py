"""Physical constants in the repo-wide unit system.

Units everywhere: energy meV, mass amu, length angstrom, mass-weighted
length amu^(1/2) * angstrom.  Everything below is derived from CODATA 2018
values (h and e are exact in SI since the 2019 redefinition).
"""

# CODATA 2018 inputs (SI)
PLANCK_H_JS = 6.62607015e-34          # J s, exact
HBAR_JS = 1.054571817e-34             # J s, h / 2 pi
ELEMENTARY_CHARGE_C = 1.602176634e-19  # C, exact
AMU_KG = 1.66053906660e-27            # kg

JOULE_PER_MEV = ELEMENTARY_CHARGE_C * 1e-3
ANGSTROM_M = 1e-10

# hbar^2 expressed in meV * amu * A^2; the kinetic prefactor of the
# mass-weighted Schroedinger operator -(hbar^2/2) d^2/dq^2 with q in
# amu^(1/2) A and energies in meV.
HBAR2_MEV_AMU_A2 = HBAR_JS**2 / (AMU_KG * ANGSTROM_M**2) / JOULE_PER_MEV

# Energy conversions
MEV_PER_EV = 1000.0
EV_PER_MEV = 1e-3
MEV_PER_GHZ = PLANCK_H_JS * 1e9 / JOULE_PER_MEV

# Masses used by the niobium-host presets (amu)
MASS_H = 1.008
MASS_D = 2.014
MASS_NB = 92.906
MASS_V = 50.942
MASS_TA = 180.948
