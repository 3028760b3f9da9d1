"""Grid-based tunneling spectra of configurational two- and multi-level defects.

Solves mass-weighted nuclear Schroedinger problems on 1-5 dimensional
rectangular grids: finite-difference Hamiltonians over analytic or
ingested potential surfaces, a restarted Lanczos eigensolver, and the
spectrum post-processing (tunnel splittings, transition tables, strain
response) built on top.
"""

from .constants import HBAR2_MEV_AMU_A2, MEV_PER_GHZ
from .frame import (
    CompositeMode,
    CoordinateFrame,
    MassWeightedVector,
    build_composite,
    build_frame,
    mass_weight,
)
from .grids import Axis, GridSpec
from .kernels import backend_name
from .operator import GridOperator, assemble, boundary_shell_probability
from .eigensolve import EigenResult, lowest
from .potential import (
    CoupledDoubleWell,
    FourWellModel,
    PotentialField,
    SampledPotential,
    SeparableHarmonic,
    barrier_height,
    coincidence,
    find_wells,
    interpolate,
)

__version__ = "0.1.0"
