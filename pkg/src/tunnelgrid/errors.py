"""Exception types raised across the package.

Every error carries a stable machine-readable code (the class name); the
CLI prints that code on stderr so batch drivers can branch on it.
"""


class TunnelGridError(Exception):
    """Base class for all package errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- frame construction ---
class NonPositiveMass(TunnelGridError):
    pass


class LengthMismatch(TunnelGridError):
    pass


class AtomCountMismatch(TunnelGridError):
    pass


class DegenerateAxes(TunnelGridError):
    pass


class ZeroComposite(TunnelGridError):
    pass


# --- potentials and grids ---
class OutOfDomain(TunnelGridError):
    pass


class MissingSample(TunnelGridError):
    pass


class NonMonotoneAxis(TunnelGridError):
    pass


class MalformedRow(TunnelGridError):
    pass


class TargetExceedsDomain(TunnelGridError):
    pass


class NoCrossing(TunnelGridError):
    pass


class MissingQAxis(TunnelGridError):
    pass


class NoBarrier(TunnelGridError):
    pass


# --- operator assembly ---
class OrderUnsupported(TunnelGridError):
    pass


class DomainMismatch(TunnelGridError):
    pass


# --- eigensolver ---
class KTooLarge(TunnelGridError):
    pass


# --- spectra ---
class SingleWell(TunnelGridError):
    pass


class UnnormalizedState(TunnelGridError):
    pass


class SplittingUnresolved(TunnelGridError):
    pass


class DoubletNotFound(TunnelGridError):
    pass


class InsufficientAssignedStates(TunnelGridError):
    pass


# --- subspaces and sweeps ---
class PinnedOutOfDomain(TunnelGridError):
    pass


class NoActiveAxis(TunnelGridError):
    pass


class AxisInactive(TunnelGridError):
    pass


class InsufficientPoints(TunnelGridError):
    pass


class NonPositiveInput(TunnelGridError):
    pass


# --- strain / multi-level systems ---
class OrthogonalStrainDirection(TunnelGridError):
    pass


class NonPositiveEpsilon(TunnelGridError):
    pass


class FourWellsNotFound(TunnelGridError):
    pass


# --- configuration ---
class ConfigError(TunnelGridError):
    pass
