"""Paul-trap and ion parameter containers with derived quantities.

Conventions: all frequencies are angular (rad/s); hbar = 1 everywhere in the
dynamics. SI hbar enters only when converting a (mass, wavenumber) pair into
the dimensionless Lamb-Dicke parameter at the input boundary.
"""

import math
from dataclasses import dataclass

from .errors import UnstableTrapError

HBAR_SI = 1.054571817e-34  # J s


@dataclass(frozen=True)
class TrapParams:
    """RF drive and Mathieu parameters of the axial trap direction.

    The axial potential is (1/8) m omega_rf^2 z^2 [a_z + 2 q_z cos(omega_rf t + phi_rf)].
    """

    omega_rf: float  # RF drive angular frequency (rad/s)
    phi_rf: float  # RF drive phase (rad)
    a_z: float
    q_z: float

    def __post_init__(self):
        if self.omega_rf <= 0:
            raise ValueError(f"omega_rf must be positive, got {self.omega_rf}")
        if self.a_z + self.q_z**2 / 2 < 0:
            raise UnstableTrapError(
                f"a_z + q_z^2/2 = {self.a_z + self.q_z**2 / 2:.6g} < 0 "
                f"(a_z={self.a_z}, q_z={self.q_z})"
            )


def secular_frequency(trap: TrapParams) -> float:
    """Lowest-order secular frequency omega_s = omega_rf * sqrt(a_z + q_z^2/2) / 2."""
    return trap.omega_rf * math.sqrt(trap.a_z + trap.q_z**2 / 2) / 2


@dataclass(frozen=True)
class DerivedParams:
    omega_s: float  # secular angular frequency (rad/s)


def derive(trap: TrapParams) -> DerivedParams:
    return DerivedParams(omega_s=secular_frequency(trap))


@dataclass(frozen=True)
class IonParams:
    """Qubit splitting and spin-motion coupling strength.

    The Lamb-Dicke parameter can be given directly, or derived from the
    effective wavenumber and ion mass once the secular frequency is known.
    """

    omega_a: float  # qubit splitting (rad/s)
    eta: float | None = None
    mass: float | None = None  # kg
    k: float | None = None  # 1/m

    def __post_init__(self):
        if self.omega_a <= 0:
            raise ValueError(f"omega_a must be positive, got {self.omega_a}")
        if self.eta is not None and self.eta <= 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.eta is None and (self.mass is None or self.k is None):
            raise ValueError("either eta or both mass and k must be supplied")


def lamb_dicke(k: float, mass: float, omega_s: float) -> float:
    """eta = k * sqrt(hbar / (2 m omega_s)) for a single photon recoil pair."""
    return k * math.sqrt(HBAR_SI / (2 * mass * omega_s))


def resolve_eta(ion: IonParams, omega_s: float) -> float:
    """Return the Lamb-Dicke parameter, cross-checking redundant inputs.

    When both eta and (mass, k) are supplied they must agree to 1e-12
    relative; a mismatch means inconsistent physical inputs.
    """
    if ion.mass is not None and ion.k is not None:
        derived = lamb_dicke(ion.k, ion.mass, omega_s)
        if ion.eta is not None:
            if abs(ion.eta - derived) > 1e-12 * abs(derived):
                raise ValueError(
                    f"eta={ion.eta} inconsistent with k, mass "
                    f"(derived {derived:.15g}) beyond 1e-12 relative"
                )
            return ion.eta
        return derived
    return ion.eta


@dataclass(frozen=True)
class FastSdkReport:
    """Advisory check of the fast-kick condition omega_s * tau << 1."""

    omega_s_tau: float
    fast: bool
    rf_area_term: float  # omega_rf * tau * q_z / 4, small in the same regime
    threshold: float


def validate_fast_sdk(trap: TrapParams, tau: float, threshold: float = 0.1) -> FastSdkReport:
    x = secular_frequency(trap) * tau
    return FastSdkReport(
        omega_s_tau=x,
        fast=x < threshold,
        rf_area_term=trap.omega_rf * tau * trap.q_z / 4,
        threshold=threshold,
    )
