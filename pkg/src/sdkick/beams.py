"""Two-beam interference and the effective two-photon Rabi frequency.

Each beam carries a polarization angle beta_m (sigma+ / sigma- mixing) and
the pair has a relative polarization phase dpsi, a wavevector difference dk
along the quantization axis, and a beat frequency dphi_rate. For two beams
of individual Rabi frequencies Omega_1, Omega_2 the effective coupling is

    Omega = Omega_1 cos(2 b1) + Omega_2 cos(2 b2)
            + 2 sqrt(Omega_1 Omega_2) A cos(dk z - dphi_rate t - gamma),

with A, gamma built from a = sin b1 sin b2 sin dpsi and
b = cos b1 cos b2 - sin b1 sin b2 cos dpsi. Reduced dipole factors and field
amplitudes are absorbed into the user-supplied Omega_1, Omega_2.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BeamPair:
    beta1: float  # polarization angle of beam 1 (rad)
    beta2: float  # polarization angle of beam 2 (rad)
    dpsi: float  # relative polarization phase (rad)
    dk: float  # effective wavevector difference (1/m)
    dphi_rate: float  # beat frequency, d(phase difference)/dt (rad/s)
    detuning: float | None = None  # single-photon detuning, diagnostics only

    def __post_init__(self):
        if self.detuning is not None and self.detuning <= 0:
            raise ValueError(f"detuning must be positive, got {self.detuning}")


def lin_perp_lin(k: float, dphi_rate: float, detuning: float | None = None) -> BeamPair:
    """Counter-propagating lin-perp-lin pair: beta1 = -beta2 = pi/4, dk = 2k."""
    return BeamPair(
        beta1=math.pi / 4,
        beta2=-math.pi / 4,
        dpsi=0.0,
        dk=2 * k,
        dphi_rate=dphi_rate,
        detuning=detuning,
    )


@dataclass(frozen=True)
class InterferenceParams:
    amp: float  # interference amplitude A
    gamma: float  # interference phase (rad)
    a_comp: float
    b_comp: float


def interference_params(pair: BeamPair) -> InterferenceParams:
    a = math.sin(pair.beta1) * math.sin(pair.beta2) * math.sin(pair.dpsi)
    b = math.cos(pair.beta1) * math.cos(pair.beta2) - math.sin(pair.beta1) * math.sin(
        pair.beta2
    ) * math.cos(pair.dpsi)
    return InterferenceParams(
        amp=math.hypot(a, b), gamma=math.atan2(a, b), a_comp=a, b_comp=b
    )


def effective_rabi(pair: BeamPair, omega1: float, omega2: float, z: float, t: float) -> float:
    """Effective two-photon Rabi frequency at position z and time t (rad/s)."""
    if omega1 < 0 or omega2 < 0:
        raise ValueError("omega1 and omega2 must be nonnegative")
    p = interference_params(pair)
    return (
        omega1 * math.cos(2 * pair.beta1)
        + omega2 * math.cos(2 * pair.beta2)
        + 2
        * math.sqrt(omega1 * omega2)
        * p.amp
        * math.cos(pair.dk * z - pair.dphi_rate * t - p.gamma)
    )


@dataclass(frozen=True)
class HierarchyReport:
    """Advisory frequency-hierarchy check for the adiabatic-elimination regime.

    All ratios should be small against the single-photon detuning; the
    differential light shift is not computed and is assumed negligible.
    """

    beat_ratio: float
    qubit_ratio: float
    bandwidth_ratio: float
    beat_ok: bool
    qubit_ok: bool
    bandwidth_ok: bool
    small_light_shift_assumed: bool
    threshold: float

    @property
    def all_ok(self) -> bool:
        return self.beat_ok and self.qubit_ok and self.bandwidth_ok


def validate_hierarchy(
    pair: BeamPair, envelope_bandwidth: float, omega_a: float, threshold: float = 0.01
) -> HierarchyReport:
    if pair.detuning is None:
        raise ValueError("hierarchy check requires BeamPair.detuning")
    d = pair.detuning
    rb = abs(pair.dphi_rate) / d
    rq = abs(omega_a) / d
    rw = abs(envelope_bandwidth) / d
    return HierarchyReport(
        beat_ratio=rb,
        qubit_ratio=rq,
        bandwidth_ratio=rw,
        beat_ok=rb < threshold,
        qubit_ok=rq < threshold,
        bandwidth_ok=rw < threshold,
        small_light_shift_assumed=True,
        threshold=threshold,
    )
