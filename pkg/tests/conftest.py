import math

import pytest

from sdkick import (
    Constant,
    IonParams,
    ModelFlags,
    Numerics,
    RunConfig,
    Sine,
    TrapParams,
)

TWO_PI = 2 * math.pi
OMEGA_A = TWO_PI * 10e9
TAU = 5e-9


@pytest.fixture
def omega_a():
    return OMEGA_A


def make_kick_config(envelope=None, raman_beat=OMEGA_A, n_max=6,
                     include_backward=True, rtol=1e-12):
    """Frozen-ladder run (no trap, no micromotion)."""
    return RunConfig(
        ion=IonParams(omega_a=OMEGA_A, eta=0.1),
        envelope=envelope or Constant(math.pi, TAU),
        raman_beat=raman_beat,
        flags=ModelFlags(include_micromotion=False, include_backward=include_backward,
                         frozen_secular=True),
        numerics=Numerics(rtol=rtol, kick_n=n_max),
    )


def make_fock_config(omega_rf=TWO_PI * 33.64e6, phi_rf=0.0, a_z=0.0, q_z=0.15,
                     eta=0.1, envelope=None, raman_beat=(1 + 5e-5) * OMEGA_A,
                     include_micromotion=True, frozen_secular=False,
                     m_max=64, rtol=1e-12, target_time="mid"):
    """Full spin x Fock-space run."""
    return RunConfig(
        ion=IonParams(omega_a=OMEGA_A, eta=eta),
        envelope=envelope or Sine(math.pi, TAU),
        raman_beat=raman_beat,
        trap=TrapParams(omega_rf=omega_rf, phi_rf=phi_rf, a_z=a_z, q_z=q_z),
        flags=ModelFlags(include_micromotion=include_micromotion,
                         include_backward=True, frozen_secular=frozen_secular),
        numerics=Numerics(rtol=rtol, fock_m=m_max),
        target_time=target_time,
    )
