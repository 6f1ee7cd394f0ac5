"""Full spin x Fock-space model with micromotion.

In the interaction picture of the secular oscillator and the qubit, the
Hamiltonian has three parts (hbar = 1):

  micromotion :  (w_rf^2 / 16 w_s) (e^{i w_s t} ad + e^{-i w_s t} a)^2
                 [2 q_z cos(w_rf t + phi_rf) - q_z^2 / 2]
  co-rotating :  Omega0(t)/2 [ Dp(t) s+ e^{i (wa - dw) t} + h.c. ]
  counter-rot.:  Omega0(t)/2 [ Dp(t) s- e^{-i (wa + dw) t} + h.c. ]

with displacement operators Dp/Dm(t) = D(+-2i eta e^{i w_s t}). These are
built once as matrix exponentials of the truncated generator at t = 0 and
conjugated by the diagonal phases P(t) = diag(e^{i w_s t m}); for truncated
matrices the identity D(alpha e^{i phi}) = P D(alpha) P^dagger is exact, so
the cached exponential loses nothing.

The micromotion term commutes with itself at different times once the
secular phases are frozen; its exact time-ordered integral is then a single
matrix exponential in (ad + a)^2, exposed as micromotion_propagator().
"""

import math

import numpy as np
from scipy.linalg import eigh

from ..errors import TruncationError
from ..trap import TrapParams, secular_frequency
from .flags import ModelFlags
from .integrate import propagate, propagate_piecewise

TAIL_MASS_LIMIT = 1e-8


def lowering(m_max: int) -> np.ndarray:
    """Truncated annihilation operator a with <m-1|a|m> = sqrt(m)."""
    return np.diag(np.sqrt(np.arange(1.0, m_max)), k=1)


def displacement(alpha: complex, m_max: int) -> np.ndarray:
    """D(alpha) = exp(alpha ad - alpha* a) on the truncated Fock space.

    Evaluated by eigendecomposition of the Hermitian i(alpha ad - alpha* a);
    unitary on the truncated space by construction.
    """
    a = lowering(m_max)
    gen_h = 1j * (alpha * a.T - np.conj(alpha) * a)
    evals, evecs = eigh(gen_h)
    return (evecs * np.exp(-1j * evals)) @ evecs.conj().T


def coherent(alpha: complex, m_max: int) -> np.ndarray:
    """Closed-form coherent amplitudes <m|alpha> = e^{-|a|^2/2} a^m / sqrt(m!)."""
    m = np.arange(m_max)
    log_fact = np.cumsum(np.concatenate([[0.0], np.log(np.arange(1.0, m_max))]))
    amp = np.exp(-abs(alpha) ** 2 / 2) * np.power(complex(alpha), m)
    return amp * np.exp(-0.5 * log_fact)


class FockState:
    """Amplitudes c[s, m] over spin s in {0, 1} and Fock level m < m_max."""

    __slots__ = ("coeffs", "m_max")

    def __init__(self, coeffs, m_max):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (2, m_max):
            raise ValueError(f"expected shape (2, {m_max}), got {coeffs.shape}")
        self.coeffs = coeffs
        self.m_max = m_max

    @classmethod
    def ground(cls, m_max=64):
        c = np.zeros((2, m_max), dtype=complex)
        c[0, 0] = 1.0
        return cls(c, m_max)

    def copy(self):
        return FockState(self.coeffs.copy(), self.m_max)

    def norm_sq(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def populations(self):
        return np.abs(self.coeffs) ** 2

    def spin_populations(self):
        return np.sum(np.abs(self.coeffs) ** 2, axis=1)

    def tail_mass(self, top_fraction=0.1):
        """Population in the top fraction of Fock levels (cutoff adequacy)."""
        k = max(1, math.ceil(self.m_max * top_fraction))
        return float(np.sum(np.abs(self.coeffs[:, self.m_max - k:]) ** 2))


def check_cutoff(state: FockState, limit: float = TAIL_MASS_LIMIT):
    tail = state.tail_mass()
    if tail > limit:
        raise TruncationError(
            f"tail mass {tail:.3e} in top Fock levels exceeds {limit:.1e}; "
            f"raise m_max above {state.m_max}"
        )


# -- pure micromotion --------------------------------------------------------

def micromotion_phase(trap: TrapParams, t0: float, tau: float) -> float:
    """Accumulated micromotion drive phase over [t0, t0 + tau].

    theta = 2 cos(w_rf t0 + phi_rf + w_rf tau / 2) sin(w_rf tau / 2); the
    constant -q_z^2/2 part of the drive bracket is dropped here, matching
    the first-order phase-matching condition.
    """
    return 2 * math.cos(trap.omega_rf * t0 + trap.phi_rf + trap.omega_rf * tau / 2) \
        * math.sin(trap.omega_rf * tau / 2)


def micromotion_phase_exact(trap: TrapParams, t0: float, tau: float) -> float:
    """Like micromotion_phase but keeping the -q_z^2/2 drive term."""
    return (
        math.sin(trap.omega_rf * (t0 + tau) + trap.phi_rf)
        - math.sin(trap.omega_rf * t0 + trap.phi_rf)
        - trap.omega_rf * tau * trap.q_z / 4
    )


def micromotion_propagator(trap: TrapParams, m_max: int, t0: float, tau: float,
                           exact: bool = False) -> np.ndarray:
    """Frozen-secular micromotion propagator on the Fock sector.

    U = exp[-i (w_rf^2 / 16 w_s) (2 q_z / w_rf) theta (ad + a)^2], spin
    diagonal. theta is micromotion_phase (or its exact variant).
    """
    omega_s = secular_frequency(trap)
    if omega_s == 0:
        raise ValueError("secular frequency vanishes; micromotion picture undefined")
    theta = (micromotion_phase_exact if exact else micromotion_phase)(trap, t0, tau)
    coef = (trap.omega_rf**2 / (16 * omega_s)) * (2 * trap.q_z / trap.omega_rf) * theta
    a = lowering(m_max)
    x2 = (a.T + a) @ (a.T + a)
    evals, evecs = eigh(x2)
    return (evecs * np.exp(-1j * coef * evals)) @ evecs.conj().T


def apply_micromotion_propagator(u: np.ndarray, state: FockState) -> FockState:
    out = FockState(state.coeffs @ u.T, state.m_max)
    check_cutoff(out)
    return out


# -- full model ---------------------------------------------------------------

class FullFockModel:
    """Kick drive plus micromotion on the truncated spin x Fock space."""

    def __init__(self, trap, eta, omega_a, envelope, raman_beat,
                 flags=ModelFlags(), m_max=64, t0=None):
        self.trap = trap
        self.eta = eta
        self.omega_a = omega_a
        self.envelope = envelope
        self.raman_beat = raman_beat
        self.flags = flags
        self.m_max = m_max
        self.t0 = envelope.t_start if t0 is None else t0
        self.tau = envelope.duration

        self.omega_s = secular_frequency(trap)
        if self.omega_s <= 0:
            raise ValueError("full model needs omega_s > 0 (a_z + q_z^2/2 > 0)")
        # secular phases are frozen in the fast-kick limit, coefficients keep omega_s
        self._phase_rate = 0.0 if flags.frozen_secular else self.omega_s
        self._w_minus = omega_a - raman_beat
        self._w_plus = omega_a + raman_beat
        self._c_mm = trap.omega_rf**2 / (16 * self.omega_s)

        m = np.arange(m_max, dtype=float)
        self._n = m
        self._two_n_plus_1 = 2 * m + 1
        self._s2 = np.sqrt(m * (m - 1))  # <m|ad^2|m-2> = s2[m]
        self._d_plus = displacement(2j * eta, m_max)
        self._d_minus = self._d_plus.conj().T

    # -- Hamiltonian application ----------------------------------------------

    def h_apply(self, t, coeffs):
        """Apply H(t) to amplitudes of shape (2, m_max)."""
        out = np.zeros_like(coeffs)
        if self.flags.include_micromotion:
            drive = 2 * self.trap.q_z * math.cos(self.trap.omega_rf * t + self.trap.phi_rf)
            coef = self._c_mm * (drive - self.trap.q_z**2 / 2)
            ph2 = np.exp(2j * self._phase_rate * t)
            out[:, 2:] += (coef * ph2) * self._s2[2:] * coeffs[:, :-2]
            out[:, :-2] += (coef * np.conj(ph2)) * self._s2[2:] * coeffs[:, 2:]
            out += coef * self._two_n_plus_1 * coeffs
        g = self.envelope.value(t) / 2.0
        if g != 0.0:
            ph = np.exp(1j * self._phase_rate * t * self._n)
            cph = np.conj(ph)
            dp_c0 = ph * (self._d_plus @ (cph * coeffs[0]))
            dm_c1 = ph * (self._d_minus @ (cph * coeffs[1]))
            out[0] += g * np.exp(-1j * self._w_minus * t) * dm_c1
            out[1] += g * np.exp(1j * self._w_minus * t) * dp_c0
            if self.flags.include_backward:
                dp_c1 = ph * (self._d_plus @ (cph * coeffs[1]))
                dm_c0 = ph * (self._d_minus @ (cph * coeffs[0]))
                out[0] += g * np.exp(-1j * self._w_plus * t) * dp_c1
                out[1] += g * np.exp(1j * self._w_plus * t) * dm_c0
        return out

    # -- propagation ------------------------------------------------------------

    def propagate(self, state=None, t0=None, t1=None, rtol=1e-12, atol=None,
                  cutoff_check=True):
        state = FockState.ground(self.m_max) if state is None else state
        if t0 is None:
            t0 = self.t0
        if t1 is None:
            t1 = self.t0 + self.tau

        def skippable(ta, tb):
            # only drive-free gaps with micromotion disabled evolve trivially
            return (not self.flags.include_micromotion
                    and self.envelope.value((ta + tb) / 2) == 0.0)

        c = propagate_piecewise(state.coeffs, self.h_apply, t0, t1,
                                self.envelope.breakpoints(), rtol=rtol,
                                atol=atol, skip_segment=skippable)
        out = FockState(c, self.m_max)
        if cutoff_check:
            check_cutoff(out)
        return out

    def sample(self, times, state=None, rtol=1e-12, atol=None):
        state = FockState.ground(self.m_max) if state is None else state
        times = np.asarray(times, dtype=float)
        out = np.empty((len(times), 2, self.m_max), dtype=complex)
        y = state.coeffs.copy()
        out[0] = y
        t_prev = times[0]
        for i, t in enumerate(times[1:], start=1):
            edges = [b for b in self.envelope.breakpoints() if t_prev < b < t]
            y = propagate_piecewise(y, self.h_apply, t_prev, t, edges,
                                    rtol=rtol, atol=atol)
            out[i] = y
            t_prev = t
        return out

    # -- target -------------------------------------------------------------------

    def kick_reference_time(self, convention: str = "mid") -> float:
        """Reference time for the target kick phase: the mean kick time
        t0 + tau/2 of a symmetric pulse ("mid"), or the pulse end ("end")."""
        if convention == "mid":
            return self.t0 + self.tau / 2
        if convention == "end":
            return self.t0 + self.tau
        raise ValueError(f"unknown target-time convention {convention!r}")

    def kick_target(self, reference_time=None) -> FockState:
        """Target state |1> x D(2i eta e^{i w_s t_ref}) |0>."""
        if reference_time is None:
            reference_time = self.kick_reference_time("mid")
        ph = np.exp(1j * self._phase_rate * reference_time * self._n)
        c = np.zeros((2, self.m_max), dtype=complex)
        c[1] = ph * self._d_plus[:, 0]
        return FockState(c, self.m_max)


__all__ = [
    "FockState", "FullFockModel", "lowering", "displacement", "coherent",
    "micromotion_phase", "micromotion_phase_exact", "micromotion_propagator",
    "apply_micromotion_propagator", "check_cutoff", "propagate",
]
