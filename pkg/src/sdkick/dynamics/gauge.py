"""Closed-form solutions for the constant-envelope kick from |0, 0>.

A diagonal time-dependent gauge V(t) = diag(e^{i chi_j t}) turns the
oscillating ladder Hamiltonian into a constant real symmetric matrix M,
so the state is

    psi(t) = V(t)^{-1} exp(-i M t) (1, 0, ..., 0)^T,

solved here by eigendecomposition. Two truncations are provided: the
three-state manifold {|0,0>, |1,+1>, |1,-1>} and the five-state manifold
adding |0,+2>, |0,-2>. Both serve as independent oracles for the numeric
propagators; g0 = Omega0 / 2 = theta / (2 tau) for a constant pulse.
"""

import numpy as np
from scipy.linalg import eigh


def _solve(m, chi, t):
    evals, evecs = eigh(m)
    e0 = np.zeros(len(chi), dtype=complex)
    e0[0] = 1.0
    b = evecs @ (np.exp(-1j * evals * t) * (evecs.T @ e0))
    return np.exp(-1j * chi * t) * b


def gauge_solver_3(g0: float, omega_a: float, dw: float, t: float) -> np.ndarray:
    """Amplitudes (c_00, c_1+, c_1-) at time t for a constant drive g0."""
    wm, wp = omega_a - dw, omega_a + dw
    m = np.array([[0.0, g0, g0],
                  [g0, wm, 0.0],
                  [g0, 0.0, wp]])
    chi = np.array([0.0, -wm, -wp])
    return _solve(m, chi, t)


def gauge_solver_5(g0: float, omega_a: float, dw: float, t: float) -> np.ndarray:
    """Amplitudes (c_00, c_1+, c_1-, c_0+2, c_0-2) at time t."""
    wm, wp = omega_a - dw, omega_a + dw
    m = np.array([[0.0, g0, g0, 0.0, 0.0],
                  [g0, wm, 0.0, g0, 0.0],
                  [g0, 0.0, wp, 0.0, g0],
                  [0.0, g0, 0.0, -2 * dw, 0.0],
                  [0.0, 0.0, g0, 0.0, 2 * dw]])
    chi = np.array([0.0, -wm, -wp, 2 * dw, -2 * dw])
    return _solve(m, chi, t)
