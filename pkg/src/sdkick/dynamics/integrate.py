"""Adaptive propagation of i dpsi/dt = H(t) psi.

Backed by the explicit Dormand-Prince 8(5,3) embedded pair (scipy's DOP853),
i.e. adaptive step control from an embedded lower-order error estimate.
"""

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import PropagationError, StepUnderflowError

MIN_STEP = 1e-18  # s; below this the problem is considered stiff/broken


def propagate(state, h_apply, t0, t1, rtol=1e-12, atol=None, t_eval=None):
    """Propagate `state` under H(t) from t0 to t1.

    state : complex ndarray of any shape
    h_apply : callable(t, state) -> H(t) @ state, same shape as state
    rtol : relative tolerance (default 1e-12); atol defaults to rtol * 1e-2
    t_eval : optional sample times; when given, returns (times, states) with
        states stacked along the first axis, otherwise returns the final state.

    Raises StepUnderflowError when the integrator cannot proceed and
    PropagationError when the norm drifts by more than 100 * rtol.
    """
    if t1 < t0:
        raise ValueError(f"t1={t1} earlier than t0={t0}")
    if atol is None:
        atol = rtol * 1e-2
    y0 = np.asarray(state, dtype=complex)
    shape = y0.shape
    if t1 == t0:
        if t_eval is not None:
            return np.asarray(t_eval), y0.reshape((1,) + shape).copy()
        return y0.copy()

    def rhs(t, y):
        return -1j * h_apply(t, y.reshape(shape)).ravel()

    sol = solve_ivp(
        rhs,
        (t0, t1),
        y0.ravel(),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=t_eval,
        dense_output=False,
    )
    if not sol.success:
        raise StepUnderflowError(
            f"integration failed on [{t0:.6e}, {t1:.6e}]: {sol.message}"
        )
    norm0 = np.linalg.norm(y0)
    norm1 = np.linalg.norm(sol.y[:, -1])
    if abs(norm1 - norm0) > 100 * rtol * max(1.0, norm0):
        raise PropagationError(
            f"norm drifted by {abs(norm1 - norm0):.3e} (> {100 * rtol:.1e})"
        )
    if t_eval is not None:
        return sol.t, sol.y.T.reshape((-1,) + shape)
    return sol.y[:, -1].reshape(shape)


def propagate_piecewise(state, h_apply, t0, t1, breakpoints, rtol=1e-12,
                        atol=None, skip_segment=None):
    """Propagate over [t0, t1] splitting at interior breakpoints.

    skip_segment(ta, tb) -> True marks segments on which H vanishes
    identically, which are then crossed without integration.
    """
    edges = [t0] + sorted(t for t in breakpoints if t0 < t < t1) + [t1]
    y = np.asarray(state, dtype=complex).copy()
    for ta, tb in zip(edges[:-1], edges[1:]):
        if tb <= ta:
            continue
        if skip_segment is not None and skip_segment(ta, tb):
            continue
        y = propagate(y, h_apply, ta, tb, rtol=rtol, atol=atol)
    return y
