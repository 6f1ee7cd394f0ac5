"""Fidelity metrics, analytic bounds, phase matching, sweeps and landscapes."""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics.fock import FullFockModel
from .dynamics.kick import KickModel, KickState
from .errors import ConfigError
from .trap import TrapParams

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


# -- fidelity ------------------------------------------------------------------

def sdk_infidelity(state, target) -> float:
    """1 - |<target|state>|^2 for matching state containers (or raw arrays)."""
    a = getattr(state, "coeffs", state)
    b = getattr(target, "coeffs", target)
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        raise ValueError(f"state and target shapes differ: {a.shape} vs {b.shape}")
    norm = np.vdot(a, a).real
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"state norm^2 = {norm:.9f} is not 1")
    # clamp float noise: an overlap can exceed the norm only by rounding
    return max(0.0, 1.0 - abs(np.vdot(b, a)) ** 2)


def kick_target(n_max: int, theta: float | None = None) -> KickState:
    """Ladder target: the kicked state |1, +1>, or for a partial pulse area
    the ideal frozen-secular rotation cos(t/2)|0,0> - i sin(t/2)|1,+1>."""
    c = np.zeros((2, 2 * n_max + 1), dtype=complex)
    if theta is None:
        c[1, n_max + 1] = 1.0
    else:
        c[0, n_max] = math.cos(theta / 2)
        c[1, n_max + 1] = -1j * math.sin(theta / 2)
    return KickState(c, n_max)


def backward_bound(theta: float, omega_a: float, tau: float) -> float:
    """First-order bound on the counter-rotating contribution at resonance:
    [theta / (2 omega_a tau)]^2 for a constant pulse of area theta."""
    return (theta / (2 * omega_a * tau)) ** 2


# -- micromotion phase matching --------------------------------------------------

def phase_match_phi(omega_rf: float, t0: float, tau: float, n: int = 0) -> float:
    """RF phase nulling the micromotion drive integral (first order):
    phi = (2n+1) pi/2 - omega_rf (t0 + tau/2), wrapped to [0, 2 pi)."""
    phi = (2 * n + 1) * math.pi / 2 - omega_rf * (t0 + tau / 2)
    return phi % TWO_PI


def phase_match_phi_exact(trap: TrapParams, t0: float, tau: float, n: int = 0) -> float:
    """RF phase nulling the full drive integral including its -q_z^2/2 part.

    Solves sin(w(t0+tau)+phi) - sin(w t0+phi) = w tau q_z / 4; reduces to
    phase_match_phi as q_z -> 0.
    """
    r = (trap.omega_rf * tau * trap.q_z / 4) / (2 * math.sin(trap.omega_rf * tau / 2))
    if abs(r) > 1:
        raise ValueError("no exact phase-matched point: drive offset too large")
    shift = math.asin(r) if n % 2 == 0 else -math.asin(r)
    phi = (2 * n + 1) * math.pi / 2 - shift - trap.omega_rf * (t0 + tau / 2)
    return phi % TWO_PI


# -- model construction from a run configuration ----------------------------------

def uses_kick_ladder(cfg) -> bool:
    """Kick-ladder route applies when secular motion is frozen and the
    micromotion term is off; otherwise the full Fock model is required."""
    return cfg.flags.frozen_secular and not cfg.flags.include_micromotion


def build_kick_model(cfg, envelope=None, raman_beat=None) -> KickModel:
    return KickModel(
        envelope=envelope if envelope is not None else cfg.envelope,
        raman_beat=raman_beat if raman_beat is not None else cfg.raman_beat,
        omega_a=cfg.ion.omega_a,
        n_max=cfg.numerics.kick_n,
        include_backward=cfg.flags.include_backward,
    )


def build_fock_model(cfg, omega_rf=None, phi_rf=None, envelope=None,
                     raman_beat=None) -> FullFockModel:
    if cfg.trap is None:
        raise ConfigError("full model requires a trap block")
    trap = cfg.trap
    if omega_rf is not None or phi_rf is not None:
        trap = TrapParams(
            omega_rf=omega_rf if omega_rf is not None else trap.omega_rf,
            phi_rf=phi_rf if phi_rf is not None else trap.phi_rf,
            a_z=trap.a_z,
            q_z=trap.q_z,
        )
    return FullFockModel(
        trap=trap,
        eta=cfg.eta(),
        omega_a=cfg.ion.omega_a,
        envelope=envelope if envelope is not None else cfg.envelope,
        raman_beat=raman_beat if raman_beat is not None else cfg.raman_beat,
        flags=cfg.flags,
        m_max=cfg.numerics.fock_m,
        t0=cfg.t0,
    )


def infidelity_for(cfg, omega_rf=None, phi_rf=None, envelope=None,
                   raman_beat=None) -> float:
    """Single-kick infidelity for a configuration, with optional overrides."""
    num = cfg.numerics
    if uses_kick_ladder(cfg):
        model = build_kick_model(cfg, envelope=envelope, raman_beat=raman_beat)
        final = model.propagate(rtol=num.rtol, atol=num.atol)
        return sdk_infidelity(final, kick_target(model.n_max))
    model = build_fock_model(cfg, omega_rf=omega_rf, phi_rf=phi_rf,
                             envelope=envelope, raman_beat=raman_beat)
    final = model.propagate(rtol=num.rtol, atol=num.atol)
    target = model.kick_target(model.kick_reference_time(cfg.target_time))
    return sdk_infidelity(final, target)


# -- sweep containers -----------------------------------------------------------

@dataclass
class SweepAxis:
    name: str
    unit: str
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)


@dataclass
class SweepResult:
    """Infidelity grid with axis metadata; 1-D sweeps have a single axis."""

    axes: tuple
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        shape = tuple(len(ax.values) for ax in self.axes)
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} != grid {shape}")
        finite = self.values[np.isfinite(self.values)]
        if finite.size and (finite.min() < 0 or finite.max() > 1):
            raise ValueError("infidelities must lie in [0, 1]")

    def min_cell(self):
        idx = np.unravel_index(np.nanargmin(self.values), self.values.shape)
        return idx, float(self.values[idx])

    def to_csv(self, path):
        """Rows: second axis (or the single axis); shortest round-trip floats."""
        def fmt(x):
            return repr(float(x))

        with open(path, "w", encoding="utf-8") as fh:
            if len(self.axes) == 1:
                ax = self.axes[0]
                fh.write(f"{ax.name}[{ax.unit}],infidelity\n")
                for v, y in zip(ax.values, self.values):
                    fh.write(f"{fmt(v)},{fmt(y)}\n")
            else:
                ax_col, ax_row = self.axes  # values shape (col, row) = (axis1, axis2)
                fh.write(f"{ax_row.name}[{ax_row.unit}]\\{ax_col.name}[{ax_col.unit}],"
                         + ",".join(fmt(v) for v in ax_col.values) + "\n")
                for j, rv in enumerate(ax_row.values):
                    fh.write(fmt(rv) + ","
                             + ",".join(fmt(self.values[i, j])
                                        for i in range(len(ax_col.values))) + "\n")


def read_matrix_csv(path):
    """Parse a 2-D sweep CSV back into (col values, row values, matrix)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        col_vals = np.array([float(x) for x in header[1:]])
        rows = []
        row_vals = []
        for line in fh:
            parts = line.strip().split(",")
            row_vals.append(float(parts[0]))
            rows.append([float(x) for x in parts[1:]])
    return col_vals, np.array(row_vals), np.array(rows).T


# -- landscapes and robustness sweeps ---------------------------------------------

def _landscape_cell(args):
    cfg, omega_rf, phi_rf = args
    try:
        return infidelity_for(cfg, omega_rf=omega_rf, phi_rf=phi_rf)
    except Exception:
        log.exception("landscape cell failed at omega_rf=%.6e phi_rf=%.6f",
                      omega_rf, phi_rf)
        return math.nan


def _evaluate(worker, jobs, n_workers):
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(worker, jobs))
    return [worker(j) for j in jobs]


def landscape(cfg, omega_rf_values=None, phi_rf_values=None, n_workers=1,
              out=None) -> SweepResult:
    """Infidelity over an (omega_rf, phi_rf) grid of full-model propagations.

    Cells are independent; failures leave NaN cells rather than aborting.
    A preallocated `out` array is filled in place cell by cell, so partial
    results survive an interrupt.
    """
    if uses_kick_ladder(cfg):
        raise ConfigError("landscape requires the full model (frozen_secular: false)")
    if omega_rf_values is None or phi_rf_values is None:
        if cfg.landscape is None:
            raise ConfigError("no landscape grid configured")
        omega_rf_values, phi_rf_values = cfg.landscape.grids()
    omega_rf_values = np.asarray(omega_rf_values, dtype=float)
    phi_rf_values = np.asarray(phi_rf_values, dtype=float)
    shape = (len(omega_rf_values), len(phi_rf_values))
    if out is None:
        out = np.full(shape, math.nan)
    if out.shape != shape:
        raise ValueError(f"out array shape {out.shape} != grid {shape}")
    jobs = [(cfg, w, p) for w in omega_rf_values for p in phi_rf_values]
    if n_workers > 1:
        flat = _evaluate(_landscape_cell, jobs, n_workers)
        out[...] = np.array(flat).reshape(shape)
    else:
        for k, job in enumerate(jobs):
            out[divmod(k, shape[1])] = _landscape_cell(job)
    return SweepResult(
        axes=(SweepAxis("omega_rf", "rad/s", omega_rf_values),
              SweepAxis("phi_rf", "rad", phi_rf_values)),
        values=out,
        meta={"kind": "landscape"},
    )


def match_loci(omega_rf_values, t0, tau):
    """First-order phase-matched phi values (the two branches in [0, 2 pi))."""
    out = np.empty((len(omega_rf_values), 2))
    for i, w in enumerate(omega_rf_values):
        p0 = phase_match_phi(w, t0, tau, n=0)
        out[i] = sorted((p0, (p0 + math.pi) % TWO_PI))
    return out


_SWEEP_RANGES = {"pulse_area": 0.01, "raman_beat": 0.001}


def _sweep_cell(args):
    cfg, parameter, delta = args
    try:
        if parameter == "pulse_area":
            return infidelity_for(cfg, envelope=cfg.envelope.scaled(1.0 + delta))
        return infidelity_for(cfg, raman_beat=cfg.raman_beat * (1.0 + delta))
    except Exception:
        log.exception("sweep cell failed at %s delta=%.3e", parameter, delta)
        return math.nan


def robustness_sweep(cfg, parameter: str, rel_range: float | None = None,
                     n_points: int = 11, n_workers: int = 1) -> SweepResult:
    """Infidelity vs a fractional control error in pulse area or Raman beat."""
    if parameter not in _SWEEP_RANGES:
        raise ConfigError(f"unknown sweep parameter {parameter!r} "
                          f"(choose from {sorted(_SWEEP_RANGES)})")
    if rel_range is None:
        rel_range = _SWEEP_RANGES[parameter]
    deltas = np.linspace(-rel_range, rel_range, n_points)
    jobs = [(cfg, parameter, d) for d in deltas]
    values = np.array(_evaluate(_sweep_cell, jobs, n_workers))
    return SweepResult(
        axes=(SweepAxis(f"{parameter}_rel_error", "dimensionless", deltas),),
        values=values,
        meta={"kind": "robustness", "parameter": parameter,
              "max_infidelity": float(np.nanmax(values))},
    )


# -- optimization drivers -----------------------------------------------------------

def optimize_raman_beat(cfg, budget: int = 200, rel_width: float = 2e-3,
                        init_scale: float = 5e-5):
    """Minimize the kick infidelity over the Raman beat frequency alone.

    The search starts at the configured beat frequency with a simplex sized
    to the expected fractional shift of the optimum (a few 1e-5).
    """
    from .optimize import optimize

    x0 = np.array([cfg.raman_beat])
    bounds = (x0 * (1 - rel_width), x0 * (1 + rel_width))
    report = optimize(lambda x: infidelity_for(cfg, raman_beat=x[0]), x0,
                      bounds=bounds, budget=budget, init_scale=init_scale,
                      param_names=("raman_beat",))
    return report


def kick_train_infidelity(cfg, amps, raman_beat, rep_rate) -> float:
    """Fast exact evaluation of a pulse-train kick on the frozen ladder."""
    env = cfg.envelope.with_amps(amps)
    if rep_rate != env.rep_rate:
        from .envelopes import PulseTrain
        env = PulseTrain(amps=env.amps, width=env.width, rep_rate=rep_rate,
                         t_start=env.t_start)
    model = build_kick_model(cfg, envelope=env, raman_beat=raman_beat)
    return sdk_infidelity(model.propagate_exact(), kick_target(model.n_max))


def optimize_train(cfg, budget: int = 5000, rel_bounds: float = 0.5,
                   init_scale: float = 0.05):
    """Minimize a pulse-train kick over sub-pulse amplitudes, Raman beat and
    comb repetition rate (frozen-ladder route only)."""
    from .optimize import optimize

    if not uses_kick_ladder(cfg):
        raise ConfigError("train optimization runs on the frozen kick ladder "
                          "(set frozen_secular: true, include_micromotion: false)")
    env = cfg.envelope
    if not hasattr(env, "amps"):
        raise ConfigError("train optimization needs a pulse-train envelope")
    x0 = np.array(list(env.amps) + [cfg.raman_beat, env.rep_rate])
    bounds = (x0 * (1 - rel_bounds), x0 * (1 + rel_bounds))
    names = tuple(f"amp_{j}" for j in range(len(env.amps))) + ("raman_beat", "rep_rate")

    def objective(x):
        return kick_train_infidelity(cfg, x[:-2], x[-2], x[-1])

    return optimize(objective, x0, bounds=bounds, budget=budget,
                    init_scale=init_scale, param_names=names)
