"""Run configuration: strict YAML parsing with explicit unit suffixes.

Every frequency, duration and angle in a config file carries a unit suffix
("10 GHz", "5 ns", "0.17 turns"); ordinary frequencies become angular
frequencies on ingestion. Unknown keys are rejected with their dotted path.
"""

import math
from dataclasses import dataclass

import numpy as np
import yaml

from . import units
from .beams import BeamPair
from .dynamics.flags import ModelFlags
from .envelopes import Constant, PulseTrain, Sine, sine_sampled_train
from .errors import ConfigError, SdkError
from .trap import IonParams, TrapParams, resolve_eta, secular_frequency

_MISSING = object()


class _Section:
    """One mapping level of the config with location-aware access."""

    def __init__(self, data, path, source):
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"{source}: '{path}' must be a mapping")
        self.data = dict(data)
        self.path = path
        self.source = source

    def _loc(self, key):
        return f"{self.path}.{key}" if self.path else key

    def take(self, key, default=_MISSING):
        if key in self.data:
            return self.data.pop(key)
        if default is _MISSING:
            raise ConfigError(f"{self.source}: missing required key '{self._loc(key)}'")
        return default

    def section(self, key, required=False):
        if key not in self.data and not required:
            return None
        return _Section(self.take(key, None), self._loc(key), self.source)

    def parse(self, key, parser, default=_MISSING):
        raw = self.take(key, default)
        if raw is default and default is not _MISSING:
            return raw
        try:
            return parser(raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{self.source}: {self._loc(key)}: {exc}") from exc

    def finish(self):
        if self.data:
            key = sorted(self.data)[0]
            raise ConfigError(f"{self.source}: unknown key '{self._loc(key)}'")


def _as_float(x):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValueError(f"expected a number, got {x!r}")
    return float(x)


def _as_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"expected an integer, got {x!r}")
    return x


def _as_bool(x):
    if not isinstance(x, bool):
        raise ValueError(f"expected true/false, got {x!r}")
    return x


@dataclass(frozen=True)
class Numerics:
    rtol: float = 1e-12
    atol: float = 1e-14
    kick_n: int = 6
    fock_m: int = 64


@dataclass(frozen=True)
class LandscapeGrid:
    omega_rf_min: float = units.TWO_PI * 4e6
    omega_rf_max: float = units.TWO_PI * 40e6
    omega_rf_n: int = 64
    phi_rf_n: int = 64

    def grids(self):
        omegas = np.linspace(self.omega_rf_min, self.omega_rf_max, self.omega_rf_n)
        phis = np.arange(self.phi_rf_n) * (units.TWO_PI / self.phi_rf_n)
        return omegas, phis


@dataclass(frozen=True)
class SweepSpec:
    parameter: str = "pulse_area"
    rel_range: float | None = None
    n_points: int = 11


@dataclass(frozen=True)
class OptimizeSpec:
    mode: str = "raman_beat"
    budget: int = 200
    rel_width: float | None = None


@dataclass
class RunConfig:
    ion: IonParams
    envelope: object
    raman_beat: float
    trap: TrapParams | None = None
    beams: BeamPair | None = None
    flags: ModelFlags = ModelFlags()
    target_time: str = "mid"
    numerics: Numerics = Numerics()
    t0: float | None = None
    landscape: LandscapeGrid | None = None
    sweep: SweepSpec | None = None
    optimizer: OptimizeSpec | None = None
    seed: int = 0

    def eta(self) -> float:
        if self.ion.eta is not None and (self.ion.mass is None or self.ion.k is None):
            return self.ion.eta
        if self.trap is None:
            raise ConfigError("deriving eta from mass and k requires a trap block")
        return resolve_eta(self.ion, secular_frequency(self.trap))


def _parse_trap(sec):
    if sec is None:
        return None
    try:
        trap = TrapParams(
            omega_rf=sec.parse("omega_rf", units.angular_frequency),
            phi_rf=sec.parse("phi_rf", units.angle, default=0.0),
            a_z=sec.parse("a_z", _as_float, default=0.0),
            q_z=sec.parse("q_z", _as_float, default=0.0),
        )
    except SdkError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{sec.source}: trap: {exc}") from exc
    sec.finish()
    return trap


def _parse_ion(sec):
    ion = IonParams(
        omega_a=sec.parse("omega_a", units.angular_frequency),
        eta=sec.parse("eta", _as_float, default=None),
        mass=sec.parse("mass", _as_float, default=None),
        k=sec.parse("k", _as_float, default=None),
    )
    sec.finish()
    return ion


def _parse_beams(sec, raman_beat):
    if sec is None:
        return None
    pair = BeamPair(
        beta1=sec.parse("beta1", units.angle, default=math.pi / 4),
        beta2=sec.parse("beta2", units.angle, default=-math.pi / 4),
        dpsi=sec.parse("dpsi", units.angle, default=0.0),
        dk=sec.parse("dk", _as_float),
        dphi_rate=sec.parse("dphi_rate", units.angular_frequency,
                            default=raman_beat),
        detuning=sec.parse("detuning", units.angular_frequency, default=None),
    )
    sec.finish()
    return pair


def _parse_envelope(sec):
    kind = sec.take("kind")
    t_start = sec.parse("t_start", units.duration, default=0.0)
    if kind == "constant":
        env = Constant(theta=sec.parse("theta", units.angle),
                       tau=sec.parse("tau", units.duration), t_start=t_start)
    elif kind == "sine":
        env = Sine(theta=sec.parse("theta", units.angle),
                   tau=sec.parse("tau", units.duration), t_start=t_start)
    elif kind == "train":
        width = sec.parse("width", units.duration)
        rep_rate = sec.parse("rep_rate", units.angular_frequency)
        amps = sec.take("amps", None)
        if amps is not None:
            if not isinstance(amps, list):
                raise ConfigError(f"{sec.source}: envelope.amps must be a list")
            parsed = []
            for i, a in enumerate(amps):
                try:
                    parsed.append(units.angular_frequency(a))
                except ValueError as exc:
                    raise ConfigError(
                        f"{sec.source}: envelope.amps[{i}]: {exc}") from exc
            env = PulseTrain(amps=tuple(parsed), width=width, rep_rate=rep_rate,
                             t_start=t_start)
        else:
            env = sine_sampled_train(
                theta=sec.parse("theta", units.angle),
                n=sec.parse("n", _as_int),
                width=width, rep_rate=rep_rate, t_start=t_start)
    else:
        raise ConfigError(f"{sec.source}: envelope.kind must be constant, sine "
                          f"or train, got {kind!r}")
    sec.finish()
    return env


def _parse_model(sec):
    if sec is None:
        return ModelFlags(), "mid"
    flags = ModelFlags(
        include_micromotion=sec.parse("include_micromotion", _as_bool, default=True),
        include_backward=sec.parse("include_backward", _as_bool, default=True),
        frozen_secular=sec.parse("frozen_secular", _as_bool, default=False),
    )
    target_time = sec.take("target_time", "mid")
    if target_time not in ("mid", "end"):
        raise ConfigError(f"{sec.source}: model.target_time must be 'mid' or 'end'")
    sec.finish()
    return flags, target_time


def _parse_numerics(sec):
    if sec is None:
        return Numerics()
    num = Numerics(
        rtol=sec.parse("rtol", _as_float, default=1e-12),
        atol=sec.parse("atol", _as_float, default=1e-14),
        kick_n=sec.parse("kick_n", _as_int, default=6),
        fock_m=sec.parse("fock_m", _as_int, default=64),
    )
    sec.finish()
    return num


def _parse_landscape(sec):
    if sec is None:
        return None
    osec = sec.section("omega_rf")
    if osec is not None:
        omin = osec.parse("min", units.angular_frequency, default=units.TWO_PI * 4e6)
        omax = osec.parse("max", units.angular_frequency, default=units.TWO_PI * 40e6)
        on = osec.parse("n", _as_int, default=64)
        osec.finish()
    else:
        omin, omax, on = units.TWO_PI * 4e6, units.TWO_PI * 40e6, 64
    psec = sec.section("phi_rf")
    if psec is not None:
        pn = psec.parse("n", _as_int, default=64)
        psec.finish()
    else:
        pn = 64
    sec.finish()
    return LandscapeGrid(omega_rf_min=omin, omega_rf_max=omax, omega_rf_n=on,
                         phi_rf_n=pn)


def _parse_sweep(sec):
    if sec is None:
        return None
    spec = SweepSpec(
        parameter=sec.take("parameter", "pulse_area"),
        rel_range=sec.parse("rel_range", _as_float, default=None),
        n_points=sec.parse("n_points", _as_int, default=11),
    )
    sec.finish()
    return spec


def _parse_optimize(sec):
    if sec is None:
        return None
    spec = OptimizeSpec(
        mode=sec.take("mode", "raman_beat"),
        budget=sec.parse("budget", _as_int, default=200),
        rel_width=sec.parse("rel_width", _as_float, default=None),
    )
    if spec.mode not in ("raman_beat", "train"):
        raise ConfigError(f"{sec.source}: optimize.mode must be 'raman_beat' "
                          f"or 'train', got {spec.mode!r}")
    sec.finish()
    return spec


def parse_config(data: dict, source: str = "<config>") -> RunConfig:
    root = _Section(data, "", source)
    trap = _parse_trap(root.section("trap"))
    ion_sec = root.section("ion")
    if ion_sec is None:
        raise ConfigError(f"{source}: missing required block 'ion'")
    try:
        ion = _parse_ion(ion_sec)
    except ValueError as exc:
        raise ConfigError(f"{source}: ion: {exc}") from exc
    env_sec = root.section("envelope")
    if env_sec is None:
        raise ConfigError(f"{source}: missing required block 'envelope'")
    envelope = _parse_envelope(env_sec)

    if "raman_beat" in root.data and "raman_beat_rel" in root.data:
        raise ConfigError(f"{source}: give raman_beat or raman_beat_rel, not both")
    if "raman_beat" in root.data:
        raman_beat = root.parse("raman_beat", units.angular_frequency)
    else:
        raman_beat = root.parse("raman_beat_rel", _as_float, default=1.0) * ion.omega_a

    beams = _parse_beams(root.section("beams"), raman_beat)
    flags, target_time = _parse_model(root.section("model"))
    numerics = _parse_numerics(root.section("numerics"))
    t0 = root.parse("t0", units.duration, default=None)
    landscape = _parse_landscape(root.section("landscape"))
    sweep = _parse_sweep(root.section("sweep"))
    optimizer = _parse_optimize(root.section("optimize"))
    seed = root.parse("seed", _as_int, default=0)
    root.finish()

    return RunConfig(ion=ion, envelope=envelope, raman_beat=raman_beat, trap=trap,
                     beams=beams, flags=flags, target_time=target_time,
                     numerics=numerics, t0=t0, landscape=landscape, sweep=sweep,
                     optimizer=optimizer, seed=seed)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return parse_config(data, source=str(path))


def apply_overrides(data: dict, overrides) -> dict:
    """Apply dotted-path 'key.path=value' overrides onto a raw config dict."""
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form path=value")
        path, _, raw_value = item.partition("=")
        keys = [k for k in path.strip().split(".") if k]
        if not keys:
            raise ConfigError(f"override {item!r} has an empty path")
        try:
            value = yaml.safe_load(raw_value)
        except yaml.YAMLError as exc:
            raise ConfigError(f"override {item!r}: bad value: {exc}") from exc
        node = data
        for k in keys[:-1]:
            node = node.setdefault(k, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override {item!r}: '{k}' is not a mapping")
        node[keys[-1]] = value
    return data


def _envelope_dict(env):
    if isinstance(env, Constant):
        return {"kind": "constant", "theta": env.theta, "tau": env.tau,
                "t_start": env.t_start}
    if isinstance(env, Sine):
        return {"kind": "sine", "theta": env.theta, "tau": env.tau,
                "t_start": env.t_start}
    return {"kind": "train", "amps": list(env.amps), "width": env.width,
            "rep_rate": env.rep_rate, "t_start": env.t_start}


def resolved_dict(cfg: RunConfig) -> dict:
    """Fully-resolved configuration in internal units (rad/s, s, rad) for
    embedding into every output artifact."""
    out = {
        "trap": None if cfg.trap is None else {
            "omega_rf": cfg.trap.omega_rf, "phi_rf": cfg.trap.phi_rf,
            "a_z": cfg.trap.a_z, "q_z": cfg.trap.q_z},
        "ion": {"omega_a": cfg.ion.omega_a, "eta": cfg.ion.eta,
                "mass": cfg.ion.mass, "k": cfg.ion.k},
        "beams": None if cfg.beams is None else {
            "beta1": cfg.beams.beta1, "beta2": cfg.beams.beta2,
            "dpsi": cfg.beams.dpsi, "dk": cfg.beams.dk,
            "dphi_rate": cfg.beams.dphi_rate, "detuning": cfg.beams.detuning},
        "envelope": _envelope_dict(cfg.envelope),
        "raman_beat": cfg.raman_beat,
        "model": {"include_micromotion": cfg.flags.include_micromotion,
                  "include_backward": cfg.flags.include_backward,
                  "frozen_secular": cfg.flags.frozen_secular,
                  "target_time": cfg.target_time},
        "numerics": {"rtol": cfg.numerics.rtol, "atol": cfg.numerics.atol,
                     "kick_n": cfg.numerics.kick_n, "fock_m": cfg.numerics.fock_m},
        "t0": cfg.t0,
        "seed": cfg.seed,
    }
    if cfg.landscape is not None:
        out["landscape"] = {
            "omega_rf_min": cfg.landscape.omega_rf_min,
            "omega_rf_max": cfg.landscape.omega_rf_max,
            "omega_rf_n": cfg.landscape.omega_rf_n,
            "phi_rf_n": cfg.landscape.phi_rf_n}
    if cfg.sweep is not None:
        out["sweep"] = {"parameter": cfg.sweep.parameter,
                        "rel_range": cfg.sweep.rel_range,
                        "n_points": cfg.sweep.n_points}
    if cfg.optimizer is not None:
        out["optimize"] = {"mode": cfg.optimizer.mode,
                           "budget": cfg.optimizer.budget,
                           "rel_width": cfg.optimizer.rel_width}
    return out
