"""Command-line entry points: simulate | landscape | sweep | optimize | check.

Outputs are CSV and JSON files in the chosen output directory; every file
embeds the fully-resolved configuration so a run is reproducible from its
own artifacts. Exit codes: 0 success, 2 configuration or validation error,
3 numerical failure.
"""

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import analysis
from .beams import validate_hierarchy
from .config import apply_overrides, load_config, parse_config, resolved_dict
from .errors import (ConfigError, OverlapError, PropagationError, SdkError,
                     StepUnderflowError, TruncationError, UnstableTrapError)
from .trap import secular_frequency, validate_fast_sdk

log = logging.getLogger("sdkick")

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x) -> str:
    return repr(float(x))


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _load(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            import yaml

            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{args.config}: top level must be a mapping")
    apply_overrides(data, args.override)
    return parse_config(data, source=str(args.config))


def _outdir(args):
    out = args.out or os.environ.get("SDKICK_OUT") or "out"
    os.makedirs(out, exist_ok=True)
    return out


# -- simulate -------------------------------------------------------------------

def cmd_simulate(args) -> int:
    cfg = _load(args)
    out = _outdir(args)
    num = cfg.numerics

    if analysis.uses_kick_ladder(cfg):
        model = analysis.build_kick_model(cfg)
        t0 = cfg.envelope.t_start if cfg.t0 is None else cfg.t0
        times = np.linspace(t0, t0 + cfg.envelope.duration, args.samples)
        traj = model.sample(times, rtol=num.rtol, atol=num.atol)
        ns = np.arange(-model.n_max, model.n_max + 1)
        labels = [f"pop_s{s}_n{n:+d}" for s in (0, 1) for n in ns]
        final = analysis.KickState(traj[-1], model.n_max)
        infid = analysis.sdk_infidelity(final, analysis.kick_target(model.n_max))
        truncation = final.edge_amplitude()
    else:
        model = analysis.build_fock_model(cfg)
        times = np.linspace(model.t0, model.t0 + model.tau, args.samples)
        traj = model.sample(times, rtol=num.rtol, atol=num.atol)
        labels = [f"pop_s{s}_m{m}" for s in (0, 1) for m in range(model.m_max)]
        from .dynamics.fock import FockState

        final = FockState(traj[-1], model.m_max)
        target = model.kick_target(model.kick_reference_time(cfg.target_time))
        infid = analysis.sdk_infidelity(final, target)
        truncation = final.tail_mass()

    pops = np.abs(traj) ** 2
    rows = [
        [t, cfg.envelope.value(t)] + list(pops[i].ravel())
        for i, t in enumerate(times)
    ]
    _write_csv(os.path.join(out, "timeseries.csv"), ["t", "omega0"] + labels, rows)
    summary = {
        "infidelity": infid,
        "norm_drift": abs(float(np.sum(pops[-1])) - 1.0),
        "spin_populations": [float(np.sum(pops[-1][0])), float(np.sum(pops[-1][1]))],
        "truncation_tail": truncation,
        "config": resolved_dict(cfg),
    }
    _write_json(os.path.join(out, "summary.json"), summary)
    log.info("simulate: infidelity %.6e -> %s", infid, out)
    return 0


# -- landscape ------------------------------------------------------------------

def cmd_landscape(args) -> int:
    cfg = _load(args)
    out = _outdir(args)
    grid = cfg.landscape
    if grid is None:
        from .config import LandscapeGrid

        grid = LandscapeGrid()
    omegas, phis = grid.grids()
    interrupted = False
    values = np.full((len(omegas), len(phis)), math.nan)
    try:
        result = analysis.landscape(cfg, omegas, phis, n_workers=args.threads,
                                    out=values)
    except KeyboardInterrupt:
        interrupted = True
        log.warning("landscape interrupted; flushing partial results")
        result = analysis.SweepResult(
            axes=(analysis.SweepAxis("omega_rf", "rad/s", omegas),
                  analysis.SweepAxis("phi_rf", "rad", phis)),
            values=values, meta={"kind": "landscape"})

    result.to_csv(os.path.join(out, "landscape.csv"))
    t0 = cfg.envelope.t_start if cfg.t0 is None else cfg.t0
    loci = analysis.match_loci(omegas, t0, cfg.envelope.duration)
    _write_csv(os.path.join(out, "loci.csv"),
               ["omega_rf", "phi_match_0", "phi_match_1"],
               [[w, l0, l1] for w, (l0, l1) in zip(omegas, loci)])
    meta = {
        "interrupted": interrupted,
        "config": resolved_dict(cfg),
        "axes": {"omega_rf": list(map(float, omegas)),
                 "phi_rf": list(map(float, phis))},
    }
    if np.isfinite(result.values).any():
        (i, j), best = result.min_cell()
        meta["min"] = {"omega_rf": float(omegas[i]), "phi_rf": float(phis[j]),
                       "infidelity": best}
    _write_json(os.path.join(out, "landscape.json"), meta)
    log.info("landscape: %dx%d cells -> %s", len(omegas), len(phis), out)
    return 0


# -- sweep ----------------------------------------------------------------------

def cmd_sweep(args) -> int:
    cfg = _load(args)
    out = _outdir(args)
    spec = cfg.sweep
    if spec is None:
        from .config import SweepSpec

        spec = SweepSpec()
    result = analysis.robustness_sweep(cfg, spec.parameter,
                                       rel_range=spec.rel_range,
                                       n_points=spec.n_points,
                                       n_workers=args.threads)
    result.to_csv(os.path.join(out, "sweep.csv"))
    _write_json(os.path.join(out, "sweep.json"), {
        "parameter": spec.parameter,
        "max_infidelity": result.meta["max_infidelity"],
        "config": resolved_dict(cfg),
    })
    log.info("sweep %s: max infidelity %.6e -> %s", spec.parameter,
             result.meta["max_infidelity"], out)
    return 0


# -- optimize --------------------------------------------------------------------

def cmd_optimize(args) -> int:
    cfg = _load(args)
    out = _outdir(args)
    spec = cfg.optimizer
    if spec is None:
        from .config import OptimizeSpec

        spec = OptimizeSpec()
    if spec.mode == "train":
        kwargs = {} if spec.rel_width is None else {"rel_bounds": spec.rel_width}
        report = analysis.optimize_train(cfg, budget=spec.budget, **kwargs)
    else:
        kwargs = {} if spec.rel_width is None else {"rel_width": spec.rel_width}
        report = analysis.optimize_raman_beat(cfg, budget=spec.budget, **kwargs)
    _write_json(os.path.join(out, "optimize.json"), {
        "mode": spec.mode,
        "best_params": report.named_best(),
        "best_infidelity": report.best_value,
        "evaluations": report.evaluations,
        "budget_exhausted": report.budget_exhausted,
        "trace": [[int(k), float(v)] for k, v in report.trace],
        "config": resolved_dict(cfg),
    })
    log.info("optimize %s: best %.6e in %d evaluations -> %s", spec.mode,
             report.best_value, report.evaluations, out)
    return 0


# -- check -----------------------------------------------------------------------

def cmd_check(args) -> int:
    cfg = _load(args)
    out = _outdir(args)
    report = {"config": resolved_dict(cfg)}
    if cfg.trap is not None:
        stability = cfg.trap.a_z + cfg.trap.q_z**2 / 2
        fast = validate_fast_sdk(cfg.trap, cfg.envelope.duration)
        report["trap"] = {
            "stability_parameter": stability,
            "omega_s": secular_frequency(cfg.trap),
            "omega_s_tau": fast.omega_s_tau,
            "fast_kick": fast.fast,
            "rf_area_term": fast.rf_area_term,
        }
        report["eta"] = cfg.eta()
    if cfg.beams is not None and cfg.beams.detuning is not None:
        bw = math.pi / cfg.envelope.duration
        h = validate_hierarchy(cfg.beams, bw, cfg.ion.omega_a)
        report["hierarchy"] = {
            "beat_ratio": h.beat_ratio, "qubit_ratio": h.qubit_ratio,
            "bandwidth_ratio": h.bandwidth_ratio, "all_ok": h.all_ok,
            "small_light_shift_assumed": h.small_light_shift_assumed,
        }
    _write_json(os.path.join(out, "check.json"), report)
    log.info("check -> %s", out)
    return 0


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdkick",
                                description="Spin-dependent-kick simulator")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in [("simulate", cmd_simulate), ("landscape", cmd_landscape),
                     ("sweep", cmd_sweep), ("optimize", cmd_optimize),
                     ("check", cmd_check)]:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="YAML run configuration")
        sp.add_argument("--out", default=None,
                        help="output directory (default $SDKICK_OUT or ./out)")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker-process cap for sweeps")
        sp.add_argument("--override", action="append", default=[],
                        metavar="PATH=VALUE",
                        help="dotted-path config override, repeatable")
        if name == "simulate":
            sp.add_argument("--samples", type=int, default=401,
                            help="time-series sample count")
        sp.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnstableTrapError, OverlapError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (StepUnderflowError, PropagationError, TruncationError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except SdkError as exc:
        log.error("%s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
