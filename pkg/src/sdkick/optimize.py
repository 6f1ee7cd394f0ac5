"""Derivative-free simplex minimization with bound projection.

Standard Nelder-Mead coefficients (reflection 1, expansion 2, contraction
0.5, shrink 0.5), bounds enforced by projecting candidates onto the box,
and an optional restart-from-best loop that rebuilds a shrinking simplex
around the incumbent until the evaluation budget runs out. Everything is
deterministic given the initial point.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class OptimizationReport:
    best_params: np.ndarray
    best_value: float
    evaluations: int
    budget_exhausted: bool
    trace: list = field(default_factory=list)  # (evaluation count, best value so far)
    param_names: tuple | None = None

    @property
    def best_infidelity(self) -> float:
        return self.best_value

    def named_best(self) -> dict:
        names = self.param_names or tuple(f"x{i}" for i in range(len(self.best_params)))
        return {n: float(v) for n, v in zip(names, self.best_params)}


def optimize(objective, init, bounds=None, budget=1000, init_scale=0.05,
             diameter_tol=1e-10, restart=True, param_names=None) -> OptimizationReport:
    """Minimize `objective` from `init` within `budget` evaluations.

    bounds : optional (lower, upper) arrays; candidates are clipped onto the box.
    init_scale : relative size of the first simplex around init.
    diameter_tol : relative simplex diameter at which a cycle terminates.
    restart : rebuild a 4x smaller simplex around the best point after each
        converged cycle instead of stopping (until the budget is exhausted).
    """
    x0 = np.asarray(init, dtype=float).copy()
    n = x0.size
    if budget < n + 1:
        raise ValueError(f"budget {budget} below dimension+1 = {n + 1}")
    if bounds is not None:
        lo = np.asarray(bounds[0], dtype=float)
        hi = np.asarray(bounds[1], dtype=float)
        proj = lambda x: np.clip(x, lo, hi)
    else:
        proj = lambda x: x

    evals = 0
    trace = []

    def feval(x):
        nonlocal evals
        evals += 1
        return float(objective(x))

    best_x = proj(x0)
    best_f = feval(best_x)
    trace.append((evals, best_f))

    def note_best(x, f):
        nonlocal best_x, best_f
        if f < best_f:
            best_x, best_f = x.copy(), f
            trace.append((evals, best_f))

    scale = init_scale
    while evals < budget:
        simplex = [best_x.copy()]
        fs = [best_f]
        for i in range(n):
            if evals >= budget:
                break
            xi = best_x.copy()
            xi[i] += scale * (abs(xi[i]) if xi[i] != 0.0 else 1.0)
            xi = proj(xi)
            simplex.append(xi)
            fs.append(feval(xi))
        if len(simplex) < n + 1:
            break
        simplex = np.array(simplex)
        fs = np.array(fs)

        while evals < budget:
            order = np.argsort(fs, kind="stable")
            simplex, fs = simplex[order], fs[order]
            note_best(simplex[0], fs[0])
            span = np.max(np.abs(simplex[1:] - simplex[0]))
            if span <= diameter_tol * max(1.0, np.max(np.abs(simplex[0]))):
                break
            centroid = simplex[:-1].mean(axis=0)
            xr = proj(centroid + (centroid - simplex[-1]))
            fr = feval(xr)
            if fr < fs[0]:
                if evals < budget:
                    xe = proj(centroid + 2.0 * (centroid - simplex[-1]))
                    fe = feval(xe)
                    if fe < fr:
                        simplex[-1], fs[-1] = xe, fe
                    else:
                        simplex[-1], fs[-1] = xr, fr
                else:
                    simplex[-1], fs[-1] = xr, fr
            elif fr < fs[-2]:
                simplex[-1], fs[-1] = xr, fr
            else:
                target = xr if fr < fs[-1] else simplex[-1]
                xc = proj(centroid + 0.5 * (target - centroid))
                if evals >= budget:
                    break
                fc = feval(xc)
                if fc < min(fr, fs[-1]):
                    simplex[-1], fs[-1] = xc, fc
                else:  # shrink toward the best vertex
                    for i in range(1, n + 1):
                        if evals >= budget:
                            break
                        simplex[i] = proj(simplex[0] + 0.5 * (simplex[i] - simplex[0]))
                        fs[i] = feval(simplex[i])

        order = np.argsort(fs, kind="stable")
        note_best(simplex[order[0]], fs[order[0]])
        if not restart:
            break
        scale *= 0.25
        if scale < 1e-13:
            break

    return OptimizationReport(
        best_params=best_x,
        best_value=best_f,
        evaluations=evals,
        budget_exhausted=evals >= budget,
        trace=trace,
        param_names=tuple(param_names) if param_names else None,
    )
