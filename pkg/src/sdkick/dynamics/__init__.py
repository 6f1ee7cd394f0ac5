from .flags import ModelFlags
from .integrate import propagate, propagate_piecewise
from .kick import KickModel, KickState, edge_flagged
from .gauge import gauge_solver_3, gauge_solver_5
from .fock import (
    FockState,
    FullFockModel,
    apply_micromotion_propagator,
    check_cutoff,
    coherent,
    displacement,
    lowering,
    micromotion_phase,
    micromotion_phase_exact,
    micromotion_propagator,
)

__all__ = [
    "ModelFlags",
    "propagate",
    "propagate_piecewise",
    "KickModel",
    "KickState",
    "edge_flagged",
    "gauge_solver_3",
    "gauge_solver_5",
    "FockState",
    "FullFockModel",
    "apply_micromotion_propagator",
    "check_cutoff",
    "coherent",
    "displacement",
    "lowering",
    "micromotion_phase",
    "micromotion_phase_exact",
    "micromotion_propagator",
]
