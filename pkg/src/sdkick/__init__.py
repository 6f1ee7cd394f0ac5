"""Raman spin-dependent kicks on a single trapped ion.

Simulation of nanosecond two-photon kicks in two complementary pictures (a
frozen-secular momentum-kick ladder and a full spin x Fock space including
Paul-trap micromotion), together with closed-form constant-drive solutions,
micromotion phase matching, parameter landscapes, robustness sweeps, and
derivative-free pulse optimization.
"""

from .analysis import (
    backward_bound,
    kick_target,
    landscape,
    match_loci,
    optimize_raman_beat,
    optimize_train,
    phase_match_phi,
    phase_match_phi_exact,
    robustness_sweep,
    sdk_infidelity,
    SweepAxis,
    SweepResult,
)
from .beams import (
    BeamPair,
    InterferenceParams,
    effective_rabi,
    interference_params,
    lin_perp_lin,
    validate_hierarchy,
)
from .config import LandscapeGrid, Numerics, RunConfig, load_config, parse_config
from .dynamics import (
    FockState,
    FullFockModel,
    KickModel,
    KickState,
    ModelFlags,
    coherent,
    displacement,
    gauge_solver_3,
    gauge_solver_5,
    micromotion_phase,
    micromotion_phase_exact,
    micromotion_propagator,
    propagate,
)
from .envelopes import Constant, PulseTrain, Sine, sine_sampled_train
from .errors import (
    ConfigError,
    OverlapError,
    PropagationError,
    SdkError,
    StepUnderflowError,
    TruncationError,
    UnstableTrapError,
)
from .optimize import OptimizationReport, optimize
from .trap import (
    DerivedParams,
    FastSdkReport,
    IonParams,
    TrapParams,
    lamb_dicke,
    resolve_eta,
    secular_frequency,
    validate_fast_sdk,
)

__version__ = "0.1.0"
