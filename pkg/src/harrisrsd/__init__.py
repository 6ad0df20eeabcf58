"""Harris random self-decomposability: transforms, factorizations, samplers,
autoregressive chains and numerical verification."""

from . import decompose, processes, samplers, transforms, verify
from .decompose import (
    FactorizationParams, harris_stable_scale, hid_factor, hrsd_innovation,
    sd_factor,
)
from .processes import ModelConfig, Trajectory, replicate_marginal, simulate, simulate_ar, simulate_inar
from .samplers import RngStream, SamplerSpec
from .transforms import (
    EvalGrid, blend, cf_eval, evaluate, harris_compose, hid_from_id, linnik_cf,
    pgf_eval, thin_substitute,
)
from .verify import extract_pgf_coeffs, run_suite

__version__ = "0.1.0"

__all__ = [
    "decompose", "processes", "samplers", "transforms", "verify",
    "FactorizationParams", "harris_stable_scale", "hid_factor", "hrsd_innovation",
    "sd_factor", "ModelConfig", "Trajectory", "replicate_marginal", "simulate",
    "simulate_ar", "simulate_inar", "RngStream", "SamplerSpec", "EvalGrid",
    "blend", "cf_eval", "evaluate", "harris_compose", "hid_from_id", "linnik_cf",
    "pgf_eval", "thin_substitute", "extract_pgf_coeffs", "run_suite",
]
