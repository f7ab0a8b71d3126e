"""Regularity analysis of generalized functions sampled on 1-D periodic grids."""

from .grid import (
    GridSpec, SampledFunction, trig_resample,
)
from .frame import (
    LPFrame, build_frame, mollify, band_project, lp_reconstruct, lp_identity_defect, moment_defect,
    moment_table,
)
from .signals import (
    DistributionSpec, Delta, Heaviside, TriangleWave, Cusp, Weierstrass, Gaussian, Trig, Constant,
    Sampled, DerivativeSum, derivative, parse_spec, load_csv, GeneralizedNet, embed, scale_net,
    add_nets, constant_net, zero_net, standard_bump, counterexample_net, counterexample_net_1,
    tail_sum, class_combine,
)
from .norms import (
    Window, derivative_sups, derivative_lp, sobolev_seminorm, hoelder_seminorm, hoelder_norm,
    band_sups, lowpass_sup, zygmund_functional,
)
from .calibration import (
    ScalingFit, fit_scaling, OffsetPowerFit, fit_offset_power, estimate_calibration,
    RegularityClass, CalibrationReport, classify, growth_function, convexity_defects,
    negligibility_test,
)
from .zygmund import (
    ExponentEstimate, zygmund_exponent, Membership, generalized_zygmund_membership,
    hoelder_class_membership, RegimeCheck, hoermann_membership, ProductCheck, product_zygmund_check,
)
from .tauberian import (
    WaveletMap, wavelet_transform, DecayProfile, local_decay_map, SmoothnessVerdict,
    g_infinity_test, QuasiasymptoticEstimate, quasiasymptotic_exponent, dilated_pairing,
    FourierDecay, fourier_decay_check, exponent_select, optimal_slope, AssociationResult,
    association_check, SobolevBoundedness, sobolev_boundedness,
)
from .config import (
    AnalysisConfig, ScaleGridSpec, Tolerances,
)
from .reports import (
    ReportBundle, AnalysisResult, run_analyze,
)
from .verify import (
    CheckRow, run_verify,
)
from .exceptions import (
    GfregError, ResolutionError, ScaleWindowError, DomainSizeError, SpecGridMismatch,
    SpecParseError, InsufficientDataError, DegenerateInputError, StageFailure,
)

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "SampledFunction", "trig_resample", "LPFrame", "build_frame", "mollify",
    "band_project", "lp_reconstruct", "lp_identity_defect", "moment_defect", "moment_table",
    "DistributionSpec", "Delta", "Heaviside", "TriangleWave", "Cusp", "Weierstrass", "Gaussian",
    "Trig", "Constant", "Sampled", "DerivativeSum", "derivative", "parse_spec", "load_csv",
    "GeneralizedNet", "embed", "scale_net", "add_nets", "constant_net", "zero_net", "standard_bump",
    "counterexample_net", "counterexample_net_1", "tail_sum", "class_combine", "Window",
    "derivative_sups", "derivative_lp", "sobolev_seminorm", "hoelder_seminorm", "hoelder_norm",
    "band_sups", "lowpass_sup", "zygmund_functional", "ScalingFit", "fit_scaling", "OffsetPowerFit",
    "fit_offset_power", "estimate_calibration", "RegularityClass", "CalibrationReport", "classify",
    "growth_function", "convexity_defects", "negligibility_test", "ExponentEstimate",
    "zygmund_exponent", "Membership", "generalized_zygmund_membership", "hoelder_class_membership",
    "RegimeCheck", "hoermann_membership", "ProductCheck", "product_zygmund_check", "WaveletMap",
    "wavelet_transform", "DecayProfile", "local_decay_map", "SmoothnessVerdict", "g_infinity_test",
    "QuasiasymptoticEstimate", "quasiasymptotic_exponent", "dilated_pairing", "FourierDecay",
    "fourier_decay_check", "exponent_select", "optimal_slope", "AssociationResult",
    "association_check", "SobolevBoundedness", "sobolev_boundedness", "AnalysisConfig",
    "ScaleGridSpec", "Tolerances", "ReportBundle", "AnalysisResult", "run_analyze", "CheckRow",
    "run_verify", "GfregError", "ResolutionError", "ScaleWindowError", "DomainSizeError",
    "SpecGridMismatch", "SpecParseError", "InsufficientDataError", "DegenerateInputError",
    "StageFailure",
]
