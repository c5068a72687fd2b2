"""Angular linear statistics of radial determinantal ensembles.

Exact finite-n generating functions via perturbed Toeplitz determinants,
limit constants, cumulant recursions, mean-measure laws, and Monte Carlo
cross-validation samplers. The heavy lifting lives in the C++ core.
"""

from ._core import (  # noqa: F401
    CircularLawReport,
    ClassifyResult,
    CumulantReport,
    LogDet,
    NonInvertibleError,
    NonzeroWindingError,
    PointSample,
    RadialMeasure,
    SzegoReport,
    Symbol,
    angular_mgf,
    circular_law_check,
    classify,
    cumulant_recursion,
    diagonal_deficit_sum,
    e_constant,
    empirical_statistic,
    exp_symbol,
    f_constant,
    fd_cumulant,
    flp_norm,
    g_constant,
    h_constant,
    hankel_section,
    hankel_trace,
    invert_symbol,
    k_section,
    kozak_inverse_section,
    log_det,
    log_symbol,
    m_section,
    mean_absolute_moment,
    mean_density,
    omega_functional,
    omega_pair,
    p_delta,
    parity_constants,
    c_mu_residual,
    c_mu_series,
    parity_sums,
    parse_symbol,
    quadrature_oracle,
    sample_dpp,
    sample_moduli,
    shift_invariance_check,
    szego_sweep,
    tau,
    toeplitz_section,
    trace_section,
)

__all__ = [n for n in dir() if not n.startswith("_")]

try:
    from ._core import __version__  # noqa: F401
except ImportError:  # pragma: no cover
    __version__ = "0.0.0"
