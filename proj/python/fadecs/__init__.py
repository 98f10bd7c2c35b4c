"""Sparse signal recovery over fading multiple-access channels.

Thin wrapper around the compiled core: signal/ensemble generation, the
mixture-law statistics, measurement-count bounds, transmission-probability
design and the l1 recovery programs.
"""

from fadecs._core import (  # noqa: F401
    BoundReport,
    Certificate,
    EnsembleExtremes,
    InfeasibleError,
    MeasurementEnsemble,
    MixtureLaw,
    NetworkConfig,
    RecoveryResult,
    RegimeScaling,
    SparseSignal,
    awgn_ensemble,
    basis_pursuit,
    bernstein_bound,
    bpdn,
    brute_force_oracle,
    corollary_iid_bound,
    estimate_r_analytic,
    estimate_r_empirical,
    general_subexp_bound,
    generate_ensemble,
    generate_signal,
    laplace_product_pdf,
    max_gamma_under_budget,
    mgf_bound,
    mgf_exact,
    mixture_tail,
    noise_ball_radius,
    optimal_gamma,
    psi,
    recovery_certificate,
    relative_error,
    required_energy,
    run_experiment_config,
    subexp_norm_estimate,
    table1_regime,
    theorem1_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
