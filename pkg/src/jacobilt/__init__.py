"""Lieb-Thirring type eigenvalue bounds for doubly infinite Jacobi operators
with finitely supported perturbations: data model, spectral solvers, scalar
functionals, proof constructs, and a verification harness."""

from .operators import (
    InstanceFormatError,
    Perturbation,
    TruncatedTridiagonal,
    ValidationError,
    dump_instance,
    load_instance,
    make_perturbation,
    negate_b,
    parse_instance,
    sandwich,
    save_instance,
    truncate,
)
from .spectral import (
    ConvergenceError,
    DenseSymmetric,
    EigenConfig,
    SpectrumOutside,
    dense_eigenvalues,
    eigenvalue_sum_top,
    eigenvalues_outside,
    kyfan,
    sturm_count,
    symmetrized,
)
from .functionals import (
    EdgeParam,
    RieszConfig,
    beta_fn,
    ks_F,
    ks_G,
    log_gamma,
    lt_lhs_main,
    mu_of_E,
    remark_lower_bounds,
    rhs_hs,
    rhs_main,
    riesz_mean,
    riesz_rhs,
)
from .constructs import (
    GmuDensity,
    SignDecomposition,
    averaged_l_mu,
    birman_schwinger,
    fourier_g,
    g_mu_eval,
    gmu_convolution_gap,
    kyfan_averaging_check,
    l_mu,
    l_mu_free_closed_form,
    operator_convexity_gap,
    reconstruct_offdiagonal,
    resolvent_half_width,
    s_n_curve,
    sign_pattern_decomposition,
)
from .harness import (
    RandomModel,
    SplitMix64,
    VerificationReport,
    random_perturbation,
    sharpness_rows,
    sweep_instance,
    verify_instance,
)

__version__ = "0.1.0"
