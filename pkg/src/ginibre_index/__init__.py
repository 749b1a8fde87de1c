"""Index statistics of Ginibre random matrices.

Closed-form large-deviation rate function and constrained equilibrium
measures for the number of eigenvalues outside a disk, an
index-conditioned 2D Coulomb-gas Metropolis sampler with a telescoped
rate-curve estimator, and the exact finite-N index law of the complex
ensemble as ground truth.
"""

from .counts import IndexPMF, RateCurve, empirical_rate, reconstruct_log_pmf
from .errors import (
    DomainError,
    GinibreIndexError,
    InfeasibleSectorError,
    InsufficientSamplingError,
    SingularConfigurationError,
)
from .exact import BernoulliProfile, bernoulli_probs, ginibre2_mc, index_moments, index_pmf_exact, sample_index
from .gas import (
    ChainConfig,
    ChainStats,
    GasState,
    RadialHistogram,
    RateScanConfig,
    RateScanResult,
    acceptance_probability,
    derive_seed,
    index_count,
    mc_rate_scan,
    metropolis_step,
    move_delta,
    radial_histogram,
    run_chain,
    sector_ratio,
    total_energy,
)
from .radial import (
    Annulus,
    CircleAtom,
    Disk,
    RadialMeasure,
    component_mass,
    component_second_moment,
    effective_potential,
    energy_functional,
    pair_log_energy,
    radial_cdf,
)
from .rate import (
    Branch,
    ConstraintSpec,
    RateValue,
    cubic_approx,
    equilibrium_measure,
    j_cost,
    j_cost_derivative,
    ld_log_prob,
    minimize_j,
    psi,
)

__version__ = "0.1.0"

__all__ = [
    "Annulus",
    "BernoulliProfile",
    "Branch",
    "ChainConfig",
    "ChainStats",
    "CircleAtom",
    "ConstraintSpec",
    "Disk",
    "DomainError",
    "GasState",
    "GinibreIndexError",
    "IndexPMF",
    "InfeasibleSectorError",
    "InsufficientSamplingError",
    "RadialHistogram",
    "RadialMeasure",
    "RateCurve",
    "RateScanConfig",
    "RateScanResult",
    "RateValue",
    "SingularConfigurationError",
    "acceptance_probability",
    "bernoulli_probs",
    "component_mass",
    "component_second_moment",
    "cubic_approx",
    "derive_seed",
    "effective_potential",
    "empirical_rate",
    "energy_functional",
    "equilibrium_measure",
    "ginibre2_mc",
    "index_count",
    "index_moments",
    "index_pmf_exact",
    "j_cost",
    "j_cost_derivative",
    "ld_log_prob",
    "mc_rate_scan",
    "metropolis_step",
    "minimize_j",
    "move_delta",
    "pair_log_energy",
    "psi",
    "radial_cdf",
    "radial_histogram",
    "reconstruct_log_pmf",
    "run_chain",
    "sample_index",
    "sector_ratio",
    "total_energy",
    "__version__",
]
