"""Distribution-free two-sample rank tests on distances.

The package provides linear rank statistics with exact permutation nulls and
randomized critical values, the simple/conditional/randomized distance rank
test schemes, the one-sided two-sample Kolmogorov-Smirnov test, classical
comparators (Hotelling T^2, Liu-Singh depth rank-sum), Lehmann-alternative
samplers and their closed-form geometry, local asymptotic power and
efficiency calculations with a contiguity verifier, and a seeded Monte Carlo
harness that reproduces the published power tables.
"""

from .asymptotics import (
    ContiguityReport,
    asymptotic_mu_sigma,
    contiguity_check,
    efficiency_table,
    hellinger_sq,
    ks_local_power,
    local_power,
    optimal_score,
    power_slopes,
    relative_efficiency,
    wilcoxon_local_power,
)
from .classical import (
    DepthTestResult,
    HotellingResult,
    depth_rank_index,
    hotelling_test,
    liu_singh_test,
    mahalanobis_depth,
)
from .distances import (
    PooledSample,
    basis_distances,
    interpoint_distances,
    maximal_invariant,
    origin_distances,
)
from .harness import (
    Cell,
    CellResult,
    ExperimentConfig,
    ExperimentResult,
    PowerEstimate,
    cauchy_power_config,
    emit_table,
    estimate_power,
    lehmann_power_config,
    normal_power_config,
    run_experiment,
)
from .lehmann import LehmannAlternative, kolmogorov_distance, sample_pooled
from .ranktests import (
    NullDistribution,
    RandomizedCriticalValue,
    RankTestResult,
    centered_statistic,
    conditional_rank_test,
    ks_two_sample,
    linear_rank_statistic,
    null_distribution,
    randomized_critical_value,
    randomized_rank_test,
    ranks,
    simple_rank_test,
    two_sided_critical_values,
)
from .rng import RngSeed
from .scenarios import MultivariateScenario, sample_scenario
from .scores import ScoreVector, phi, psi_exact_scores, raw_rank_scores, score_vector

__version__ = "0.1.0"

__all__ = [
    "ContiguityReport",
    "asymptotic_mu_sigma",
    "contiguity_check",
    "efficiency_table",
    "hellinger_sq",
    "ks_local_power",
    "local_power",
    "optimal_score",
    "power_slopes",
    "relative_efficiency",
    "wilcoxon_local_power",
    "DepthTestResult",
    "HotellingResult",
    "depth_rank_index",
    "hotelling_test",
    "liu_singh_test",
    "mahalanobis_depth",
    "PooledSample",
    "basis_distances",
    "interpoint_distances",
    "maximal_invariant",
    "origin_distances",
    "Cell",
    "CellResult",
    "ExperimentConfig",
    "ExperimentResult",
    "PowerEstimate",
    "cauchy_power_config",
    "emit_table",
    "estimate_power",
    "lehmann_power_config",
    "normal_power_config",
    "run_experiment",
    "LehmannAlternative",
    "kolmogorov_distance",
    "sample_pooled",
    "NullDistribution",
    "RandomizedCriticalValue",
    "RankTestResult",
    "centered_statistic",
    "conditional_rank_test",
    "ks_two_sample",
    "linear_rank_statistic",
    "null_distribution",
    "randomized_critical_value",
    "randomized_rank_test",
    "ranks",
    "simple_rank_test",
    "two_sided_critical_values",
    "RngSeed",
    "MultivariateScenario",
    "sample_scenario",
    "ScoreVector",
    "phi",
    "psi_exact_scores",
    "raw_rank_scores",
    "score_vector",
    "__version__",
]
