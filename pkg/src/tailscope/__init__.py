"""tailscope: entropic tail profiles and tail-type classification for discrete data."""

from ._backend import BACKEND
from .classifier import (
    ClassifierConfig,
    PlotSeries,
    PlotTransform,
    TailClassification,
    TailFamily,
    classify,
    default_range,
    estimate_parameter,
    pearson_r,
    plot_series,
    trend_statistic,
)
from .distributions import (
    Family,
    TonicDistribution,
    asymptotic_rate,
    exact_profile,
    exact_tau,
    exact_zeta,
    ne_root,
    normalizing_constant,
    reference_distributions,
    parse_spec,
    pmf,
    sample,
)
from .errors import *  # noqa: F401,F403
from .estimator import TailProfile, tail_index_estimate, tail_profile, z_statistic
from .frequencies import FrequencyTable, build_frequency_table, occupancy_count, turing_estimate
from .ingestion import DiscretizationSpec, TailSide, discretize, load_counts, load_values
from .simulation import (
    ConfusionMatrix,
    StudyConfig,
    precision_summary,
    run_study,
    run_trial,
)

__version__ = "0.1.0"
