"""Monte Carlo engine for random walks in random scenery and their limits."""

from .keyed import derive_key
from .limits import (
    CfEstimate,
    GridLocalTime,
    LevyPath,
    bin_scenery,
    grid_local_time,
    holder_modulus,
    holder_report,
    limit_cf,
    occupation_power_mean,
    sample_averaged_path,
    sample_averaged_sup,
    sample_averaged_values,
    sample_levy_path,
    scenery_integral,
    sup_tail_report,
)
from .rwrs import (
    RwrsPath,
    SchemaConfig,
    build_rwrs,
    feasibility_branch,
    local_time_cf_exponent,
    rescaled_rwrs,
    rwrs_local_time_form,
    rwrs_value,
    sample_schema,
    schema_scenery,
    schema_walk_rng,
    self_similarity_exponent,
)
from .scenery import Scenery, cumulative_scenery, keyed_scenery_values, scenery_at
from .stable import (
    SceneryLaw,
    StableLaw,
    WalkIncrementLaw,
    sample_scenery_value,
    sample_scenery_values,
    sample_stable,
    sample_walk_increment,
    sample_walk_increments,
    sine_tail_integral,
    sine_tail_integral_closed,
    stable_cf,
    sup_tail_constant,
)
from .stats import (
    SampleSet,
    default_hill_k,
    empirical_cf,
    hill_estimator,
    ks_critical_value,
    ks_distance,
    loglog_slope,
)
from .walk import (
    LocalTimeField,
    WalkPath,
    batch_walk_stats,
    generate_walk,
    local_time,
    local_time_field,
    max_abs,
    self_intersections,
    visited_range,
)

__version__ = "0.1.0"
