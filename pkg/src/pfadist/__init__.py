"""Distribution indicators for Pareto-front approximations.

A numpy/scipy library implementing nine distribution indicators, the
controlled degradation scenarios used to probe their preferences
(coverage loss, uniformity loss, pathological distributions), and a
desk-scale experiment harness with rank/grade reporting.
"""

from .errors import (
    DegenerateAxisWarning,
    DegenerateWeight,
    DimensionError,
    DuplicatePoints,
    EmptyInput,
    EmptyReference,
    EmptyTable,
    InsufficientDense,
    MixedIndicators,
    ParseError,
    PfadistError,
    ScaleMismatch,
    SingularMatrix,
    UnsupportedFront,
)
from .geometry import (
    CHEBYSHEV,
    EUCLIDEAN,
    LpQuasi,
    Pfa,
    distance,
    nondominated_filter,
    normalize,
    pairwise_distances,
)
from .numerics import invert, kendall_tau, mean_std
from .weights import lattice_cardinality, simplex_lattice, two_layer_lattice
from .fronts import (
    DTLZ1,
    DTLZ2,
    FRONT_KINDS,
    INVERTED,
    LINEAR,
    dense_sample,
    derive_seed,
    load_external,
    structured_front,
)
from .scenarios import (
    ScenarioInstance,
    asf_value,
    degrade_uniformity,
    pathology,
    shrink_coverage,
    uniform_subset,
)
from .indicators import (
    INDICATOR_ORDER,
    ORIENTATION,
    IndicatorParams,
    IndicatorResult,
    cdi,
    cpf,
    dir_indicator,
    eni,
    evaluate_all,
    kua,
    pud,
    rse,
    spd,
    unl,
)
from .harness import (
    ExperimentPlan,
    GradeRow,
    GradeTable,
    PATHOLOGY_CARDINALITIES,
    REFERENCE_CARDINALITIES,
    desk_plans,
    grade,
    ordering_report,
    rank_variants,
    reference_weights,
    run_experiment,
)
from .pfafile import read_pfa, write_pfa
from .reporting import emit_likert_svg, read_results, write_results

__version__ = "0.1.0"
