"""Experiment harness: build scenario groups, rank variants, grade, aggregate.

A *group* is one (problem, objective count[, cardinality, replicate])
cell containing every variant of one experiment. Ranking happens inside
a group per indicator; grades are a linear map of ranks; aggregation is
the arithmetic mean of grades across groups, which is what the summary
plot displays inside each box.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import rankdata

from . import fronts, scenarios
from .errors import MixedIndicators, ScaleMismatch
from .geometry import Pfa, normalize, pairwise_distances
from .indicators import (
    INDICATOR_ORDER,
    ORIENTATION,
    IndicatorParams,
    IndicatorResult,
    evaluate_all,
)
from .numerics import kendall_tau
from .weights import lattice_cardinality, two_layer_lattice

log = logging.getLogger(__name__)

#: Reference-set cardinalities per objective count: m -> (N, H1, H2).
#: Used for the coverage and uniformity experiments and as the default
#: reference-vector design.
REFERENCE_CARDINALITIES = {
    2: (100, 99, 0),
    3: (105, 13, 0),
    4: (120, 7, 0),
    5: (126, 5, 0),
    6: (147, 4, 2),
    7: (168, 3, 3),
    8: (156, 3, 2),
    9: (210, 3, 2),
    10: (230, 3, 1),
}

#: Cardinalities for the pathology experiment at three size levels:
#: m -> {"N50" | "N100" | "N200": (N, H1, H2)}.
PATHOLOGY_CARDINALITIES = {
    2: {"N50": (50, 49, 0), "N100": (100, 99, 0), "N200": (200, 199, 0)},
    3: {"N50": (45, 8, 0), "N100": (105, 13, 0), "N200": (210, 19, 0)},
    4: {"N50": (56, 5, 0), "N100": (120, 7, 0), "N200": (220, 9, 0)},
    5: {"N50": (50, 3, 2), "N100": (105, 4, 3), "N200": (210, 6, 0)},
    6: {"N50": (42, 2, 2), "N100": (112, 3, 3), "N200": (258, 5, 1)},
    7: {"N50": (56, 2, 2), "N100": (91, 3, 1), "N200": (210, 4, 0)},
    8: {"N50": (44, 2, 1), "N100": (120, 3, 0), "N200": (240, 3, 3)},
    9: {"N50": (45, 2, 0), "N100": (90, 2, 2), "N200": (210, 3, 2)},
    10: {"N50": (55, 2, 0), "N100": (110, 2, 2), "N200": (220, 3, 0)},
}

COVERAGE_LEVELS = tuple(i / 10 for i in range(1, 11))
UNIFORMITY_LEVELS = tuple(range(10, 101, 10))
PATHOLOGY_CASES = (1, 2, 3)

TEN_POINT = "ten"
FOUR_POINT = "four"


def reference_weights(m: int) -> np.ndarray:
    """Default reference-vector design for dimension m (built-in table)."""
    if m not in REFERENCE_CARDINALITIES:
        raise ValueError(f"no built-in cardinality row for m={m}")
    _, h1, h2 = REFERENCE_CARDINALITIES[m]
    return two_layer_lattice(m, h1, h2)


@dataclass(frozen=True)
class ExperimentPlan:
    """What to run: experiment kind, problems, dimensions, seeds, sizes.

    `problems` entries are built-in front kinds ("linear", "inverted",
    "dtlz1", "dtlz2") or "label=path.csv" for an externally generated
    point cloud. `sizes` and `replicates` only matter for the pathology
    experiment.
    """

    experiment: str
    problems: tuple[str, ...]
    objective_counts: tuple[int, ...]
    master_seed: int = 0
    dense_count: int = 2000
    sizes: tuple[str, ...] = ("N100",)
    replicates: int = 1
    levels: tuple | None = None  # None -> the full gamma/beta grid

    def __post_init__(self):
        if self.experiment not in ("coverage", "uniformity", "pathology"):
            raise ValueError(f"unknown experiment: {self.experiment!r}")
        for size in self.sizes:
            if size not in ("N50", "N100", "N200"):
                raise ValueError(f"unknown size level: {size!r}")

    @property
    def level_grid(self) -> tuple:
        if self.levels is not None:
            return self.levels
        return COVERAGE_LEVELS if self.experiment == "coverage" else UNIFORMITY_LEVELS


def desk_plans(master_seed: int = 0) -> tuple[ExperimentPlan, ExperimentPlan, ExperimentPlan]:
    """The three standard desk-scale plans (built-in fronts, m in {2, 3})."""
    return (
        ExperimentPlan("coverage", ("linear", "inverted"), (2, 3), master_seed),
        ExperimentPlan("uniformity", ("linear", "dtlz1", "dtlz2"), (2, 3), master_seed),
        ExperimentPlan("pathology", ("linear", "dtlz1", "dtlz2"), (3,), master_seed,
                       sizes=("N100",), replicates=3),
    )


@dataclass(frozen=True)
class GradeRow:
    """One (instance, indicator) record; mirrors the results CSV columns."""

    experiment: str
    problem: str
    m: int
    cardinality: int
    scenario: str
    level: float | int | None
    seed: int
    indicator: str
    value: float | None
    orientation: str
    rank: float | None
    grade: float | None
    error: str | None = None

    @property
    def variant(self) -> str:
        if self.scenario == "control":
            return "control"
        if self.scenario == "pathology":
            return f"case{self.level}"
        if self.scenario == "coverage":
            return f"gamma={self.level:g}"
        return f"beta={self.level:g}"

    @property
    def group_key(self) -> tuple:
        return (self.problem, self.m, self.cardinality, self.seed)


@dataclass(frozen=True)
class GradeTable:
    """Ranked and graded indicator results for one experiment."""

    experiment: str
    scale: str
    truth_variant: str
    rows: tuple[GradeRow, ...]

    def groups(self) -> dict[tuple, list[GradeRow]]:
        out: dict[tuple, list[GradeRow]] = {}
        for row in self.rows:
            out.setdefault(row.group_key, []).append(row)
        return out

    def variants(self) -> list[str]:
        seen: list[str] = []
        for row in self.rows:
            if row.variant not in seen:
                seen.append(row.variant)
        return seen

    def aggregate_grades(self) -> dict[tuple[str, str], float]:
        """Mean grade per (indicator, variant) across all graded groups."""
        sums: dict[tuple[str, str], list[float]] = {}
        for row in self.rows:
            if row.grade is not None:
                sums.setdefault((row.indicator, row.variant), []).append(row.grade)
        return {key: float(np.mean(vals)) for key, vals in sums.items()}


def rank_variants(results: list[IndicatorResult], orientation: str) -> np.ndarray:
    """Preference ranks over variants: 1 is best, exact ties averaged."""
    if len(results) < 2:
        raise ValueError("ranking needs at least two results")
    codes = {r.indicator for r in results}
    if len(codes) != 1:
        raise MixedIndicators(f"cannot rank across indicators: {sorted(codes)}")
    values = np.array([r.value for r in results], dtype=float)
    keys = -values if orientation == "max" else values
    return rankdata(keys, method="average")


def grade(ranks, scale: str) -> np.ndarray:
    """Map preference ranks to points on the requested scale.

    Ten-point (10 variants): rank r gets 11 - r points. Four-point
    (4 variants): ranks 1..4 get 10, 7.5, 5, 2.5. Tied (fractional)
    ranks interpolate linearly, which preserves the group's total
    points.
    """
    ranks = np.asarray(ranks, dtype=float)
    if scale == TEN_POINT:
        if len(ranks) != 10:
            raise ScaleMismatch(f"ten-point scale needs 10 variants, got {len(ranks)}")
        return 11.0 - ranks
    if scale == FOUR_POINT:
        if len(ranks) != 4:
            raise ScaleMismatch(f"four-point scale needs 4 variants, got {len(ranks)}")
        return 10.0 - 2.5 * (ranks - 1.0)
    raise ValueError(f"unknown scale: {scale!r}")


# ---------------------------------------------------------------------------
# instance construction


def _load_problem(problem: str) -> tuple[str, str | None]:
    """Split a problem spec into (label, external_path)."""
    if "=" in problem:
        label, path = problem.split("=", 1)
        return label, path
    if problem not in fronts.FRONT_KINDS:
        raise ValueError(f"unknown problem: {problem!r}")
    return problem, None


def _dense_for(problem: str, m: int, count: int, seed: int) -> Pfa:
    # The initial cloud is min-max normalized before any scenario is built,
    # so indicator scales are comparable across problems (dtlz1 otherwise
    # lives at half scale).
    label, path = _load_problem(problem)
    if path is None:
        return normalize(fronts.dense_sample(label, m, count, seed))
    loaded = fronts.load_external(path)
    if loaded.m != m:
        raise ValueError(f"{path} has m={loaded.m}, plan expects {m}")
    return normalize(loaded)


def _coverage_base(problem: str, m: int) -> Pfa:
    label, path = _load_problem(problem)
    if path is None:
        return fronts.structured_front(label, reference_weights(m))
    return normalize(fronts.load_external(path))


def _coverage_group(problem: str, m: int, group_seed: int,
                    levels) -> list[scenarios.ScenarioInstance]:
    base = _coverage_base(problem, m)
    out = []
    for gamma in levels:
        pfa = scenarios.shrink_coverage(base, gamma)
        out.append(scenarios.ScenarioInstance(
            pfa, problem, m, "coverage", gamma, len(pfa), group_seed))
    return out


def _uniformity_group(problem: str, m: int, group_seed: int,
                      dense_count: int, levels) -> list[scenarios.ScenarioInstance]:
    dense = _dense_for(problem, m, dense_count,
                       fronts.derive_seed(group_seed, "dense"))
    uniform = scenarios.uniform_subset(dense, reference_weights(m))
    out = []
    for beta in levels:
        pfa = scenarios.degrade_uniformity(
            uniform, dense, beta, fronts.derive_seed(group_seed, f"beta{beta}"))
        out.append(scenarios.ScenarioInstance(
            pfa, problem, m, "uniformity", beta, len(pfa), group_seed))
    return out


def _pathology_group(problem: str, m: int, size: str, group_seed: int,
                     dense_count: int) -> list[scenarios.ScenarioInstance]:
    n, h1, h2 = PATHOLOGY_CARDINALITIES[m][size]
    dense = _dense_for(problem, m, dense_count,
                       fronts.derive_seed(group_seed, "dense"))
    control = scenarios.uniform_subset(dense, two_layer_lattice(m, h1, h2))
    out = [scenarios.ScenarioInstance(control, problem, m, "control", None,
                                      len(control), group_seed)]
    for case in PATHOLOGY_CASES:
        pfa = scenarios.pathology(
            dense, case, n, fronts.derive_seed(group_seed, f"case{case}"))
        out.append(scenarios.ScenarioInstance(
            pfa, problem, m, "pathology", case, len(pfa), group_seed))
    return out


def build_groups(plan: ExperimentPlan) -> list[list[scenarios.ScenarioInstance]]:
    """All scenario groups of a plan, deterministically ordered and seeded."""
    groups = []
    for problem in plan.problems:
        for m in plan.objective_counts:
            if plan.experiment == "coverage":
                seed = fronts.derive_seed(plan.master_seed, f"coverage:{problem}:m{m}")
                groups.append(_coverage_group(problem, m, seed, plan.level_grid))
            elif plan.experiment == "uniformity":
                seed = fronts.derive_seed(plan.master_seed, f"uniformity:{problem}:m{m}")
                groups.append(_uniformity_group(problem, m, seed, plan.dense_count,
                                                plan.level_grid))
            else:
                for size in plan.sizes:
                    for rep in range(plan.replicates):
                        seed = fronts.derive_seed(
                            plan.master_seed,
                            f"pathology:{problem}:m{m}:{size}:rep{rep}")
                        groups.append(_pathology_group(
                            problem, m, size, seed, plan.dense_count))
    return groups


# ---------------------------------------------------------------------------
# running and reporting


def _group_dbar(instances: list[scenarios.ScenarioInstance]) -> float:
    minima = []
    for inst in instances:
        dmat = pairwise_distances(inst.pfa.points)
        iu = np.triu_indices(len(inst.pfa), k=1)
        minima.append(float(dmat[iu].min()))
    return max(minima)


def _truth_instance(experiment: str,
                    instances: list[scenarios.ScenarioInstance]) -> scenarios.ScenarioInstance:
    if experiment == "coverage":
        return max(instances, key=lambda i: i.level)
    if experiment == "uniformity":
        return max(instances, key=lambda i: i.level)
    return next(i for i in instances if i.scenario == "control")


def run_experiment(plan: ExperimentPlan,
                   params: IndicatorParams | None = None) -> GradeTable:
    """Build every scenario instance, evaluate, rank, and grade per group.

    Within a group the CPF reference is the group's ground-truth variant
    and the CDI threshold is the maximum over variants of each variant's
    minimum pairwise distance. An indicator that fails on any variant is
    excluded from that group's ranking (the failure is logged and kept
    as an error row in the output).
    """
    base = params or IndicatorParams()
    scale = FOUR_POINT if plan.experiment == "pathology" else TEN_POINT
    rows: list[GradeRow] = []
    for instances in build_groups(plan):
        truth = _truth_instance(plan.experiment, instances)
        group_params = replace(
            base,
            weights=base.weights if base.weights is not None
            else reference_weights(instances[0].m),
            reference=base.reference if base.reference is not None else truth.pfa,
            dbar=base.dbar if base.dbar is not None else _group_dbar(instances),
        )
        per_variant = [evaluate_all(inst.pfa, group_params) for inst in instances]
        for pos, code in enumerate(INDICATOR_ORDER):
            results = [res[pos] for res in per_variant]
            failed = [r for r in results if r.failed]
            if failed:
                log.warning(
                    "%s: excluding %s for group (%s, m=%d): %s",
                    plan.experiment, code, instances[0].problem,
                    instances[0].m, failed[0].error)
                ranks = [None] * len(results)
                grades = [None] * len(results)
            elif len(results) == 1:
                ranks = [1.0]
                grades = [10.0]
            else:
                rank_arr = rank_variants(results, ORIENTATION[code])
                ranks = [float(r) for r in rank_arr]
                full_scale = 10 if scale == TEN_POINT else 4
                if len(results) == full_scale:
                    grades = [float(g) for g in grade(rank_arr, scale)]
                else:
                    # custom level subsets are ranked but not graded
                    grades = [None] * len(results)
            for inst, res, rnk, grd in zip(instances, results, ranks, grades):
                rows.append(GradeRow(
                    experiment=plan.experiment,
                    problem=inst.problem,
                    m=inst.m,
                    cardinality=inst.cardinality,
                    scenario=inst.scenario,
                    level=inst.level,
                    seed=inst.seed,
                    indicator=code,
                    value=None if res.failed else res.value,
                    orientation=res.orientation,
                    rank=rnk,
                    grade=grd,
                    error=res.error,
                ))
    truth_variant = {"coverage": "gamma=1", "uniformity": "beta=100",
                     "pathology": "control"}[plan.experiment]
    return GradeTable(plan.experiment, scale, truth_variant, tuple(rows))


def ordering_report(table: GradeTable) -> list[tuple[str, float]]:
    """Mean Kendall tau per indicator between preference and degradation order.

    The ground-truth order ranks the least degraded variant first (the
    largest coverage or uniformity level). +1 means the indicator
    reproduces it exactly, -1 a perfect inversion; fully tied indicator
    values report 0.
    """
    if table.experiment not in ("coverage", "uniformity"):
        raise ValueError("ordering_report applies to coverage or uniformity tables")
    taus: dict[str, list[float]] = {}
    for _, rows in table.groups().items():
        by_ind: dict[str, list[GradeRow]] = {}
        for row in rows:
            by_ind.setdefault(row.indicator, []).append(row)
        for code, ind_rows in by_ind.items():
            if any(r.rank is None for r in ind_rows):
                continue
            levels = np.array([float(r.level) for r in ind_rows])
            truth_ranks = rankdata(-levels, method="average")
            ind_ranks = np.array([r.rank for r in ind_rows])
            taus.setdefault(code, []).append(kendall_tau(ind_ranks, truth_ranks))
    return [(code, float(np.mean(taus[code]))) for code in INDICATOR_ORDER
            if code in taus]
