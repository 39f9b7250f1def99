"""Edge ideals of weighted oriented graphs: formulas checked by a Betti oracle."""

from .cases import (
    REFERENCE_CASES,
    REFERENCE_LATTICE_CAP,
    ReferenceCase,
    ReferenceRow,
    case_by_id,
    evaluate_all_cases,
    evaluate_case,
)
from .formulas import (
    FormulaResult,
    NotApplicable,
    colon_pd_lemma_check,
    colon_power_identity_check,
    depth_bounds,
    pd_power_bounds,
    pd_single_formula,
    pd_union_formula,
    reg_power_formula,
    reg_single_formula,
    reg_union_formula,
    stabilization_check,
    star_case_formula,
    unweighted_reg_formula,
)
from .fuzz import FuzzConfig, FuzzSummary, run_fuzz
from .graphs import (
    GraphError,
    HypothesisReport,
    NestedOrderViolation,
    WeightedOrientedGraph,
    bipartition,
    components,
    disjoint_union,
    hypothesis_report,
    is_gap_free,
    load_graph,
    nested_order,
    parse_graph,
    random_applicable_graph,
    random_gap_free_bipartite,
    scramble_orientation,
)
from .ideals import (
    MAX_EXPONENT,
    UNIT_IDEAL,
    Monomial,
    MonomialIdeal,
    colon,
    edge_ideal,
    format_monomial,
    ideal_sum,
    minimalize,
    multiply,
    parse_monomial,
    power,
)
from .report import InvariantReport, build_report, render_csv, render_markdown
from .resolution import (
    CAP_ENV_VAR,
    BettiTable,
    CapExceeded,
    GroundSetTooLarge,
    OracleInvariants,
    UpperKoszulComplex,
    betti_table,
    export_multigraded_csv,
    export_totals_csv,
    invariants_from_table,
    lcm_lattice,
    oracle_invariants,
    reduced_homology_dims,
    upper_koszul_complex,
)

__version__ = "0.1.0"
