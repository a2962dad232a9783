"""Bargmann scenarios: cyclic-word combinatorics, multivariate trace
invariants of state tuples, exact classical polytopes, and coherence
witnessing."""

from .errors import (
    BargmannError,
    DomainError,
    InvalidDistributionError,
    InvalidRealizationError,
    InvalidScenarioError,
    InvalidWordError,
    NotRealizableError,
    ResourceLimitError,
    UnknownLetterError,
)
from .figures import FIGURE_NAMES, FigureRow, figure_rows, render_png, write_csv
from .polytope import (
    DEFAULT_ASSIGNMENT_CAP,
    MEMBERSHIP_TOL,
    Equality,
    FacetCheck,
    FacetInequality,
    HRepresentation,
    MembershipResult,
    VertexSet,
    Violation,
    affine_hull,
    facet_enumerate,
    inequality_from_dict,
    inequality_to_dict,
    load_inequality,
    max_violation,
    membership,
    polytope_to_dict,
    save_polytope,
    verify_facet,
    vertex_enumerate,
)
from .scenarios import (
    DEFAULT_NECKLACE_CAP,
    Scenario,
    ScenarioTraits,
    Word,
    build_scenario,
    canonical_form,
    classify,
    event_graph_scenario,
    full_scenario,
    load_scenario,
    necklace_count,
    rotations,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    word_label,
    word_labels,
)
from .states import (
    DensityOperator,
    InvariantVector,
    Realization,
    bargmann,
    bloch_qubit_pair,
    classical_point,
    designolle_pair,
    direct_sum_mix,
    evaluate,
    gram_from_dict,
    gram_invariants,
    gram_to_dict,
    hadamard_combine,
    incoherent_realization,
    load_gram,
    load_states,
    obg_states,
    pointedness_functional,
    random_density,
    realization_from_dict,
    realization_to_dict,
    save_gram,
    save_states,
    schatten2_distance_sq,
    shrink,
)
from .twoword import (
    TWO_WORD_SCENARIO,
    TwoWordPoint,
    designolle_curve,
    obg_curve,
    qubit_closed_form,
    spectroscopy_vector,
    two_word_cone_membership,
    two_word_membership,
    two_word_point,
)
from .verify import DEFAULT_SEED, CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "BargmannError",
    "DomainError",
    "InvalidDistributionError",
    "InvalidRealizationError",
    "InvalidScenarioError",
    "InvalidWordError",
    "NotRealizableError",
    "ResourceLimitError",
    "UnknownLetterError",
    # scenarios
    "DEFAULT_NECKLACE_CAP",
    "Scenario",
    "ScenarioTraits",
    "Word",
    "build_scenario",
    "canonical_form",
    "classify",
    "event_graph_scenario",
    "full_scenario",
    "load_scenario",
    "necklace_count",
    "rotations",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "word_label",
    "word_labels",
    # states
    "DensityOperator",
    "InvariantVector",
    "Realization",
    "bargmann",
    "bloch_qubit_pair",
    "classical_point",
    "designolle_pair",
    "direct_sum_mix",
    "evaluate",
    "gram_from_dict",
    "gram_invariants",
    "gram_to_dict",
    "hadamard_combine",
    "incoherent_realization",
    "load_gram",
    "load_states",
    "obg_states",
    "pointedness_functional",
    "random_density",
    "realization_from_dict",
    "realization_to_dict",
    "save_gram",
    "save_states",
    "schatten2_distance_sq",
    "shrink",
    # polytope
    "DEFAULT_ASSIGNMENT_CAP",
    "MEMBERSHIP_TOL",
    "Equality",
    "FacetCheck",
    "FacetInequality",
    "HRepresentation",
    "MembershipResult",
    "VertexSet",
    "Violation",
    "affine_hull",
    "facet_enumerate",
    "inequality_from_dict",
    "inequality_to_dict",
    "load_inequality",
    "max_violation",
    "membership",
    "polytope_to_dict",
    "save_polytope",
    "verify_facet",
    "vertex_enumerate",
    # two-word analytics
    "TWO_WORD_SCENARIO",
    "TwoWordPoint",
    "designolle_curve",
    "obg_curve",
    "qubit_closed_form",
    "spectroscopy_vector",
    "two_word_cone_membership",
    "two_word_membership",
    "two_word_point",
    # figures
    "FIGURE_NAMES",
    "FigureRow",
    "figure_rows",
    "render_png",
    "write_csv",
    # claims suite
    "DEFAULT_SEED",
    "CheckResult",
    "run_all",
]
