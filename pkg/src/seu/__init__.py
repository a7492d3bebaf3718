"""Coherence toolkit for subjective expected utility over finite state spaces.

The package checks finite preference data against the classical coherence
axioms, fits probability/utility representations by exact linear programming,
hunts for sure-loss betting books, scores lotteries under expected-utility and
rank-free decision-weight rules, conditions finite models, and runs an
interactive betting-odds elicitation protocol (also exposed over HTTP).

All arithmetic is exact: probabilities, prices, and utilities are
`fractions.Fraction` values throughout, and every verdict comes with a
re-checkable witness.
"""

from .rational import (
    RationalFormatError,
    format_decimal,
    format_rational,
    parse_rational,
)
from .ordering import EQUIVALENT, GREATER, LESS, UNORDERED, Preorder
from .problem import (
    Act,
    ConsequenceSet,
    DecisionProblem,
    Event,
    INDIFFERENT,
    Judgment,
    PreferenceRelation,
    ProblemFormatError,
    RAW,
    STRICTLY_LESS,
    StateSpace,
    TRANSITIVELY_CLOSED,
    agree_on,
    bet_act,
    constant_act,
    load_document,
    load_problem,
    problem_from_document,
    problem_to_document,
    save_problem,
    splice,
)
from .reports import (
    NOT_DECIDABLE,
    SATISFIED,
    VIOLATED,
    ViolationReport,
    Witness,
    build_report,
)
from .axioms import (
    ConditionalComparison,
    NON_NULL,
    NULL,
    PreferenceView,
    UNKNOWN,
    check_all,
    check_p1,
    check_p1_completeness,
    check_p1_transitivity,
    check_p2,
    check_p3,
    check_p4,
    check_p5,
    check_p7,
    conditional_preference,
    derived_event_order,
    event_null_status,
    null_events,
    recheck_witness,
    small_event_continuity_audit,
)
from .qualitative import (
    AgreementFailure,
    EventOrder,
    OrderJudgment,
    ProbabilityMeasure,
    check_qp_axioms,
    conditional_order,
    event_order_from_document,
    find_agreeing_measure,
    measure_agreement_failures,
)
from .representation import (
    FitFailure,
    Representation,
    UtilityFunction,
    expected_utility,
    fit_joint,
    fit_probability,
    fit_utility,
    verify_agreement,
)
from .coherence import (
    BetOffer,
    DutchBook,
    IncoherenceCertificate,
    PriceSystem,
    coherence_check,
    dutch_book_search,
    evaluate_book,
    exposure,
    fair_price,
    two_agent_dutch_book,
)
from .scoring import (
    AllaisReport,
    EllsbergReport,
    ImpliedInequality,
    Lottery,
    MoneyAct,
    WeightFunction,
    allais_acts,
    allais_analysis,
    allais_lotteries,
    chance_dependent_utility,
    combine_simultaneous,
    ellsberg_analysis,
    eu_score,
    linear_utility,
    prospect_score,
    rationalizes_allais,
    subcertainty_check,
)
from .bayes import (
    FiniteModel,
    UrnModel,
    condition,
    conglomerability_bound,
    laplace_urn,
    posterior,
)
from .elicit import (
    ElicitationSession,
    Query,
    SessionError,
    SessionStore,
    abandon,
    create_session,
    next_query,
    record_preference,
    report,
    run_script,
    scripted_respondent,
    session_to_document,
    submit_answer,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # exact arithmetic helpers
    "RationalFormatError",
    "parse_rational",
    "format_rational",
    "format_decimal",
    # preorders
    "LESS",
    "GREATER",
    "EQUIVALENT",
    "UNORDERED",
    "Preorder",
    # decision problems
    "STRICTLY_LESS",
    "INDIFFERENT",
    "RAW",
    "TRANSITIVELY_CLOSED",
    "ProblemFormatError",
    "StateSpace",
    "ConsequenceSet",
    "Event",
    "Act",
    "Judgment",
    "PreferenceRelation",
    "DecisionProblem",
    "constant_act",
    "bet_act",
    "splice",
    "agree_on",
    "problem_from_document",
    "problem_to_document",
    "load_document",
    "load_problem",
    "save_problem",
    # reports
    "SATISFIED",
    "VIOLATED",
    "NOT_DECIDABLE",
    "Witness",
    "ViolationReport",
    "build_report",
    # axiom checks
    "NULL",
    "NON_NULL",
    "UNKNOWN",
    "PreferenceView",
    "ConditionalComparison",
    "conditional_preference",
    "event_null_status",
    "null_events",
    "check_p1_completeness",
    "check_p1_transitivity",
    "check_p1",
    "check_p2",
    "check_p3",
    "check_p4",
    "check_p5",
    "check_p7",
    "small_event_continuity_audit",
    "derived_event_order",
    "check_all",
    "recheck_witness",
    # qualitative probability
    "OrderJudgment",
    "EventOrder",
    "event_order_from_document",
    "ProbabilityMeasure",
    "check_qp_axioms",
    "AgreementFailure",
    "find_agreeing_measure",
    "measure_agreement_failures",
    "conditional_order",
    # representations
    "UtilityFunction",
    "expected_utility",
    "Representation",
    "verify_agreement",
    "FitFailure",
    "fit_probability",
    "fit_utility",
    "fit_joint",
    # betting coherence
    "BetOffer",
    "PriceSystem",
    "fair_price",
    "exposure",
    "DutchBook",
    "evaluate_book",
    "dutch_book_search",
    "IncoherenceCertificate",
    "coherence_check",
    "two_agent_dutch_book",
    # lottery scoring
    "linear_utility",
    "Lottery",
    "WeightFunction",
    "eu_score",
    "prospect_score",
    "chance_dependent_utility",
    "subcertainty_check",
    "MoneyAct",
    "combine_simultaneous",
    "allais_acts",
    "allais_lotteries",
    "ImpliedInequality",
    "AllaisReport",
    "allais_analysis",
    "rationalizes_allais",
    "EllsbergReport",
    "ellsberg_analysis",
    # conditioning
    "condition",
    "FiniteModel",
    "posterior",
    "UrnModel",
    "laplace_urn",
    "conglomerability_bound",
    # elicitation
    "SessionError",
    "ElicitationSession",
    "create_session",
    "Query",
    "next_query",
    "submit_answer",
    "abandon",
    "record_preference",
    "report",
    "session_to_document",
    "scripted_respondent",
    "run_script",
    "SessionStore",
]
