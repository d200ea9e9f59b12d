"""Charted view of the Askey scheme of hypergeometric orthogonal polynomials.

The five four-parameter charts (three on the Racah side, two on the Wilson
side) and a two-parameter Jacobi chart carry the classical monic three-term
recurrences in coordinates where every coefficient extends continuously to
the closed orthant; boundary faces restrict to the lower families, and the
transitions between overlapping charts are explicit coordinate changes.
"""

from . import charts, families, harness, polyrec, transitions
from ._scalars import Backend, default_backend_name, get_backend
from .charts import (
    CHARTS,
    ChartPoint,
    RestrictionRecord,
    chart_coeffs,
    chart_coeffs_raw,
    chart_dim,
    chart_recurrence,
    chart_to_family,
    continuity_probe,
    face_restriction,
    verify_face,
)
from .errors import (
    AskeyError,
    InsufficientSamples,
    NonFiniteCoefficient,
    NormalizationPole,
    OutOfDomain,
    PoleInLowerParameter,
    SamplingExhausted,
    SingularHankel,
    UnknownSuite,
)
from .families import (
    FAMILY_PARAMS,
    FamilyInstance,
    hyp_terminating,
    monic_via_hyp,
    pochhammer,
    positivity_check,
    racah_an_cn,
    recurrence_coeffs,
    wilson_an_cn,
)
from .harness import (
    SUITES,
    IdentifyResult,
    SuiteReport,
    emit_table,
    identify,
    run_suite,
    sample_interior,
)
from .polyrec import (
    AffineScale,
    MomentSequence,
    MonicPolynomial,
    RecurrenceCoeffs,
    build_monic_sequence,
    evaluate,
    hankel_determinant,
    polys_from_moments,
    rescale_coeffs,
    unrescale_coeffs,
)
from .transitions import (
    DIRECTIONS,
    PAIRS,
    TransitionPair,
    transition,
    transition_domain,
    verify_transition,
)

__version__ = "0.1.0"

__all__ = [
    "charts", "families", "harness", "polyrec", "transitions",
    "Backend", "default_backend_name", "get_backend",
    "CHARTS", "ChartPoint", "RestrictionRecord", "chart_coeffs",
    "chart_coeffs_raw", "chart_dim", "chart_recurrence", "chart_to_family",
    "continuity_probe", "face_restriction", "verify_face",
    "AskeyError", "InsufficientSamples", "NonFiniteCoefficient",
    "NormalizationPole", "OutOfDomain", "PoleInLowerParameter",
    "SamplingExhausted", "SingularHankel", "UnknownSuite",
    "FAMILY_PARAMS", "FamilyInstance", "hyp_terminating", "monic_via_hyp",
    "pochhammer", "positivity_check", "racah_an_cn", "recurrence_coeffs",
    "wilson_an_cn",
    "SUITES", "IdentifyResult", "SuiteReport", "emit_table", "identify",
    "run_suite", "sample_interior",
    "AffineScale", "MomentSequence", "MonicPolynomial", "RecurrenceCoeffs",
    "build_monic_sequence", "evaluate", "hankel_determinant",
    "polys_from_moments", "rescale_coeffs", "unrescale_coeffs",
    "DIRECTIONS", "PAIRS", "TransitionPair", "transition",
    "transition_domain", "verify_transition",
    "__version__",
]
