"""Exact generating functions for Motzkin meanders between a floor and a ceiling."""
from .errors import (
    CeilingTooLow,
    DivisionByZero,
    IndexOutOfRange,
    InternalAssertion,
    LengthGuard,
    MissingAssignment,
    MotzkinError,
    NonUnitConstantTerm,
    NonZeroRemainder,
    NotIntegral,
    NotSymmetric,
    Unreachable,
)
from .polyring import (
    CD, CU, ONE, QH, TD, TU, U, V, Z, Z1, Z2, ZERO, ZH,
    Poly, PolyMatrix, RatFunc, Series,
    det, eval_rational, exact_div, q_binomial, q_power, qh_power, scale_shift,
    series_exp, series_invert, series_log, sym_expand, sym_reduce,
)
from .motzkin import (
    INFINITE, F, GFResult, MeanderQuery,
    bosonic_partition, continued_fraction, duality_check, embedding_check,
    gf_meander, gf_rational, gf_series_oracle, hamiltonian, recursion_checks,
    secular, secular_closed, secular_det, secular_dual, secular_recursive,
    secular_special, two_step,
)
from .markers import (
    MarkerWeights, marked_gf, marked_hamiltonian, marked_identity_suite, marked_secular,
)
from .cluster import (
    area_bounds, c2, cluster_term, compositions, log_gf, q_degree_bounds,
)
from .enumeration import (
    PathStats, enumerate, enumerate_marked, extremal_area_scan, list_paths,
)

__version__ = "0.1.0"
