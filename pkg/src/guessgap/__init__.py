"""Guessing probability versus mutual information on tripartite
distributions.

A higher guessing probability does not imply higher mutual information:
this package builds the eight-cell family demonstrating that, verifies
it against closed forms, and searches the simplex for further violations
under configurable alphabet sizes.
"""

from .backend import USING_NUMBA, backend_name
from .dist import (
    PairDistribution,
    Shape,
    TripartiteDistribution,
    VarId,
    dirichlet_sample,
    marginal_pair,
    marginal_single,
    project_to_simplex,
    validate_tripartite,
)
from .family import (
    EPSILON_MAX,
    CounterexampleParams,
    SweepRow,
    VerificationReport,
    build_counterexample,
    closed_form_report,
    sweep,
    verify_counterexample,
    violation_boundary,
)
from .io import (
    emit_sweep_csv,
    load_distribution,
    render_sweep_svg,
    save_distribution,
)
from .metrics import (
    InfoReport,
    analyze_tripartite,
    binary_entropy,
    guessing_probability,
    mutual_information,
    shannon_entropy,
)
from .search import (
    SearchConfig,
    SearchResult,
    brute_force_grid,
    objective,
    objective_gradient,
    projected_ascent,
    run_search,
)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "backend_name",
    "Shape",
    "VarId",
    "TripartiteDistribution",
    "PairDistribution",
    "validate_tripartite",
    "marginal_pair",
    "marginal_single",
    "dirichlet_sample",
    "project_to_simplex",
    "InfoReport",
    "shannon_entropy",
    "binary_entropy",
    "mutual_information",
    "guessing_probability",
    "analyze_tripartite",
    "EPSILON_MAX",
    "CounterexampleParams",
    "SweepRow",
    "VerificationReport",
    "build_counterexample",
    "closed_form_report",
    "verify_counterexample",
    "sweep",
    "violation_boundary",
    "SearchConfig",
    "SearchResult",
    "objective",
    "objective_gradient",
    "projected_ascent",
    "run_search",
    "brute_force_grid",
    "load_distribution",
    "save_distribution",
    "emit_sweep_csv",
    "render_sweep_svg",
    "__version__",
]
