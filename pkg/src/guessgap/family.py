"""The eight-cell counterexample family and its closed forms.

One tunable parameter epsilon in [0, 0.25] controls how much probability
sits in the "rare but telling" cells Eve sees perfectly.  Bob's guessing
probability stays at 3/4 while Eve's drops to 3/4 - 2*epsilon, yet for
small epsilon Eve's mutual information with Alice exceeds Bob's: knowing
the small part clearly is worth more bits than guessing the large part
well.  The family therefore defeats the claim that a guessing-probability
advantage forces an information advantage.
"""

from dataclasses import dataclass

import numpy as np

from .dist import Shape, TripartiteDistribution, validate_tripartite
from .errors import BadRange, EpsilonOutOfRange, OutOfRange, VerificationFailed
from .metrics import InfoReport, analyze_tripartite, binary_entropy

EPSILON_MAX = 0.25
FAMILY_SHAPE = Shape(2, 2, 4)

# Alice-Bob marginal is ((3/8, 1/8), (1/8, 3/8)) for every epsilon, so
# this stays constant across the family.
I_AB_FAMILY = 1.0 - binary_entropy(0.25)

_FLOAT_FIELDS = ("p_b", "p_e", "i_ab", "i_ae", "h_a", "fano_slack_b", "fano_slack_e")
_FLAG_FIELDS = ("premise_holds", "implication_violated")


def _check_epsilon(epsilon: float):
    if not 0.0 <= epsilon <= EPSILON_MAX:
        raise EpsilonOutOfRange(
            f"epsilon must lie in [0, {EPSILON_MAX}] to keep all cells nonnegative, "
            f"got {epsilon!r}"
        )


@dataclass(frozen=True)
class CounterexampleParams:
    epsilon: float
    epsilon_prime: float

    @classmethod
    def from_epsilon(cls, epsilon: float) -> "CounterexampleParams":
        _check_epsilon(epsilon)
        return cls(epsilon=epsilon, epsilon_prime=0.5 * binary_entropy(4.0 * epsilon))


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    p_b: float
    p_e: float
    i_ab: float
    i_ae: float
    gap: float


@dataclass(frozen=True)
class VerificationReport:
    epsilon: float
    tol: float
    analyzed: InfoReport
    closed: InfoReport
    max_deviation: float
    passed: bool


def build_counterexample(epsilon: float) -> TripartiteDistribution:
    """The joint table P_ijk at a given epsilon, shape (2, 2, 4).

    Eve's four outcomes split into one pair (k = 0, 3) where she knows
    Alice's bit except for an epsilon-rare flip, and one pair (k = 1, 2)
    where she knows Bob's bit but nothing about Alice's.
    """
    _check_epsilon(epsilon)
    t = np.zeros((2, 2, 4))
    t[0, 0, 0] = 0.25 - epsilon
    t[1, 1, 0] = epsilon
    t[0, 0, 1] = 0.125
    t[0, 1, 1] = 0.125
    t[1, 0, 2] = 0.125
    t[1, 1, 2] = 0.125
    t[0, 0, 3] = epsilon
    t[1, 1, 3] = 0.25 - epsilon
    return validate_tripartite(t.reshape(-1), FAMILY_SHAPE)


def closed_form_report(epsilon: float) -> InfoReport:
    """Report built from the family's closed forms instead of the table.

    p_b = 3/4 and i_ab = 1 - H(1/4) for every epsilon; i_ae =
    1/2 - (1/2)H(4e); p_e = 3/4 - 2e until epsilon reaches 1/8, where
    the best guess in Eve's outer columns flips and p_e mirrors up as
    1/4 + 2e.  All single marginals are uniform, so h_a = 1.  Flags
    follow the same strict rule as analyze_tripartite.
    """
    _check_epsilon(epsilon)
    p_b = 0.75
    p_e = 0.75 - 2.0 * epsilon if epsilon <= 0.125 else 0.25 + 2.0 * epsilon
    i_ab = I_AB_FAMILY
    i_ae = 0.5 - 0.5 * binary_entropy(4.0 * epsilon)
    premise = p_b > p_e
    p_err_e = 1.0 - p_e
    return InfoReport(
        p_b=p_b,
        p_e=p_e,
        i_ab=i_ab,
        i_ae=i_ae,
        h_a=1.0,
        premise_holds=premise,
        implication_violated=premise and i_ae > i_ab,
        fano_slack_b=binary_entropy(0.25) - (1.0 - i_ab),
        fano_slack_e=binary_entropy(p_err_e) - (1.0 - i_ae),
    )


def _compare_reports(got: InfoReport, want: InfoReport):
    """Largest float-field deviation and whether the flags agree."""
    dev = max(abs(getattr(got, f) - getattr(want, f)) for f in _FLOAT_FIELDS)
    flags_ok = all(getattr(got, f) == getattr(want, f) for f in _FLAG_FIELDS)
    return dev, flags_ok


def verify_counterexample(epsilon: float, tol: float = 1e-9) -> VerificationReport:
    """Check the table route against the closed forms at one epsilon.

    Runs analyze_tripartite(build_counterexample(epsilon)), compares every
    report field to closed_form_report(epsilon), and additionally demands
    the violation flags inside the violation region.  Returns the paired
    reports on success; raises VerificationFailed (carrying the largest
    deviation) when any field is off by more than tol or flags disagree.
    """
    if not epsilon > 0.0:
        raise EpsilonOutOfRange(f"verification needs epsilon > 0, got {epsilon!r}")
    _check_epsilon(epsilon)
    if not tol > 0.0:
        raise OutOfRange(f"tol must be > 0, got {tol!r}")
    analyzed = analyze_tripartite(build_counterexample(epsilon))
    closed = closed_form_report(epsilon)
    dev, flags_ok = _compare_reports(analyzed, closed)
    report = VerificationReport(
        epsilon=epsilon,
        tol=tol,
        analyzed=analyzed,
        closed=closed,
        max_deviation=dev,
        passed=dev <= tol and flags_ok,
    )
    if not report.passed:
        raise VerificationFailed(
            f"table route deviates from closed forms by {dev:.3e} (tol {tol:.3e})"
            + ("" if flags_ok else "; premise/violation flags disagree"),
            report=report,
            max_deviation=dev,
        )
    if closed.implication_violated and not analyzed.implication_violated:
        raise VerificationFailed(
            "closed forms place epsilon in the violation region but the table "
            "route does not flag it",
            report=report,
            max_deviation=dev,
        )
    return report


def sweep(eps_start: float, eps_end: float, steps: int) -> list:
    """Closed-form rows on an evenly spaced epsilon grid, endpoints
    included, each row cross-checked against the table route to 1e-9.
    """
    if not (0.0 <= eps_start < eps_end <= EPSILON_MAX):
        raise BadRange(
            f"need 0 <= start < end <= {EPSILON_MAX}, got [{eps_start!r}, {eps_end!r}]"
        )
    if steps < 2:
        raise BadRange(f"need at least 2 steps, got {steps!r}")
    rows = []
    for eps in np.linspace(eps_start, eps_end, steps):
        eps = float(eps)
        closed = closed_form_report(eps)
        analyzed = analyze_tripartite(build_counterexample(eps))
        dev, _ = _compare_reports(analyzed, closed)
        if dev > 1e-9:
            raise VerificationFailed(
                f"sweep cross-check failed at epsilon={eps!r}: deviation {dev:.3e}",
                max_deviation=dev,
            )
        rows.append(
            SweepRow(
                epsilon=eps,
                p_b=closed.p_b,
                p_e=closed.p_e,
                i_ab=closed.i_ab,
                i_ae=closed.i_ae,
                gap=closed.i_ae - closed.i_ab,
            )
        )
    return rows


def violation_boundary() -> float:
    """The epsilon where the family stops violating the implication.

    Solves 1/2 - (1/2)H(4e) = 1 - H(1/4) by bisection on [0, 0.125]
    (i_ae is strictly decreasing there) to absolute tolerance 1e-10,
    capped at 60 iterations.  Below the root the gap is positive, above
    it negative.
    """
    lo, hi = 0.0, 0.125
    for _ in range(60):
        if hi - lo <= 1e-10:
            break
        mid = 0.5 * (lo + hi)
        gap = (0.5 - 0.5 * binary_entropy(4.0 * mid)) - I_AB_FAMILY
        if gap > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
