"""Entropies, mutual information, guessing probabilities, and the
premise/violation flags tying them together.

All quantities are in bits.  The implication under test is
"P_B > P_E implies I(A,B) > I(A,E)": Bob guessing Alice's outcome better
than Eve should mean Bob also shares more information with Alice.  A
report flags `implication_violated` when the premise holds but the
information ordering is reversed.
"""

from dataclasses import dataclass, asdict
import math

import numpy as np

from . import kernels
from .dist import NORM_ATOL, CLAMP_FLOOR, PairDistribution, TripartiteDistribution
from .errors import InvalidDistribution, OutOfRange


def _as_table(pair) -> np.ndarray:
    probs = pair.probs if isinstance(pair, PairDistribution) else pair
    arr = np.asarray(probs, dtype=np.float64)
    if arr.min() < CLAMP_FLOOR:
        raise InvalidDistribution(f"negative cell {arr.min()!r}")
    arr = np.where(arr < 0.0, 0.0, arr)
    total = float(arr.sum())
    if abs(total - 1.0) > NORM_ATOL:
        raise InvalidDistribution(f"cell sum {total!r} is not 1")
    return arr


def shannon_entropy(p) -> float:
    """-sum p_i log2 p_i with 0 log 0 = 0, in bits."""
    arr = _as_table(p).reshape(-1)
    pos = arr[arr > 0.0]
    return float(-(pos * np.log2(pos)).sum()) if pos.size else 0.0


def binary_entropy(p: float) -> float:
    """Entropy of a p-biased coin; H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"binary entropy needs p in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def mutual_information(pair) -> float:
    """I(rows; cols) in bits; zero-probability cells contribute 0."""
    t = _as_table(pair)
    if t.ndim != 2:
        raise InvalidDistribution(f"need a 2-D table, got ndim {t.ndim}")
    rows = t.sum(axis=1)
    cols = t.sum(axis=0)
    mask = t > 0.0
    if not mask.any():
        return 0.0
    denom = np.outer(rows, cols)
    return float(np.sum(t[mask] * (np.log2(t[mask]) - np.log2(denom[mask]))))


def guessing_probability(pair) -> float:
    """Success rate of the maximum-likelihood guess of the row variable
    after seeing the column variable: sum over columns of the column's
    largest cell.  Ties need no breaking since only the value is used.
    """
    t = _as_table(pair)
    if t.ndim != 2:
        raise InvalidDistribution(f"need a 2-D table, got ndim {t.ndim}")
    return float(t.max(axis=0).sum())


@dataclass(frozen=True)
class InfoReport:
    """Everything the implication "P_B > P_E => I(A,B) > I(A,E)" needs.

    fano_slack_* is [H(p_err) + p_err*log2(|A|-1)] - H(A|observer), the
    amount by which the Fano bound overshoots the actual conditional
    entropy.  Must be >= 0 up to round-off; used purely as a diagnostic.
    """

    p_b: float
    p_e: float
    i_ab: float
    i_ae: float
    h_a: float
    premise_holds: bool
    implication_violated: bool
    fano_slack_b: float
    fano_slack_e: float

    @property
    def gap(self) -> float:
        """i_ae - i_ab; positive under the premise means violation."""
        return self.i_ae - self.i_ab

    def as_dict(self) -> dict:
        d = asdict(self)
        d["gap"] = self.gap
        return d


def _fano_slack(p_guess: float, h_cond: float, n_rows: int) -> float:
    p_err = min(max(1.0 - p_guess, 0.0), 1.0)
    bound = binary_entropy(p_err)
    if n_rows > 1:
        bound += p_err * math.log2(n_rows - 1)
    return bound - h_cond


def analyze_tripartite(dist: TripartiteDistribution, margin: float = 0.0) -> InfoReport:
    """Evaluate both sides of the implication on one joint distribution.

    Alice is always the guessed variable; Bob and Eve are the observers.
    With the default margin the premise is the strict inequality
    p_b > p_e; a positive margin demands p_b - p_e >= margin instead.
    """
    _as_table(dist.probs)
    s = dist.shape
    p_b, p_e, i_ab, i_ae, h_a = kernels.tensor_stats(dist.flat, s.bob, s.alice, s.eve)
    i_ab = max(i_ab, 0.0)
    i_ae = max(i_ae, 0.0)
    premise = (p_b - p_e >= margin) if margin > 0.0 else (p_b > p_e)
    return InfoReport(
        p_b=p_b,
        p_e=p_e,
        i_ab=i_ab,
        i_ae=i_ae,
        h_a=h_a,
        premise_holds=premise,
        implication_violated=premise and i_ae > i_ab,
        fano_slack_b=_fano_slack(p_b, h_a - i_ab, s.alice),
        fano_slack_e=_fano_slack(p_e, h_a - i_ae, s.alice),
    )
