"""Finite discrete distributions over three parties.

Axis order is fixed throughout the package: Bob outermost, then Alice,
then Eve, so cell (i, j, k) of a tripartite table is P_ijk with i = Bob's
outcome, j = Alice's, k = Eve's.  Keeping one order everywhere (including
the file format, see io.py) is what prevents silent axis swaps.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import (
    EmptyInput,
    NegativeEntry,
    NonPositiveConcentration,
    NotNormalized,
    SameVariable,
    ShapeMismatch,
)

NORM_ATOL = 1e-12
CLAMP_FLOOR = -1e-15


class VarId(Enum):
    """The three parties; values are their tensor axes."""

    BOB = 0
    ALICE = 1
    EVE = 2


@dataclass(frozen=True)
class Shape:
    bob: int
    alice: int
    eve: int

    def __post_init__(self):
        for n in (self.bob, self.alice, self.eve):
            if not isinstance(n, (int, np.integer)) or n < 1:
                raise ShapeMismatch(f"axis sizes must be positive integers, got {self}")

    @property
    def cells(self) -> int:
        return self.bob * self.alice * self.eve

    def as_tuple(self):
        return (self.bob, self.alice, self.eve)


@dataclass(frozen=True)
class TripartiteDistribution:
    """Joint table P_ijk, validated and immutable.

    ``probs`` is a read-only float64 array of shape (bob, alice, eve).
    Construct through :func:`validate_tripartite` rather than directly.
    """

    shape: Shape
    probs: np.ndarray

    @property
    def flat(self) -> np.ndarray:
        """Row-major flat view, Bob index outermost."""
        return self.probs.reshape(-1)


@dataclass(frozen=True)
class PairDistribution:
    """Bivariate marginal; ``probs`` has shape (rows, cols)."""

    rows: int
    cols: int
    probs: np.ndarray


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def validate_tripartite(probs, shape: Shape) -> TripartiteDistribution:
    """Check a flat probability sequence against a shape.

    Parameters
    ----------
    probs : sequence of float
        Cell values in row-major (Bob, Alice, Eve) order.
    shape : Shape
        Target alphabet sizes.

    Returns
    -------
    TripartiteDistribution

    Raises
    ------
    ShapeMismatch
        Length differs from the cell count.
    NegativeEntry
        Any entry below -1e-15.  Entries in [-1e-15, 0) are treated as
        round-off and clamped to exactly 0.
    NotNormalized
        Sum differs from 1 by more than 1e-12.  Input is never
        renormalized silently.
    """
    arr = np.asarray(probs, dtype=np.float64).reshape(-1)
    if arr.size != shape.cells:
        raise ShapeMismatch(
            f"expected {shape.cells} cells for shape {shape.as_tuple()}, got {arr.size}"
        )
    if arr.size and arr.min() < CLAMP_FLOOR:
        idx = int(arr.argmin())
        raise NegativeEntry(f"cell {idx} is negative: {arr[idx]!r}")
    arr = np.where(arr < 0.0, 0.0, arr)
    total = float(arr.sum())
    if abs(total - 1.0) > NORM_ATOL:
        raise NotNormalized(f"cell sum {total!r} differs from 1 by more than {NORM_ATOL}")
    cube = _freeze(arr.reshape(shape.as_tuple()))
    return TripartiteDistribution(shape=shape, probs=cube)


def marginal_pair(dist: TripartiteDistribution, x: VarId, y: VarId) -> PairDistribution:
    """Marginalize onto (x, y); rows indexed by x, columns by y."""
    if x == y:
        raise SameVariable(f"need two distinct variables, got {x.name} twice")
    table = np.moveaxis(dist.probs, (x.value, y.value), (0, 1)).sum(axis=2)
    return PairDistribution(
        rows=table.shape[0], cols=table.shape[1], probs=_freeze(np.ascontiguousarray(table))
    )


def marginal_single(dist: TripartiteDistribution, x: VarId) -> np.ndarray:
    axes = tuple(v.value for v in VarId if v != x)
    return dist.probs.sum(axis=axes)


def dirichlet_sample(shape: Shape, concentration: float, seed) -> TripartiteDistribution:
    """Draw one symmetric-Dirichlet random distribution.

    Sampling is per-cell Gamma(concentration) draws normalized by their
    sum, driven by a PCG64 generator so that identical (shape,
    concentration, seed) triples give bit-identical output on any
    platform.  ``seed`` is anything numpy's SeedSequence accepts.
    """
    if not concentration > 0.0:
        raise NonPositiveConcentration(f"concentration must be > 0, got {concentration!r}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    draws = rng.standard_gamma(concentration, size=shape.cells)
    total = draws.sum()
    if total <= 0.0:
        # all draws underflowed (tiny concentration); fall back to uniform
        draws = np.full(shape.cells, 1.0)
        total = float(shape.cells)
    return validate_tripartite(draws / total, shape)


def project_to_simplex(v) -> np.ndarray:
    """Euclidean projection onto the probability simplex.

    Sort-then-threshold: with the entries sorted in decreasing order,
    find the largest prefix whose shifted average keeps the prefix
    positive, then subtract the shift and clip.  O(n log n), exact for
    the maximal-support solution, idempotent.
    """
    arr = np.asarray(v, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise EmptyInput("cannot project an empty vector")
    return kernels.project_simplex(arr)
