"""Distributions, stochastic matrices, and chain simulation.

A chain is specified by a row-stochastic matrix over a fixed ordered
label set plus an initial distribution; trajectories store outcome
indices into that label order.  Validation never renormalizes: a vector
that fails the probability axioms is reported, not repaired, because the
stochasticity of quantum-derived matrices is a correctness signal.
"""

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidArgumentError,
    InvalidDistributionError,
)
from .rng import RngState

SUM_TOL = 1e-9

# draws are batched for speed; identical values to one-at-a-time draws
_BLOCK = 1 << 20


def _as_prob_vector(probs) -> np.ndarray:
    arr = np.asarray(probs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidDistributionError(f"expected a non-empty 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistributionError("probabilities must be finite")
    if np.any(arr < 0.0):
        raise InvalidDistributionError(f"negative probability: min entry {arr.min()}")
    total = float(arr.sum())
    if abs(total - 1.0) > SUM_TOL:
        raise InvalidDistributionError(f"probabilities sum to {total!r}, not 1 within {SUM_TOL}")
    return arr


def _default_labels(count: int) -> tuple:
    return tuple(range(count))


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability vector over an ordered outcome label set."""

    labels: tuple
    probs: np.ndarray

    def __post_init__(self):
        arr = _as_prob_vector(self.probs)
        labels = tuple(self.labels)
        if len(labels) != arr.size:
            raise DimensionMismatchError(
                f"{len(labels)} labels for {arr.size} probabilities"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Row-stochastic matrix; row i is the next-outcome distribution from outcome i."""

    labels: tuple
    rows: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.rows, dtype=float)
        labels = tuple(self.labels)
        n = len(labels)
        if arr.shape != (n, n):
            raise DimensionMismatchError(
                f"expected a {n}x{n} matrix for {n} labels, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidDistributionError("matrix entries must be finite")
        if np.any(arr < 0.0):
            raise InvalidDistributionError(f"negative entry: min {arr.min()}")
        if np.any(arr > 1.0 + SUM_TOL):
            raise InvalidDistributionError(f"entry above 1: max {arr.max()}")
        sums = arr.sum(axis=1)
        bad = np.abs(sums - 1.0) > SUM_TOL
        if np.any(bad):
            i = int(np.argmax(np.abs(sums - 1.0)))
            raise InvalidDistributionError(
                f"row {i} sums to {sums[i]!r}, not 1 within {SUM_TOL}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "rows", arr)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def row_distribution(self, i: int) -> Distribution:
        return Distribution(self.labels, self.rows[i])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """A realized outcome sequence: states[n] indexes labels; length steps + 1."""

    labels: tuple
    states: np.ndarray
    seed: int
    steps: int

    def __post_init__(self):
        if not isinstance(self.steps, int) or self.steps < 0:
            raise InvalidArgumentError(f"steps must be a non-negative integer, got {self.steps!r}")
        arr = np.asarray(self.states)
        if not np.issubdtype(arr.dtype, np.integer):
            raise InvalidArgumentError("trajectory states must be integer indices")
        arr = arr.astype(np.int64, copy=False)
        labels = tuple(self.labels)
        if arr.ndim != 1 or arr.size != self.steps + 1:
            raise InvalidArgumentError(
                f"expected {self.steps + 1} states for {self.steps} steps, got {arr.size}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= len(labels)):
            raise InvalidArgumentError("trajectory contains an out-of-range outcome index")
        arr.flags.writeable = False
        object.__setattr__(self, "states", arr)
        object.__setattr__(self, "labels", labels)

    def outcomes(self) -> list:
        """The outcome labels in sequence order."""
        return [self.labels[i] for i in self.states]


@dataclass(frozen=True)
class StationaryResult:
    distribution: Distribution
    iterations: int
    residual: float


def validate_distribution(probs, labels=None) -> Distribution:
    """Check the probability axioms and wrap the vector; never renormalizes."""
    arr = _as_prob_vector(probs)
    if labels is None:
        labels = _default_labels(arr.size)
    return Distribution(tuple(labels), arr)


def _pick(cum: list, u: float, dim: int) -> int:
    # inverse CDF in stored label order; the clamp absorbs the float gap
    # between the final cumulative value and 1
    i = bisect_right(cum, u)
    return i if i < dim else dim - 1


def sample(dist: Distribution, rng: RngState) -> int:
    """One outcome index drawn from dist, consuming exactly one uniform."""
    cum = np.cumsum(dist.probs).tolist()
    return _pick(cum, rng.random(), dist.dim)


def simulate_chain(P: StochasticMatrix, initial: Distribution, steps: int, rng: RngState) -> Trajectory:
    """Realize steps transitions of the chain; states[0] is drawn from initial."""
    if P.labels != initial.labels:
        raise DimensionMismatchError("matrix and initial distribution have different labels")
    if not isinstance(steps, int) or steps < 0:
        raise InvalidArgumentError(f"steps must be a non-negative integer, got {steps!r}")
    dim = P.dim
    cums = [np.cumsum(row).tolist() for row in P.rows]
    states = np.empty(steps + 1, dtype=np.int64)
    state = _pick(np.cumsum(initial.probs).tolist(), rng.random(), dim)
    states[0] = state
    done = 0
    while done < steps:
        block = rng.random_block(min(_BLOCK, steps - done)).tolist()
        for offset, u in enumerate(block, start=done + 1):
            state = _pick(cums[state], u, dim)
            states[offset] = state
        done += len(block)
    return Trajectory(labels=P.labels, states=states, seed=rng.seed, steps=steps)


def evolve(P: StochasticMatrix, lam: Distribution, n: int) -> Distribution:
    """The distribution after n steps: lam as a row vector times P, n times."""
    if P.labels != lam.labels:
        raise DimensionMismatchError("matrix and distribution have different labels")
    if not isinstance(n, int) or n < 0:
        raise InvalidArgumentError(f"step count must be a non-negative integer, got {n!r}")
    v = lam.probs
    for _ in range(n):
        v = v @ P.rows
    return Distribution(P.labels, v)


def stationary(P: StochasticMatrix, tol: float = 1e-10, max_iters: int = 100_000) -> StationaryResult:
    """Power-iterate to a distribution pi with TV(pi P, pi) <= tol.

    The start vector is a deterministic descending ramp rather than the
    uniform vector: uniform is exactly fixed by every doubly stochastic
    matrix, which would mask non-convergence of periodic chains.
    """
    if not (isinstance(tol, (int, float)) and tol > 0.0):
        raise InvalidArgumentError(f"tol must be positive, got {tol!r}")
    if not isinstance(max_iters, int) or max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be a positive integer, got {max_iters!r}")
    dim = P.dim
    ramp = np.arange(dim, 0, -1, dtype=float)
    curr = (ramp / ramp.sum()) @ P.rows
    residual = np.inf
    for iteration in range(1, max_iters + 1):
        nxt = curr @ P.rows
        residual = 0.5 * float(np.abs(nxt - curr).sum())
        if residual <= tol:
            return StationaryResult(
                distribution=Distribution(P.labels, curr),
                iterations=iteration,
                residual=residual,
            )
        curr = nxt
    raise ConvergenceError(
        f"no stationary distribution within {max_iters} iterations "
        f"(residual {residual:.3e}); the chain may be periodic",
        last_iterate=curr,
        residual=residual,
        iterations=max_iters,
    )
