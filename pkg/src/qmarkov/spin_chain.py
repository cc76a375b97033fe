"""Markov chains induced by alternately measuring a spin along two axes.

A spin-s system is measured along the z-axis, then along a rotated axis
n, then z again, and so on.  After each measurement the state collapses
to a basis vector of the axis just measured, so the next outcome depends
only on the current one: the outcome sequence is a Markov chain on
{s, s-1, ..., -s} whose transition probabilities are squared rotation
matrix elements |d^s(beta)|^2.

Two independent routes to that chain live here: the analytic transition
matrix, and a simulator that tracks the collapse measurement by
measurement.  Tests close the loop between them.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InternalConsistencyError, InvalidArgumentError, InvalidStateError
from .halfint import HalfInt, m_values
from .markov import Distribution, StochasticMatrix, Trajectory, _pick
from .rng import RngState
from .wigner import EulerAngles, big_D

AXIS_Z = "z"
AXIS_N = "n"

_DOUBLY_STOCHASTIC_TOL = 1e-10

_BLOCK = 1 << 20


@dataclass(frozen=True)
class SpinChainSpec:
    """Chain parameters: spin magnitude and the rotation carrying z to n.

    alpha and gamma complete the Euler triple of the rotation; they drop
    out of every squared magnitude and are retained only so the full
    complex model can be exercised.  beta is meaningful modulo the usual
    conventions but any finite value is accepted; the matrix elements
    are entire in beta.
    """

    s: HalfInt
    beta: float
    alpha: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not isinstance(self.s, HalfInt):
            raise InvalidArgumentError(f"s must be a HalfInt, got {self.s!r}")
        if self.s.twice < 1:
            raise InvalidArgumentError(f"spin must be at least 1/2, got s={self.s}")
        # finiteness checked here; range limits surface at evaluation
        EulerAngles(self.alpha, self.beta, self.gamma)

    @property
    def angles(self) -> EulerAngles:
        return EulerAngles(self.alpha, self.beta, self.gamma)

    @property
    def labels(self) -> tuple[HalfInt, ...]:
        return m_values(self.s)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """State vector over the z-basis {|s,m>}, m descending from s to -s."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidStateError(f"expected a non-empty 1-d amplitude vector, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("amplitudes must be finite")
        norm = float(np.sum(arr.real**2 + arr.imag**2))
        if abs(norm - 1.0) > 1e-9:
            raise InvalidStateError(f"state norm squared is {norm!r}, not 1 within 1e-9")
        arr.flags.writeable = False
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, slots=True)
class MeasurementRecord:
    """One measurement: which axis was read at which step, and the outcome."""

    step: int
    kind: str
    outcome: HalfInt

    def __post_init__(self):
        expected = AXIS_Z if self.step % 2 == 0 else AXIS_N
        if self.kind != expected:
            raise InvalidArgumentError(
                f"step {self.step} must measure axis {expected!r}, got {self.kind!r}"
            )


def _overlap_squared(spec: SpinChainSpec) -> np.ndarray:
    """Matrix O with O[a, b] = |<m_a| R |m_b>|^2 for the spec's rotation R.

    Row a indexes the z-basis outcome, column b the rotated-basis outcome,
    both in descending-m order.  O[a, b] is the probability of either
    cross-basis transition between outcomes m_a and m_b; the two readings
    agree because squared magnitudes kill the phases.
    """
    entries = big_D(spec.s, spec.angles).entries
    return np.square(entries.real) + np.square(entries.imag)


def spin_transition_matrix(spec: SpinChainSpec) -> StochasticMatrix:
    """The chain's transition matrix: entry (i, j) = |d^s(beta)|^2 at (j, i).

    Row i is the current outcome, column j the next.  Unitarity of the
    rotation makes the matrix doubly stochastic; both sum directions are
    asserted here because a failure means the rotation matrix itself is
    wrong.
    """
    overlap = _overlap_squared(spec)
    rows = overlap.T.copy()
    col_defect = float(np.abs(rows.sum(axis=0) - 1.0).max())
    row_defect = float(np.abs(rows.sum(axis=1) - 1.0).max())
    if max(col_defect, row_defect) > _DOUBLY_STOCHASTIC_TOL:
        raise InternalConsistencyError(
            f"transition matrix not doubly stochastic: row defect {row_defect:.3e}, "
            f"column defect {col_defect:.3e}"
        )
    return StochasticMatrix(labels=spec.labels, rows=rows)


def initial_distribution(spec: SpinChainSpec, psi: QuantumState) -> Distribution:
    """Outcome distribution of the first z-axis measurement on psi."""
    if not isinstance(psi, QuantumState):
        psi = QuantumState(np.asarray(psi))
    if psi.dim != spec.s.twice + 1:
        raise DimensionMismatchError(
            f"state dimension {psi.dim} does not match 2s+1 = {spec.s.twice + 1}"
        )
    amps = psi.amplitudes
    probs = np.square(amps.real) + np.square(amps.imag)
    return Distribution(labels=spec.labels, probs=probs)


def simulate_measurements(
    spec: SpinChainSpec, psi: QuantumState, steps: int, rng: RngState
) -> tuple[Trajectory, list[MeasurementRecord]]:
    """Realize the alternating measurement sequence with explicit collapse.

    Step 0 reads the z-axis on psi; afterwards the state is always a
    known basis vector of the axis just measured, so only (axis, outcome)
    is tracked.  Outcome probabilities at every later step are squared
    overlaps between the current basis vector and the next axis's basis:
    from a z-outcome the overlap matrix is read along its row, from an
    n-outcome along its column.  No transition matrix is consulted; the
    chain law is emergent and is what the tests verify.
    """
    if not isinstance(steps, int) or steps < 0:
        raise InvalidArgumentError(f"steps must be a non-negative integer, got {steps!r}")
    init = initial_distribution(spec, psi)
    labels = spec.labels
    dim = len(labels)
    overlap = _overlap_squared(spec)
    from_z = [np.cumsum(overlap[a, :]).tolist() for a in range(dim)]
    from_n = [np.cumsum(overlap[:, b]).tolist() for b in range(dim)]

    states = np.empty(steps + 1, dtype=np.int64)
    state = _pick(np.cumsum(init.probs).tolist(), rng.random(), dim)
    states[0] = state
    records = [MeasurementRecord(step=0, kind=AXIS_Z, outcome=labels[state])]
    done = 0
    while done < steps:
        block = rng.random_block(min(_BLOCK, steps - done)).tolist()
        for step, u in enumerate(block, start=done + 1):
            # even steps read z, odd steps read n; the state entering
            # step `step` is a basis vector of the other axis
            if step % 2 == 1:
                state = _pick(from_z[state], u, dim)
                records.append(MeasurementRecord(step=step, kind=AXIS_N, outcome=labels[state]))
            else:
                state = _pick(from_n[state], u, dim)
                records.append(MeasurementRecord(step=step, kind=AXIS_Z, outcome=labels[state]))
            states[step] = state
        done += len(block)
    trajectory = Trajectory(labels=labels, states=states, seed=rng.seed, steps=steps)
    return trajectory, records


def coin_toss_stream(count: int, rng: RngState) -> np.ndarray:
    """Fair bits from a spin-1/2 chain at beta = pi/2.

    Measuring alternately along z and x starting from the balanced
    superposition gives i.i.d. fair outcomes; +1/2 maps to 1 and -1/2
    to 0.
    """
    if not isinstance(count, int) or count < 0:
        raise InvalidArgumentError(f"count must be a non-negative integer, got {count!r}")
    if count == 0:
        return np.zeros(0, dtype=np.uint8)
    spec = SpinChainSpec(s=HalfInt(1), beta=math.pi / 2.0)
    amp = math.sqrt(0.5)
    psi = QuantumState(np.array([amp, amp], dtype=complex))
    trajectory, _ = simulate_measurements(spec, psi, count - 1, rng)
    # outcome index 0 is m = +1/2
    return (1 - trajectory.states).astype(np.uint8)
