"""Markov chain of the collective z-component of N independent qubits.

Alternately measuring every qubit along z and along a rotated axis n
makes the total outcome j (half the difference between up and down
counts) a Markov chain on {N/2, N/2-1, ..., -N/2}.  Each measurement
flips each qubit independently with probability sin^2(beta/2), so the
transition probability from j to j' is a sum of binomial terms over the
number of up-to-down flips.

Three independent routes are implemented: the closed-form single-sum
formulas (two branches, j >= j' and j <= j'), a brute-force double-sum
enumeration over flip counts, and a per-qubit simulator.  Tests close
the loops between all three and against the spin-1/2 chain at N = 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, InvalidArgumentError, RangeLimitError
from .halfint import HalfInt, m_values
from .markov import StochasticMatrix, Trajectory
from .rng import RngState
from .wigner import _check_angle

BASIS_Z = "z"
BASIS_N = "n"

N_MAX_FORMULA = 64
N_MAX_BRUTE_FORCE = 20

_BRANCH_SEAM_TOL = 1e-12


@dataclass(frozen=True)
class QubitChainSpec:
    """Register parameters: qubit count and the axis rotation angle."""

    n_qubits: int
    beta: float

    def __post_init__(self):
        if not isinstance(self.n_qubits, int) or isinstance(self.n_qubits, bool) or self.n_qubits < 1:
            raise InvalidArgumentError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        _check_angle(self.beta)

    @property
    def labels(self) -> tuple[HalfInt, ...]:
        """Outcome labels N/2, N/2-1, ..., -N/2 (N+1 of them)."""
        return m_values(HalfInt(self.n_qubits))


@dataclass(frozen=True)
class RegisterConfiguration:
    """Collapsed register state: how many qubits point up, in which basis."""

    ups: int
    basis: str
    n_qubits: int

    def __post_init__(self):
        if self.basis not in (BASIS_Z, BASIS_N):
            raise InvalidArgumentError(f"basis must be {BASIS_Z!r} or {BASIS_N!r}, got {self.basis!r}")
        if not 0 <= self.ups <= self.n_qubits:
            raise InvalidArgumentError(
                f"ups must lie in [0, {self.n_qubits}], got {self.ups}"
            )

    @property
    def j(self) -> HalfInt:
        """The collective outcome: ups - N/2."""
        return HalfInt(2 * self.ups - self.n_qubits)


def flip_probability(beta: float) -> float:
    """Probability sin^2(beta/2) that one qubit crosses between the bases.

    The four cross-basis overlaps come in two values, cos^2(beta/2) for
    staying and sin^2(beta/2) for flipping, identical in both measurement
    directions.
    """
    beta = _check_angle(beta)
    sh = math.sin(beta / 2.0)
    return sh * sh


def _check_outcome(n_qubits: int, j: HalfInt, name: str) -> int:
    """Validate j as an outcome label for N qubits; returns twice j."""
    if not isinstance(j, HalfInt):
        raise InvalidArgumentError(f"{name} must be a HalfInt, got {j!r}")
    if abs(j.twice) > n_qubits or (j.twice - n_qubits) % 2 != 0:
        raise InvalidArgumentError(
            f"{name}={j} is not an outcome for {n_qubits} qubits "
            f"(need |j| <= N/2 with j - N/2 integral)"
        )
    return j.twice


def _branch_sum(start_count: int, other_count: int, delta: int, cpow: list, spow: list) -> float:
    """One printed branch: sum over m of C(start_count, m) C(other_count, K - m) terms.

    start_count qubits can make the "toward j'" flip, delta of which are
    forced; the cos/sin exponents count unflipped and flipped qubits.
    K = other_count + delta is the printed upper limit of m; terms above
    min(K, start_count) carry a zero binomial and are skipped so the
    power tables are never indexed negatively.
    """
    n = start_count + other_count
    total = 0.0
    for m in range(delta, min(other_count + delta, start_count) + 1):
        coeff = math.comb(start_count, m) * math.comb(other_count, other_count + delta - m)
        total += coeff * cpow[n + delta - 2 * m] * spow[2 * m - delta]
    return total


def q_formula(spec: QubitChainSpec, j: HalfInt, j_prime: HalfInt) -> float:
    """Closed-form transition probability from outcome j to j'.

    Evaluates the printed branch for the sign of j - j'; at j = j' both
    branches are evaluated and must agree to 1e-12, a standing tripwire
    for transcription errors in either formula.
    """
    n = spec.n_qubits
    if n > N_MAX_FORMULA:
        raise RangeLimitError(f"closed form limited to N <= {N_MAX_FORMULA}, got N={n}")
    tj = _check_outcome(n, j, "j")
    tjp = _check_outcome(n, j_prime, "j_prime")
    ch = math.cos(spec.beta / 2.0)
    sh = math.sin(spec.beta / 2.0)
    cc = ch * ch
    ss = sh * sh
    cpow = [1.0]
    spow = [1.0]
    for _ in range(n):
        cpow.append(cpow[-1] * cc)
        spow.append(spow[-1] * ss)
    ups = (n + tj) // 2
    downs = n - ups
    if tj > tjp:
        return _branch_sum(ups, downs, (tj - tjp) // 2, cpow, spow)
    if tj < tjp:
        return _branch_sum(downs, ups, (tjp - tj) // 2, cpow, spow)
    value_high = _branch_sum(ups, downs, 0, cpow, spow)
    value_low = _branch_sum(downs, ups, 0, cpow, spow)
    if abs(value_high - value_low) > _BRANCH_SEAM_TOL:
        raise InternalConsistencyError(
            f"branch formulas disagree at j=j'={j} for N={n}, beta={spec.beta}: "
            f"{value_high!r} vs {value_low!r}"
        )
    return value_high


def qubit_transition_matrix(spec: QubitChainSpec) -> StochasticMatrix:
    """The (N+1)x(N+1) chain matrix; row = current j, column = next j'."""
    labels = spec.labels
    dim = len(labels)
    rows = np.empty((dim, dim))
    for i, j in enumerate(labels):
        for k, j_prime in enumerate(labels):
            rows[i, k] = q_formula(spec, j, j_prime)
    return StochasticMatrix(labels=labels, rows=rows)


def brute_force_q(spec: QubitChainSpec, j: HalfInt, j_prime: HalfInt) -> float:
    """Transition probability by enumerating flip counts directly.

    Starting from ups up qubits, a of them flip down and b of the downs
    flip up, each qubit independently with probability p; every (a, b)
    with ups - a + b = ups' contributes C(ups,a) C(downs,b) p^(a+b)
    (1-p)^(N-a-b).  Deliberately shares no structure with the single-sum
    closed form; kept within exact enumeration range.
    """
    n = spec.n_qubits
    if n > N_MAX_BRUTE_FORCE:
        raise RangeLimitError(f"enumeration limited to N <= {N_MAX_BRUTE_FORCE}, got N={n}")
    tj = _check_outcome(n, j, "j")
    tjp = _check_outcome(n, j_prime, "j_prime")
    p = flip_probability(spec.beta)
    q = 1.0 - p
    ups = (n + tj) // 2
    downs = n - ups
    ups_next = (n + tjp) // 2
    total = 0.0
    for a in range(ups + 1):
        for b in range(downs + 1):
            if ups - a + b != ups_next:
                continue
            total += math.comb(ups, a) * math.comb(downs, b) * p ** (a + b) * q ** (n - a - b)
    return total


def simulate_register(
    spec: QubitChainSpec,
    initial_j: HalfInt,
    steps: int,
    rng: RngState,
    up_probability: float | None = None,
) -> Trajectory:
    """Realize the chain at the per-qubit level.

    Each step draws one uniform per qubit and flips it when the draw
    falls below sin^2(beta/2); the recorded outcome is the resulting up
    count minus N/2.  Which qubits are up never matters because the
    flips are i.i.d., which is exactly why the aggregate is Markov in j;
    the simulator therefore tracks only the count, with the up qubits
    notionally listed first.

    As an extension beyond the deterministic start, up_probability draws
    the initial configuration with each qubit independently up with the
    given probability (consuming N extra uniforms); initial_j is then
    ignored.
    """
    n = spec.n_qubits
    if not isinstance(steps, int) or steps < 0:
        raise InvalidArgumentError(f"steps must be a non-negative integer, got {steps!r}")
    if up_probability is None:
        ups = (_check_outcome(n, initial_j, "initial_j") + n) // 2
    else:
        if not 0.0 <= up_probability <= 1.0:
            raise InvalidArgumentError(f"up_probability must lie in [0, 1], got {up_probability!r}")
        ups = int(np.count_nonzero(rng.random_block(n) < up_probability))
    p = flip_probability(spec.beta)
    labels = spec.labels
    states = np.empty(steps + 1, dtype=np.int64)
    states[0] = n - ups  # labels descend, so index = N - ups
    block_steps = max(1, (1 << 20) // n)
    done = 0
    while done < steps:
        count = min(block_steps, steps - done)
        flips = rng.random_block(count * n).reshape(count, n) < p
        # per-step flip counts among the first `ups` qubits (up ones) and the rest
        prefix = np.cumsum(flips, axis=1)
        totals = prefix[:, -1]
        for offset in range(count):
            down_flips = int(prefix[offset, ups - 1]) if ups > 0 else 0
            up_flips = int(totals[offset]) - down_flips
            ups = ups - down_flips + up_flips
            states[done + offset + 1] = n - ups
        done += count
    return Trajectory(labels=labels, states=states, seed=rng.seed, steps=steps)
