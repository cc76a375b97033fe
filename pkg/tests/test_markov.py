import numpy as np
import pytest

from qmarkov import (
    ConvergenceError,
    DimensionMismatchError,
    Distribution,
    InvalidArgumentError,
    InvalidDistributionError,
    RngState,
    StochasticMatrix,
    Trajectory,
    evolve,
    sample,
    simulate_chain,
    stationary,
    validate_distribution,
)


def coin_matrix():
    return StochasticMatrix(labels=("h", "t"), rows=np.array([[0.5, 0.5], [0.5, 0.5]]))


def lazy_walk():
    return StochasticMatrix(labels=("a", "b"), rows=np.array([[0.9, 0.1], [0.1, 0.9]]))


def two_cycle():
    return StochasticMatrix(labels=("a", "b"), rows=np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_validate_distribution_accepts_probability_vectors():
    d = validate_distribution([0.25, 0.75])
    assert d.labels == (0, 1)
    assert d.dim == 2
    named = validate_distribution([1.0], labels=("only",))
    assert named.labels == ("only",)


@pytest.mark.parametrize(
    "probs",
    [[0.5, 0.6], [0.5, 0.4], [-0.1, 1.1], [float("nan"), 1.0], [float("inf"), 0.0]],
)
def test_validate_distribution_rejects_bad_vectors(probs):
    with pytest.raises(InvalidDistributionError):
        validate_distribution(probs)


def test_distribution_label_length_must_match():
    with pytest.raises(DimensionMismatchError):
        Distribution(labels=("a",), probs=np.array([0.5, 0.5]))


def test_stochastic_matrix_validation():
    with pytest.raises(InvalidDistributionError):
        StochasticMatrix(labels=("a", "b"), rows=np.array([[0.5, 0.6], [0.5, 0.5]]))
    with pytest.raises(DimensionMismatchError):
        StochasticMatrix(labels=("a", "b"), rows=np.array([[1.0, 0.0]]))
    m = coin_matrix()
    assert m.dim == 2
    row = m.row_distribution(1)
    assert row.labels == ("h", "t")
    assert np.array_equal(row.probs, [0.5, 0.5])


def test_sample_is_deterministic_and_in_range():
    d = validate_distribution([0.25, 0.75])
    rng_a, rng_b = RngState(7), RngState(7)
    a = [sample(d, rng_a) for _ in range(100)]
    b = [sample(d, rng_b) for _ in range(100)]
    assert a == b
    assert set(a) <= {0, 1}
    assert len(set(a)) == 2  # both outcomes appear in 100 draws


def test_sample_frequencies_follow_the_distribution():
    d = validate_distribution([0.25, 0.75])
    rng = RngState(11)
    draws = np.array([sample(d, rng) for _ in range(20_000)])
    assert abs(draws.mean() - 0.75) < 0.01


def test_simulate_chain_shape_and_determinism():
    start = Distribution(labels=("h", "t"), probs=np.array([1.0, 0.0]))
    t1 = simulate_chain(coin_matrix(), start, 100, RngState(3))
    t2 = simulate_chain(coin_matrix(), start, 100, RngState(3))
    assert t1.steps == 100
    assert t1.states.shape == (101,)
    assert t1.states[0] == 0
    assert np.array_equal(t1.states, t2.states)
    assert t1.outcomes()[:1] == ["h"]
    empty = simulate_chain(coin_matrix(), start, 0, RngState(3))
    assert empty.states.shape == (1,)


def test_simulate_chain_requires_matching_labels():
    start = Distribution(labels=("x", "y"), probs=np.array([1.0, 0.0]))
    with pytest.raises(DimensionMismatchError):
        simulate_chain(coin_matrix(), start, 10, RngState(0))


def test_simulate_chain_transition_frequencies_match_rows():
    P = lazy_walk()
    start = Distribution(labels=("a", "b"), probs=np.array([0.5, 0.5]))
    t = simulate_chain(P, start, 100_000, RngState(5))
    from qmarkov import empirical_matrix, transition_counts

    emp = empirical_matrix(transition_counts(t))
    assert np.abs(emp.rows - P.rows).max() < 0.01


def test_evolve_applies_the_matrix():
    start = Distribution(labels=("a", "b"), probs=np.array([1.0, 0.0]))
    one = evolve(lazy_walk(), start, 1)
    assert np.allclose(one.probs, [0.9, 0.1], atol=1e-15)
    ten = evolve(lazy_walk(), start, 10)
    assert abs(ten.probs.sum() - 1.0) < 1e-12
    # uniform is preserved by any doubly stochastic matrix
    uniform = Distribution(labels=("h", "t"), probs=np.array([0.5, 0.5]))
    after = evolve(coin_matrix(), uniform, 5)
    assert np.allclose(after.probs, [0.5, 0.5], atol=1e-15)


def test_evolve_validates_steps_and_labels():
    start = Distribution(labels=("a", "b"), probs=np.array([1.0, 0.0]))
    with pytest.raises(InvalidArgumentError):
        evolve(lazy_walk(), start, -1)
    bad = Distribution(labels=("x", "y"), probs=np.array([1.0, 0.0]))
    with pytest.raises(DimensionMismatchError):
        evolve(lazy_walk(), bad, 1)


def test_stationary_fair_coin_converges_immediately():
    result = stationary(coin_matrix())
    assert result.iterations == 1
    assert np.allclose(result.distribution.probs, [0.5, 0.5], atol=1e-10)
    assert result.residual <= 1e-10


def test_stationary_lazy_walk():
    result = stationary(lazy_walk())
    assert np.allclose(result.distribution.probs, [0.5, 0.5], atol=1e-8)
    assert result.distribution.labels == ("a", "b")


def test_stationary_identity_returns_any_fixed_point():
    eye = StochasticMatrix(labels=("a", "b", "c"), rows=np.eye(3))
    result = stationary(eye)
    assert result.iterations == 1
    assert abs(result.distribution.probs.sum() - 1.0) < 1e-12


def test_stationary_two_cycle_fails_to_converge():
    with pytest.raises(ConvergenceError) as info:
        stationary(two_cycle(), max_iters=500)
    err = info.value
    assert err.iterations == 500
    assert err.residual > 0.1
    assert err.last_iterate.shape == (2,)
    assert abs(err.last_iterate.sum() - 1.0) < 1e-12


def test_trajectory_validation():
    with pytest.raises(InvalidArgumentError):
        Trajectory(labels=("a", "b"), states=np.array([0]), seed=0, steps=-1)
    with pytest.raises(InvalidArgumentError):
        Trajectory(labels=("a", "b"), states=np.array([0, 1, 0]), seed=0, steps=5)
    with pytest.raises(InvalidArgumentError):
        Trajectory(labels=("a", "b"), states=np.array([0, 2]), seed=0, steps=1)
    t = Trajectory(labels=("a", "b"), states=np.array([0, 1, 1]), seed=9, steps=2)
    assert t.outcomes() == ["a", "b", "b"]
