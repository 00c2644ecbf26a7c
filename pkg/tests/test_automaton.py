import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from appnext.automaton import expand_actions, lri_update, new_uniform, sample_action, top_k
from appnext.errors import InvalidSizeError


def test_new_uniform():
    assert new_uniform(4).tolist() == [0.25, 0.25, 0.25, 0.25]
    assert new_uniform(1).tolist() == [1.0]
    q = new_uniform(10)
    assert np.all(q == 0.1) and q.sum() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [0, -3])
def test_new_uniform_rejects_empty(n):
    with pytest.raises(InvalidSizeError):
        new_uniform(n)


def test_lri_update_reward():
    # 0.5 + 0.2 * (1 - 0.5) = 0.6 and 0.5 - 0.2 * 0.5 = 0.4
    q = lri_update([0.5, 0.5], 0, 1, 0.2)
    assert q == pytest.approx([0.6, 0.4], abs=1e-15)
    assert q.sum() == pytest.approx(1.0, abs=1e-12)


def test_lri_update_inaction():
    assert lri_update([0.3, 0.7], 1, 0, 0.9).tolist() == [0.3, 0.7]


def test_lri_update_fixed_point():
    assert lri_update([1.0, 0.0], 0, 1, 0.5).tolist() == [1.0, 0.0]


def test_lri_update_does_not_mutate_input():
    q = np.array([0.5, 0.5])
    lri_update(q, 1, 1, 0.3)
    assert q.tolist() == [0.5, 0.5]


def test_lri_update_errors():
    with pytest.raises(IndexError):
        lri_update([0.5, 0.5], 2, 1, 0.1)
    with pytest.raises(ValueError):
        lri_update([0.5, 0.5], 0, 1, 1.0)
    with pytest.raises(ValueError):
        lri_update([0.5, 0.5], 0, 2, 0.1)


@pytest.mark.parametrize(
    "q, k, expected",
    [
        ([0.1, 0.6, 0.3], 2, [1, 2]),
        ([0.5, 0.5], 1, [0]),
        ([0.2, 0.3, 0.5], 10, [2, 1, 0]),
        ([0.25] * 4, 4, [0, 1, 2, 3]),
    ],
)
def test_top_k(q, k, expected):
    assert top_k(q, k) == expected


def test_top_k_rejects_zero():
    with pytest.raises(ValueError):
        top_k([1.0], 0)


def test_sample_action_degenerate():
    rng = np.random.default_rng(1)
    assert {sample_action([1.0, 0.0], rng) for _ in range(500)} == {0}
    assert {sample_action([0.0, 1.0], rng) for _ in range(500)} == {1}


def test_sample_action_frequencies():
    rng = np.random.default_rng(2024)
    draws = np.array([sample_action([0.3, 0.7], rng) for _ in range(10_000)])
    counts = np.bincount(draws, minlength=2)
    expected = np.array([3000.0, 7000.0])
    sigma = np.sqrt(10_000 * 0.3 * 0.7)
    assert np.all(np.abs(counts - expected) <= 3 * sigma)
    assert stats.chisquare(counts, expected).pvalue > 1e-3


def test_sample_action_reproducible():
    q = [0.1, 0.2, 0.3, 0.4]
    a = [sample_action(q, r) for r in [np.random.default_rng(7)] for _ in range(100)]
    b = [sample_action(q, r) for r in [np.random.default_rng(7)] for _ in range(100)]
    assert a == b


def test_expand_actions_examples():
    assert expand_actions([0.5, 0.5], 2).tolist() == [0.5, 0.5]
    # append 1/2 then divide [1.0, 0.5] by 1.5
    assert expand_actions([1.0], 2) == pytest.approx([2 / 3, 1 / 3], abs=1e-15)
    # append 1/4 to three entries of 1/3, then divide by 1.25: the old
    # entries stay equal to each other but the newcomer gets less
    q = expand_actions(new_uniform(3), 4)
    assert q == pytest.approx([4 / 15, 4 / 15, 4 / 15, 1 / 5], abs=1e-15)
    assert q.sum() == pytest.approx(1.0, abs=1e-12)


def test_expand_actions_keeps_order():
    q = expand_actions([0.1, 0.6, 0.3], 5)
    assert [i for i in top_k(q, 5) if i < 3] == [1, 2, 0]
    assert q[1] / q[2] == pytest.approx(2.0)
    assert q[3] == q[4] == pytest.approx(0.2 / 1.4)


def test_expand_actions_rejects_shrink():
    with pytest.raises(InvalidSizeError):
        expand_actions([0.5, 0.5], 1)


@pytest.mark.parametrize("lam", [0.05, 0.1, 0.5])
@pytest.mark.parametrize("q0", [0.5, 0.2, 1 / 7])
def test_closed_form_convergence(lam, q0):
    q = np.array([q0, 1.0 - q0])
    for t in range(1, 101):
        q = lri_update(q, 0, 1, lam)
        assert abs(q[0] - (1.0 - (1.0 - q0) * (1.0 - lam) ** t)) <= 1e-9


probs = st.lists(st.floats(0.0, 1.0), min_size=1, max_size=12).filter(lambda v: sum(v) > 1e-3)


@st.composite
def vectors(draw):
    v = np.array(draw(probs))
    return v / v.sum()


@given(q=vectors(), data=st.data(), lam=st.floats(1e-3, 0.999))
def test_reward_monotone(q, data, lam):
    i = data.draw(st.integers(0, q.size - 1))
    out = lri_update(q, i, 1, lam)
    if q[i] < 1.0 - 1e-6:
        assert out[i] > q[i]
    others = np.arange(q.size) != i
    assert np.all(out[others] <= q[others])


@given(q=vectors(), data=st.data(), lam=st.floats(1e-3, 0.999))
def test_penalty_is_identity(q, data, lam):
    i = data.draw(st.integers(0, q.size - 1))
    assert np.array_equal(lri_update(q, i, 0, lam), q)


@settings(max_examples=200)
@given(
    ops=st.lists(
        st.tuples(st.booleans(), st.integers(0, 10**6), st.floats(1e-3, 0.999), st.integers(0, 3)),
        max_size=60,
    ),
    n0=st.integers(1, 6),
)
def test_normalization_under_random_ops(ops, n0):
    q = new_uniform(n0)
    for is_update, pick, lam, grow in ops:
        if is_update:
            q = lri_update(q, pick % q.size, pick % 2, lam)
        else:
            q = expand_actions(q, q.size + grow)
        assert abs(q.sum() - 1.0) <= 1e-9
        assert q.min() >= 0.0


@given(q=vectors(), k=st.integers(1, 15))
def test_top_k_deterministic_and_sorted(q, k):
    a = top_k(q, k)
    assert a == top_k(q.copy(), k)
    assert len(a) == min(k, q.size)
    vals = [q[i] for i in a]
    assert vals == sorted(vals, reverse=True)
    for x, y in zip(a, a[1:]):
        if q[x] == q[y]:
            assert x < y
    rest = [j for j in range(q.size) if j not in a]
    for j in rest:
        assert q[j] < q[a[-1]] or (q[j] == q[a[-1]] and j > a[-1])
