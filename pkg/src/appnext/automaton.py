"""Finite action-set learning automaton primitives.

An automaton is nothing more than a probability vector over its actions.
Every function here takes a vector and returns a new one; the inputs are
never modified.
"""

import numpy as np

from .errors import InvalidSizeError

REWARD = 1
PENALTY = 0


def check_rate(rate):
    """Return ``rate`` as a float, rejecting values outside the open unit interval."""
    rate = float(rate)
    if not 0.0 < rate < 1.0:
        raise ValueError(f"learning rate must satisfy 0 < rate < 1, got {rate}")
    return rate


def new_uniform(n):
    """Uniform action probabilities over ``n`` actions."""
    n = int(n)
    if n < 1:
        raise InvalidSizeError(f"an automaton needs at least one action, got n={n}")
    return np.full(n, 1.0 / n)


def reward_inplace(q, chosen, rate):
    # q_chosen <- q_chosen + rate * (1 - q_chosen); q_j <- q_j - rate * q_j.
    # Scaling every entry by (1 - rate) and then adding rate to the chosen one
    # is the same map and keeps the sum at one.
    q *= 1.0 - rate
    q[chosen] += rate


def lri_update(q, chosen, resp, rate):
    """One linear reward-inaction step.

    Parameters
    ----------
    q : array_like
        Current action probabilities.
    chosen : int
        Index of the action that was taken.
    resp : {0, 1}
        Environment response; 1 rewards ``chosen``, 0 leaves ``q`` untouched.
    rate : float
        Learning rate in (0, 1).

    Returns
    -------
    numpy.ndarray
        The updated probability vector (a copy).
    """
    out = np.array(q, dtype=float)
    chosen = int(chosen)
    if not 0 <= chosen < out.size:
        raise IndexError(f"action {chosen} out of range for {out.size} actions")
    if resp not in (REWARD, PENALTY):
        raise ValueError(f"response must be 0 or 1, got {resp!r}")
    rate = check_rate(rate)
    if resp == REWARD:
        reward_inplace(out, chosen, rate)
    return out


def top_k(q, k):
    """Indices of the ``k`` most probable actions, best first.

    Ties go to the lower index. ``k`` larger than the number of actions
    returns every action.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    order = np.argsort(-np.asarray(q, dtype=float), kind="stable")
    return order[:k].tolist()


def sample_action(q, rng):
    """Draw an action index with probability ``q[i]`` using ``rng``.

    ``rng`` is a :class:`numpy.random.Generator`.
    """
    cdf = np.cumsum(q)
    i = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(i, len(cdf) - 1)


def expand_actions(q, new_n):
    """Grow ``q`` to ``new_n`` actions.

    Each new action starts with mass ``1/new_n`` and the whole vector is then
    renormalised, so existing actions keep their relative order.
    """
    q = np.asarray(q, dtype=float)
    new_n = int(new_n)
    if new_n < q.size:
        raise InvalidSizeError(f"cannot shrink an automaton from {q.size} to {new_n} actions")
    if new_n == q.size:
        return q.copy()
    out = np.empty(new_n)
    out[: q.size] = q
    out[q.size :] = 1.0 / new_n
    out /= out.sum()
    return out
