"""
A single learning automaton
===========================

An automaton keeps one probability per action. A reward moves mass toward
the rewarded action; a penalty leaves the vector alone.
"""

import numpy as np

from appnext.automaton import expand_actions, lri_update, new_uniform, sample_action, top_k

##############################################################################
# Start from a uniform vector over four actions and reward action 2 a few
# times with learning rate 0.2.

q = new_uniform(4)
for step in range(5):
    q = lri_update(q, 2, 1, 0.2)
    print(step + 1, np.round(q, 4), "sum =", q.sum())

##############################################################################
# After ``t`` rewards the chosen probability follows
# ``1 - (1 - q0) * (1 - rate) ** t`` exactly.

print("closed form:", 1 - (1 - 0.25) * (1 - 0.2) ** 5)

##############################################################################
# A penalty changes nothing.

print(np.array_equal(lri_update(q, 0, 0, 0.2), q))

##############################################################################
# The ranked list is what gets offered to the user. Ties go to the lower
# index, which keeps replays deterministic.

print(top_k(q, 2), top_k(new_uniform(3), 3))

##############################################################################
# Sampling follows the vector; frequencies settle near ``q``.

rng = np.random.default_rng(0)
draws = [sample_action(q, rng) for _ in range(10_000)]
print(np.bincount(draws, minlength=4) / 10_000)

##############################################################################
# A newly installed app joins with mass ``1/new_n`` and the vector is
# renormalised, so what was learned keeps its order.

print(np.round(expand_actions(q, 5), 4))
