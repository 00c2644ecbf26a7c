"""
Learning a launch routine
=========================

Generate launches from a known Markov chain, replay them through the
automaton bank and the MRU / MFU baselines, and compare the scores.
"""

import numpy as np

from appnext import EngineConfig, RunConfig, SyntheticSpec, dominant_cycle_matrix, replay, synth_markov

##############################################################################
# Five apps; after app ``i`` the user opens app ``i + 1`` with probability
# 0.7 and any other app with probability 0.075.

m = dominant_cycle_matrix(5, 0.7)
print(m)
stream = synth_markov(SyntheticSpec(m, 20_000, seed=1))

##############################################################################
# Replay with the default settings: the top six apps are offered and the
# automaton is rewarded when the launched app is among them.

result = replay(stream, RunConfig(EngineConfig(delta_ms=None, k=6)))
for name, s in result.summaries.items():
    print(f"{name}: recall@6={s.recall:.3f} dcg={s.dcg:.3f} mrr={s.mrr:.3f}")

##############################################################################
# The learned matrix. Rows are indexed in first-seen order, so reorder them
# by app name before comparing with ``m``.

engine = result.engines["synthetic"]
order = [engine.registry.id_of(f"app{i}") for i in range(5)]
learned = engine.matrix()[np.ix_(order, order)]
print(np.round(learned, 3))
print("argmax agrees:", (learned.argmax(axis=1) == m.argmax(axis=1)).all())

##############################################################################
# The learned values are not the true probabilities: reward-inaction keeps
# pushing mass toward whichever app comes next, so the dominant entries sit
# near but not at 0.7. Only the ranking is meant to be recovered.
