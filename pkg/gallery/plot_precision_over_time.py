"""
Precision over time
===================

Rolling top-1 recall of the three predictors as launches accumulate.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from appnext import EngineConfig, RunConfig, SyntheticSpec, dominant_cycle_matrix, replay, synth_markov
from appnext.engine import ALWAYS_ACTUAL

stream = synth_markov(SyntheticSpec(dominant_cycle_matrix(5, 0.7), 3000, seed=4))
cfg = RunConfig(EngineConfig(delta_ms=None, k=1, reward_scope=ALWAYS_ACTUAL), window=50)
result = replay(stream, cfg)

##############################################################################
# ``result.series`` holds, per user and predictor, ``(event_index, value)``
# pairs; it is the same data written to ``timeseries.csv``.

fig, ax = plt.subplots(figsize=(7, 3.5))
for name, points in result.series["synthetic"].items():
    x, y = zip(*points)
    ax.plot(x, y, label=name, lw=1)
ax.set_xlabel("launch")
ax.set_ylabel("rolling recall@1 (window 50)")
ax.legend()
fig.tight_layout()
fig.savefig("precision_over_time.png", dpi=120)

for name, points in result.series["synthetic"].items():
    print(name, "first", round(points[49][1], 3), "last", round(points[-1][1], 3))
