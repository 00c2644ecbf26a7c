"""Scoring of ranked next-app predictions.

Every prediction is scored on its own (recall, DCG and reciprocal rank,
each in [0, 1]) and the scores are then averaged per predictor. A miss
scores zero on all three.

Two DCG discounts are available. ``"flat-top"`` gives 1 at rank 1 and
``1/log2(rank)`` below it, so ranks 1 and 2 both score 1. ``"conventional"``
is the usual ``1/log2(rank + 1)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInputError

FALA = "FALA"
MRU = "MRU"
MFU = "MFU"
PREDICTORS = (FALA, MRU, MFU)

DCG_FLAT_TOP = "flat-top"
DCG_CONVENTIONAL = "conventional"
DCG_VARIANTS = (DCG_FLAT_TOP, DCG_CONVENTIONAL)


@dataclass(frozen=True)
class PredictionRecord:
    predictor: str
    user: str
    event_index: int
    offered: tuple
    actual: object
    position: int | None = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "offered", tuple(self.offered))
        try:
            pos = self.offered.index(self.actual) + 1
        except ValueError:
            pos = None
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class MetricSummary:
    predictor: str
    recall: float
    dcg: float
    mrr: float
    count: int

    def as_dict(self):
        return {"recall_at_k": self.recall, "dcg": self.dcg, "mrr": self.mrr, "count": self.count}


def recall_at_k(record):
    return 0 if record.position is None else 1


def dcg(record, variant=DCG_FLAT_TOP):
    pos = record.position
    if pos is None:
        return 0.0
    if variant == DCG_FLAT_TOP:
        return 1.0 if pos == 1 else 1.0 / math.log2(pos)
    if variant == DCG_CONVENTIONAL:
        return 1.0 / math.log2(pos + 1)
    raise ValueError(f"unknown DCG variant {variant!r}")


def mrr_term(record):
    return 0.0 if record.position is None else 1.0 / record.position


def aggregate(records, dcg_variant=DCG_FLAT_TOP):
    """Mean recall, DCG and reciprocal rank for each predictor.

    Returns a dict keyed by predictor name, in order of first appearance.
    """
    groups = {}
    for r in records:
        groups.setdefault(r.predictor, []).append(r)
    if not groups:
        raise EmptyInputError("cannot aggregate an empty record set")
    out = {}
    for name, rs in groups.items():
        n = len(rs)
        out[name] = MetricSummary(
            predictor=name,
            recall=math.fsum(recall_at_k(r) for r in rs) / n,
            dcg=math.fsum(dcg(r, dcg_variant) for r in rs) / n,
            mrr=math.fsum(mrr_term(r) for r in rs) / n,
            count=n,
        )
    return out


def rolling_mean(values, window):
    """Trailing mean over at most ``window`` values, one output per input."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return v
    csum = np.concatenate(([0.0], np.cumsum(v)))
    idx = np.arange(1, v.size + 1)
    lo = np.maximum(idx - window, 0)
    return (csum[idx] - csum[lo]) / (idx - lo)


def time_series(records, window):
    """Rolling recall per predictor, as ``{predictor: [(event_index, mean), ...]}``.

    Records are taken in the order given.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    groups = {}
    for r in records:
        groups.setdefault(r.predictor, []).append(r)
    out = {}
    for name, rs in groups.items():
        means = rolling_mean([recall_at_k(r) for r in rs], window)
        out[name] = [(r.event_index, float(m)) for r, m in zip(rs, means)]
    return out
