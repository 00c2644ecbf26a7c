"""Paired per-user replay of a launch stream through FALA, MRU and MFU."""

import logging
from dataclasses import dataclass, field

from .baselines import MFU, MRU
from .engine import Engine, EngineConfig
from .errors import AppNextError, ConfigError
from .metrics import DCG_FLAT_TOP, DCG_VARIANTS, FALA, PREDICTORS, PredictionRecord, aggregate, time_series
from .metrics import MFU as MFU_NAME
from .metrics import MRU as MRU_NAME

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Replay settings.

    ``include_gated`` turns transitions outside the time window into
    prediction points where FALA offers nothing (an automatic miss); by
    default they are skipped.
    """

    engine: EngineConfig = field(default_factory=EngineConfig)
    window: int = 50
    predictors: tuple = PREDICTORS
    include_gated: bool = False
    dcg_variant: str = DCG_FLAT_TOP
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "predictors", tuple(self.predictors))
        unknown = set(self.predictors) - set(PREDICTORS)
        if unknown or not self.predictors:
            raise ConfigError(f"predictors must be a non-empty subset of {PREDICTORS}")
        if self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}")
        if self.dcg_variant not in DCG_VARIANTS:
            raise ConfigError(f"dcg_variant must be one of {DCG_VARIANTS}")


@dataclass
class ReplayResult:
    records: list
    engines: dict
    summaries: dict
    series: dict
    failures: dict
    config: RunConfig

    def records_for(self, predictor, user=None):
        return [
            r for r in self.records
            if r.predictor == predictor and (user is None or r.user == user)
        ]


def replay_user(user, events, config):
    """Replay one user's events; returns ``(records, engine)``.

    At every scored transition all predictors are queried before any of
    them sees the new launch.
    """
    engine = Engine(config.engine)
    k = config.engine.k
    baselines = {MRU_NAME: MRU(), MFU_NAME: MFU()}
    wanted = config.predictors
    records = []
    for idx, ev in enumerate(events):
        actual = engine.register_app(ev.app)
        out = engine.observe_launch(ev)
        if out.prev is not None and (config.include_gated or not out.gated):
            if FALA in wanted:
                offered = () if out.gated else out.offered
                records.append(PredictionRecord(FALA, user, idx, offered, actual))
            for name in wanted:
                if name in baselines:
                    records.append(
                        PredictionRecord(name, user, idx, baselines[name].predict(k), actual)
                    )
        for b in baselines.values():
            b.observe(actual)
    return records, engine


def replay(stream, config=None):
    """Replay every user of ``stream`` independently.

    A user whose replay raises is recorded in ``failures`` and contributes no
    records; the other users are unaffected.
    """
    config = RunConfig() if config is None else config
    records, engines, failures, series = [], {}, {}, {}
    for user in stream.users:
        try:
            user_records, engine = replay_user(user, stream.for_user(user), config)
        except AppNextError as exc:
            log.warning("replay failed for user %s: %s", user, exc)
            failures[user] = str(exc)
            continue
        records.extend(user_records)
        engines[user] = engine
        series[user] = time_series(user_records, config.window)
    summaries = aggregate(records, config.dcg_variant) if records else {}
    return ReplayResult(records, engines, summaries, series, failures, config)
