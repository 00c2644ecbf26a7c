"""Online next-app predictor built from one learning automaton per app.

Row ``i`` of the bank is the automaton attached to app ``i``; its action
probabilities estimate which app is launched right after ``i``. Taken
together the rows form the app transition probability matrix.
"""

import json
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import automaton
from .errors import (
    ConfigError,
    CorruptStateError,
    InputError,
    OrderingError,
    UnknownAppError,
)

SNAPSHOT_FORMAT = "appnext.engine"
SNAPSHOT_VERSION = 1

IN_KTOP = "in-ktop"
ALWAYS_ACTUAL = "always-actual"
REWARD_SCOPES = (IN_KTOP, ALWAYS_ACTUAL)


@dataclass(frozen=True)
class LaunchEvent:
    user: str
    timestamp: int
    app: str

    def __post_init__(self):
        if not isinstance(self.timestamp, int) or isinstance(self.timestamp, bool):
            raise InputError(f"timestamp must be an integer, got {self.timestamp!r}")
        if self.timestamp < 0:
            raise InputError(f"timestamp must be >= 0, got {self.timestamp}")
        if not self.app:
            raise InputError("app name must be non-empty")


@dataclass(frozen=True)
class EngineConfig:
    """Engine hyper-parameters.

    ``delta_ms`` is the largest gap (exclusive) between two launches that
    still counts as a transition; ``None`` or ``math.inf`` disables the gate.
    """

    lam: float = 0.1
    delta_ms: float | None = 300_000
    k: int = 6
    reward_scope: str = IN_KTOP

    def __post_init__(self):
        if self.delta_ms is not None and math.isinf(self.delta_ms) and self.delta_ms > 0:
            object.__setattr__(self, "delta_ms", None)
        if not 0.0 < self.lam < 1.0:
            raise ConfigError(f"lambda must satisfy 0 < lambda < 1, got {self.lam}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k!r}")
        if self.delta_ms is not None and not self.delta_ms > 0:
            raise ConfigError(f"delta_ms must be positive, got {self.delta_ms}")
        if self.reward_scope not in REWARD_SCOPES:
            raise ConfigError(
                f"reward_scope must be one of {REWARD_SCOPES}, got {self.reward_scope!r}"
            )

    @property
    def gap_limit(self):
        return math.inf if self.delta_ms is None else float(self.delta_ms)


class StepOutcome(NamedTuple):
    """What happened when one launch was observed.

    ``offered`` and ``prev`` are ``None`` on the first launch. ``gated`` is
    set when the gap to the previous launch was not below the threshold, in
    which case nothing was learned and ``offered`` is still reported.
    """

    actual: int
    prev: int | None = None
    offered: tuple | None = None
    gated: bool = False
    rewarded: bool = False

    @property
    def hit(self):
        return self.offered is not None and self.actual in self.offered


class AppRegistry:
    """Bidirectional name <-> dense integer id map, ids in first-seen order."""

    def __init__(self, names=()):
        self._ids = {}
        self._names = []
        for name in names:
            self.add(name)

    def add(self, name):
        i = self._ids.get(name)
        if i is None:
            if not isinstance(name, str) or not name:
                raise InputError(f"app name must be a non-empty string, got {name!r}")
            i = len(self._names)
            self._ids[name] = i
            self._names.append(name)
        return i

    def id_of(self, name):
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownAppError(f"unknown app {name!r}") from None

    def get(self, name):
        return self._ids.get(name)

    def name_of(self, i):
        if not 0 <= i < len(self._names):
            raise UnknownAppError(f"unknown app id {i}")
        return self._names[i]

    @property
    def names(self):
        return tuple(self._names)

    def __contains__(self, name):
        return name in self._ids

    def __len__(self):
        return len(self._names)


class Engine:
    """A bank of automata learning an app transition matrix from launches.

    ``apps`` pre-registers a known app set with every row uniform over it.
    Apps first seen later are added by growing each row (see
    :func:`~appnext.automaton.expand_actions`).

    Instances are single-writer: serialize calls to :meth:`observe_launch`.
    """

    def __init__(self, config=None, apps=()):
        self._config = EngineConfig() if config is None else config
        self._gap = self._config.gap_limit
        self._always = self._config.reward_scope == ALWAYS_ACTUAL
        self.registry = AppRegistry(apps)
        n = len(self.registry)
        self._rows = [automaton.new_uniform(n) for _ in range(n)]
        self._prev = None
        self._prev_ts = None

    @property
    def config(self):
        return self._config

    # registration -------------------------------------------------------

    def register_app(self, name):
        """Return the id of ``name``, adding a new automaton if unseen."""
        i = self.registry.get(name)
        if i is not None:
            return i
        i = self.registry.add(name)
        n = len(self.registry)
        self._rows = [automaton.expand_actions(row, n) for row in self._rows]
        self._rows.append(automaton.new_uniform(n))
        return i

    def _resolve(self, app):
        if isinstance(app, (int, np.integer)) and not isinstance(app, bool):
            if not 0 <= app < len(self._rows):
                raise UnknownAppError(f"unknown app id {app}")
            return int(app)
        return self.registry.id_of(app)

    # learning -----------------------------------------------------------

    def observe_launch(self, event):
        """Feed one launch through the online learning step.

        The automaton of the previous app offers its top-k list; if the gap
        is below the threshold it is rewarded toward the launched app when
        that app was in the list (or always, in ``always-actual`` scope).
        """
        ts = event.timestamp
        if self._prev_ts is not None and ts < self._prev_ts:
            raise OrderingError(
                f"event at {ts} ms precedes previous event at {self._prev_ts} ms"
            )
        actual = self.registry.get(event.app)
        if actual is None:
            actual = self.register_app(event.app)
        prev = self._prev
        self._prev = actual
        if prev is None:
            self._prev_ts = ts
            return StepOutcome(actual=actual)

        row = self._rows[prev]
        offered = tuple(np.argsort(-row, kind="stable")[: self.config.k].tolist())
        gated = ts - self._prev_ts >= self._gap
        self._prev_ts = ts
        if gated:
            return StepOutcome(actual, prev, offered, True, False)
        rewarded = self._always or actual in offered
        if rewarded:
            automaton.reward_inplace(row, actual, self.config.lam)
        return StepOutcome(actual, prev, offered, False, rewarded)

    def observe_many(self, events):
        return [self.observe_launch(e) for e in events]

    # reading ------------------------------------------------------------

    def predict_next(self, prev_app, k=None):
        """Top-k successor ids for ``prev_app`` (a name or an id)."""
        i = self._resolve(prev_app)
        return automaton.top_k(self._rows[i], self.config.k if k is None else k)

    def predict_names(self, prev_app, k=None):
        return [self.registry.name_of(j) for j in self.predict_next(prev_app, k)]

    def transition_estimate(self, i, j):
        return float(self._rows[self._resolve(i)][self._resolve(j)])

    def row(self, app):
        return self._rows[self._resolve(app)].copy()

    def matrix(self):
        """The learned transition matrix as an ``(n, n)`` array."""
        n = len(self._rows)
        if n == 0:
            return np.zeros((0, 0))
        return np.vstack(self._rows)

    @property
    def n_apps(self):
        return len(self._rows)

    @property
    def previous(self):
        return self._prev, self._prev_ts

    # persistence --------------------------------------------------------

    def snapshot(self):
        """Serialize the complete engine state to UTF-8 JSON bytes.

        Floats are written with ``repr`` precision, so a restore is bit-exact.
        """
        state = {
            "format": SNAPSHOT_FORMAT,
            "version": SNAPSHOT_VERSION,
            "config": asdict(self.config),
            "apps": list(self.registry.names),
            "rows": [row.tolist() for row in self._rows],
            "prev": self._prev,
            "prev_ts": self._prev_ts,
        }
        return json.dumps(state, separators=(",", ":"), allow_nan=False).encode("utf-8")

    @classmethod
    def restore(cls, blob):
        try:
            text = blob.decode("utf-8") if isinstance(blob, (bytes, bytearray)) else blob
            state = json.loads(text)
        except UnicodeDecodeError as exc:
            raise CorruptStateError("snapshot is not valid UTF-8", exc.start) from exc
        except json.JSONDecodeError as exc:
            raise CorruptStateError(f"snapshot is not valid JSON: {exc.msg}", exc.pos) from exc
        if not isinstance(state, dict) or state.get("format") != SNAPSHOT_FORMAT:
            raise CorruptStateError("not an engine snapshot")
        if state.get("version") != SNAPSHOT_VERSION:
            raise CorruptStateError(f"unsupported snapshot version {state.get('version')!r}")
        try:
            engine = cls(EngineConfig(**state["config"]))
            apps = state["apps"]
            rows = state["rows"]
            prev, prev_ts = state["prev"], state["prev_ts"]
            for name in apps:
                engine.registry.add(name)
            n = len(apps)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise CorruptStateError(f"bank shape does not match {n} registered apps")
            engine._rows = [np.array(r, dtype=float) for r in rows]
            if (prev is None) != (prev_ts is None):
                raise CorruptStateError("inconsistent previous-launch state")
            if prev is not None and not (isinstance(prev, int) and 0 <= prev < n):
                raise CorruptStateError(f"previous app id {prev!r} out of range")
            engine._prev, engine._prev_ts = prev, prev_ts
        except CorruptStateError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptStateError(f"malformed snapshot field: {exc}") from exc
        return engine
