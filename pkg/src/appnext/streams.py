"""Launch-event streams: file ingestion and synthetic Markov generation.

Input files use three fields per event, ``user_id``, ``timestamp_ms`` and
``app_name``, either as a CSV with a mandatory header or as JSON lines.
Events are grouped per user and stably sorted by timestamp on load.
"""

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .engine import LaunchEvent
from .errors import InputError, ParseError, SchemaError, SpecError

COLUMNS = ("user_id", "timestamp_ms", "app_name")
FORMATS = ("csv", "jsonl")


class EventStream:
    """Launch events grouped per user, each group in timestamp order.

    Users iterate in sorted order so downstream output does not depend on
    the order they appeared in a file.
    """

    def __init__(self, events=()):
        self._by_user = {}
        for e in events:
            self._by_user.setdefault(e.user, []).append(e)
        for evs in self._by_user.values():
            evs.sort(key=lambda e: e.timestamp)

    @property
    def users(self):
        return sorted(self._by_user)

    def for_user(self, user):
        return list(self._by_user.get(user, ()))

    def __iter__(self):
        for user in self.users:
            yield from self._by_user[user]

    def __len__(self):
        return sum(len(v) for v in self._by_user.values())

    def __eq__(self, other):
        return isinstance(other, EventStream) and list(self) == list(other)


def _parse_timestamp(value, line):
    if isinstance(value, bool):
        raise ParseError(f"timestamp_ms is not an integer: {value!r}", line)
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if isinstance(value, str):
        try:
            value = int(value.strip())
        except ValueError:
            raise ParseError(f"timestamp_ms is not an integer: {value!r}", line) from None
    if not isinstance(value, int):
        raise ParseError(f"timestamp_ms is not an integer: {value!r}", line)
    if value < 0:
        raise ParseError(f"timestamp_ms must be >= 0, got {value}", line)
    return value


def _make_event(user, ts, app, line):
    ts = _parse_timestamp(ts, line)
    if not isinstance(app, str) or not app:
        raise ParseError("app_name must be a non-empty string", line)
    return LaunchEvent(str(user), ts, app)


def _read_csv(fh):
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        raise SchemaError("missing header row", 1)
    missing = [c for c in COLUMNS if c not in reader.fieldnames]
    if missing:
        raise SchemaError(f"missing column(s) {', '.join(missing)}", 1)
    events = []
    for row in reader:
        line = reader.line_num
        if any(row[c] is None for c in COLUMNS):
            raise SchemaError("row has fewer fields than the header", line)
        events.append(_make_event(row["user_id"], row["timestamp_ms"], row["app_name"], line))
    return events


def _read_jsonl(fh):
    events = []
    for line, text in enumerate(fh, start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line) from None
        if not isinstance(obj, dict):
            raise SchemaError("each line must hold a JSON object", line)
        missing = [c for c in COLUMNS if c not in obj]
        if missing:
            raise SchemaError(f"missing key(s) {', '.join(missing)}", line)
        events.append(_make_event(obj["user_id"], obj["timestamp_ms"], obj["app_name"], line))
    return events


def parse_events(path, format="csv"):
    """Load an :class:`EventStream` from a CSV or JSONL file."""
    if format not in FORMATS:
        raise InputError(f"unknown input format {format!r}; expected one of {FORMATS}")
    with open(path, newline="", encoding="utf-8") as fh:
        events = _read_csv(fh) if format == "csv" else _read_jsonl(fh)
    return EventStream(events)


def format_events(stream, format="csv"):
    """Render a stream in the canonical input format, as text."""
    buf = io.StringIO(newline="")
    if format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for e in stream:
            w.writerow((e.user, e.timestamp, e.app))
    elif format == "jsonl":
        for e in stream:
            buf.write(json.dumps(dict(zip(COLUMNS, (e.user, e.timestamp, e.app)))) + "\n")
    else:
        raise InputError(f"unknown output format {format!r}; expected one of {FORMATS}")
    return buf.getvalue()


@dataclass(frozen=True)
class SyntheticSpec:
    transition_matrix: object
    n_events: int
    seed: int = 0
    inter_arrival_ms: int = 1000
    user: str = "synthetic"

    @property
    def n_apps(self):
        return len(self.transition_matrix)


def app_name(i):
    return f"app{i}"


def check_stochastic(matrix, tol=1e-9):
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise SpecError(f"transition matrix must be square and non-empty, got shape {m.shape}")
    for i, row in enumerate(m):
        if not np.all(np.isfinite(row)) or np.any(row < 0):
            raise SpecError(f"row {i} has negative or non-finite entries")
        if abs(row.sum() - 1.0) > tol:
            raise SpecError(f"row {i} sums to {row.sum()!r}, not 1")
    return m


def synth_markov(spec):
    """Sample a single-user launch stream from a Markov chain.

    The first app is uniform; each later app is drawn from the row of its
    predecessor. Timestamps start at 0 and advance by ``inter_arrival_ms``.
    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64).
    Apps are named ``app0 .. app{n-1}`` after their matrix index.
    """
    m = check_stochastic(spec.transition_matrix)
    if spec.n_events < 1:
        raise SpecError(f"n_events must be positive, got {spec.n_events}")
    if spec.inter_arrival_ms < 1:
        raise SpecError(f"inter_arrival_ms must be positive, got {spec.inter_arrival_ms}")
    n = m.shape[0]
    rng = np.random.default_rng(spec.seed)
    cdf = np.cumsum(m, axis=1)
    cdf[:, -1] = np.maximum(cdf[:, -1], 1.0)
    states = np.empty(spec.n_events, dtype=np.int64)
    states[0] = rng.integers(n)
    u = rng.random(spec.n_events - 1)
    for t in range(1, spec.n_events):
        states[t] = np.searchsorted(cdf[states[t - 1]], u[t - 1], side="right")
    names = [app_name(i) for i in range(n)]
    step = spec.inter_arrival_ms
    return EventStream(
        LaunchEvent(spec.user, t * step, names[s]) for t, s in enumerate(states.tolist())
    )


def dominant_cycle_matrix(n, peak=0.7):
    """Row ``i`` puts ``peak`` on app ``(i + 1) % n`` and spreads the rest evenly."""
    if n < 2:
        raise SpecError("need at least two apps")
    if not 1.0 / n < peak <= 1.0:
        raise SpecError(f"peak must lie in (1/n, 1], got {peak}")
    m = np.full((n, n), (1.0 - peak) / (n - 1))
    m[np.arange(n), (np.arange(n) + 1) % n] = peak
    return m
