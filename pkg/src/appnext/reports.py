"""Report files written after a replay.

``records.csv``
    One row per scored prediction. ``offered`` is a JSON list of app names,
    ``position`` is the 1-based rank of the actual app or empty on a miss.
``summary.json``
    Mean recall@k, DCG and MRR per predictor, plus the run configuration.
``timeseries.csv``
    Rolling recall per user and predictor.
``atpm.csv``
    The learned transition matrix of each user, one block per user; every
    block opens with a header row ``user_id,from_app,<app names>``.
"""

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .errors import SchemaError
from .metrics import DCG_FLAT_TOP, PredictionRecord, dcg, mrr_term, recall_at_k

RECORD_COLUMNS = (
    "predictor", "user_id", "event_index", "offered", "actual",
    "position", "recall", "dcg", "mrr",
)
REPORT_FILES = ("records.csv", "summary.json", "timeseries.csv", "atpm.csv")


def _csv_text(rows):
    buf = io.StringIO(newline="")
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def write_files_atomic(out_dir, contents):
    """Write ``{filename: text}`` into ``out_dir`` without leaving partial files.

    Every file goes to a temporary sibling first and is renamed into place
    only once all of them were written successfully.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, text in contents.items():
            fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.", suffix=".tmp")
            staged.append((tmp, out_dir / name))
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        for tmp, dest in staged:
            os.replace(tmp, dest)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
    return [out_dir / name for name in contents]


def records_csv(records, names_for=None, dcg_variant=DCG_FLAT_TOP):
    """``names_for(user)`` maps an app id to its name; identity when omitted."""
    rows = [RECORD_COLUMNS]
    for r in records:
        name = names_for(r.user) if names_for else (lambda a: a)
        rows.append((
            r.predictor, r.user, r.event_index,
            json.dumps([name(a) for a in r.offered], ensure_ascii=False),
            name(r.actual),
            "" if r.position is None else r.position,
            recall_at_k(r), repr(dcg(r, dcg_variant)), repr(mrr_term(r)),
        ))
    return _csv_text(rows)


def summary_json(summaries, config=None, failures=None):
    doc = {"predictors": {name: s.as_dict() for name, s in summaries.items()}}
    if config is not None:
        doc["seed"] = config.seed
        doc["config"] = {
            "lambda": config.engine.lam,
            "delta_ms": config.engine.delta_ms,
            "k": config.engine.k,
            "reward_scope": config.engine.reward_scope,
            "window": config.window,
            "predictors": list(config.predictors),
            "include_gated": config.include_gated,
            "dcg_variant": config.dcg_variant,
        }
    if failures is not None:
        doc["failures"] = dict(failures)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def timeseries_csv(series):
    """``series`` maps user -> predictor -> [(event_index, value), ...]."""
    rows = [("user_id", "event_index", "predictor", "rolling_recall")]
    for user, per_pred in series.items():
        for pred, points in per_pred.items():
            rows.extend((user, i, pred, repr(v)) for i, v in points)
    return _csv_text(rows)


def atpm_csv(engines):
    rows = []
    for user, engine in engines.items():
        names = engine.registry.names
        rows.append(("user_id", "from_app", *names))
        for name, row in zip(names, engine.matrix()):
            rows.append((user, name, *(repr(float(x)) for x in row)))
    return _csv_text(rows)


def emit_reports(result, out_dir):
    """Write the four report files for a :class:`~appnext.replay.ReplayResult`."""
    names = {u: e.registry.name_of for u, e in result.engines.items()}
    return write_files_atomic(out_dir, {
        "records.csv": records_csv(result.records, names.__getitem__, result.config.dcg_variant),
        "summary.json": summary_json(result.summaries, result.config, result.failures),
        "timeseries.csv": timeseries_csv(result.series),
        "atpm.csv": atpm_csv(result.engines),
    })


def read_records(path):
    """Load a ``records.csv`` back into :class:`PredictionRecord` objects.

    Apps stay as names; positions are recomputed from ``offered``.
    """
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in ("predictor", "user_id", "event_index", "offered", "actual")
                   if c not in (reader.fieldnames or ())]
        if missing:
            raise SchemaError(f"missing column(s) {', '.join(missing)}", 1)
        for row in reader:
            try:
                offered = json.loads(row["offered"])
                idx = int(row["event_index"])
            except (ValueError, TypeError) as exc:
                raise SchemaError(f"unparsable record: {exc}", reader.line_num) from None
            out.append(PredictionRecord(row["predictor"], row["user_id"], idx, offered, row["actual"]))
    return out

