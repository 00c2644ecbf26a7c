"""Online next-app prediction with a bank of linear reward-inaction automata."""

from .automaton import expand_actions, lri_update, new_uniform, sample_action, top_k
from .baselines import MFU, MRU
from .engine import AppRegistry, Engine, EngineConfig, LaunchEvent, StepOutcome
from .metrics import MetricSummary, PredictionRecord, aggregate, dcg, mrr_term, recall_at_k, time_series
from .replay import ReplayResult, RunConfig, replay
from .reports import emit_reports
from .streams import EventStream, SyntheticSpec, dominant_cycle_matrix, parse_events, synth_markov

__version__ = "0.1.0"
