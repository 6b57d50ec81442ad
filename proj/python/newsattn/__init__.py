"""Python interface to the newsattn core library.

Configuration and report values cross the boundary as JSON; the wrappers
here accept and return plain dicts.
"""

import json
import os

from . import _core
from ._core import (
    ConfigError,
    DataError,
    Error,
    ParseError,
    ami,
    cpm_quality,
    element_centric,
    leiden_cpm,
    topic_features,
    weighted_jaccard,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "ParseError",
    "agreement_summary",
    "ami",
    "cpm_quality",
    "default_pipeline_config",
    "default_synth_config",
    "element_centric",
    "leiden_cpm",
    "resolution_sweep",
    "run_benchmark",
    "run_pipeline",
    "run_stage",
    "topic_features",
    "weighted_jaccard",
    "write_synth_corpus",
]


def default_synth_config():
    return json.loads(_core.default_synth_config())


def default_pipeline_config():
    return json.loads(_core.default_pipeline_config())


def _merged(defaults, overrides):
    config = dict(defaults)
    config.update(overrides or {})
    return json.dumps(config)


def write_synth_corpus(directory, config=None):
    _core.write_synth_corpus(_merged(default_synth_config(), config), os.fspath(directory))


def run_benchmark(config=None):
    return json.loads(_core.run_benchmark(_merged(default_synth_config(), config)))


def _pipeline_json(corpus_dir, work_dir, config):
    overrides = dict(config or {})
    overrides["corpus_dir"] = os.fspath(corpus_dir)
    overrides["work_dir"] = os.fspath(work_dir)
    return json.dumps(overrides)


def run_pipeline(corpus_dir, work_dir, config=None):
    """Run every stage; returns a list of (stage, skipped) pairs."""
    return _core.run_pipeline(_pipeline_json(corpus_dir, work_dir, config))


def run_stage(stage, corpus_dir, work_dir, config=None):
    return _core.run_stage(stage, _pipeline_json(corpus_dir, work_dir, config))


def resolution_sweep(graphs, grid=None, seed=0):
    """graphs: iterable of (node_count, [(u, v, weight), ...])."""
    return json.loads(_core.resolution_sweep(list(graphs), list(grid or []), seed))


def agreement_summary(files):
    return json.loads(_core.agreement_summary([os.fspath(f) for f in files]))
