"""Jacobi-type derivative estimators for noisy sampled signals."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import mc_report_json, run_preset_json, run_spec_json


def run_preset(name, seed=1):
    """Run both configurations of a table preset; returns a list of report dicts."""
    return _json.loads(run_preset_json(name, seed))


def run_spec(text):
    """Run an experiment given as key = value text; returns a report dict."""
    return _json.loads(run_spec_json(text))


def mc_report(config, model, t0, trials, gamma=2.0, seed=0):
    """Monte Carlo noise error with Chebyshev bands; returns a report dict."""
    return _json.loads(mc_report_json(config, model, t0, trials, gamma, seed))
