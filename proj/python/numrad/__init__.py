"""Certified numerical radius and checks of operator-matrix inequalities.

Matrices are passed as 2-D array-likes and converted to complex128.
"""
import json

import numpy as np

from ._numrad import (
    NumradError,
    default_config_json,
    is_known_bound,
    refined_young,
    sample,
)
from . import _numrad

__all__ = [
    "NumradError",
    "omega",
    "omega_p",
    "evaluate_bound",
    "run_campaign",
    "counterexamples",
    "default_config",
    "is_known_bound",
    "refined_young",
    "sample",
]


def _cm(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.complex128))


def omega(t, tol=1e-9):
    return _numrad.omega(_cm(t), tol)


def omega_p(ops, p=2.0, seed=0, stream=0, restarts=0):
    return _numrad.omega_p([_cm(t) for t in ops], p, seed, stream, restarts)


def evaluate_bound(task, matrices, r=1.0, alpha=0.5, holder_p=2.0, sign="plus", tol=1e-9):
    return _numrad.evaluate_bound(task, [_cm(m) for m in matrices], r, alpha, holder_p, sign, tol)


def default_config():
    return json.loads(default_config_json())


def run_campaign(config=None, jobs=0):
    """Runs a validity campaign; `config` holds overrides of the defaults."""
    return json.loads(_numrad.run_campaign_json(json.dumps(config or {}), jobs))


def counterexamples(seed=0, search_trials=500):
    return json.loads(_numrad.counterexamples_json(seed, search_trials))
