"""Python bindings for the robandit C++ core."""

import json as _json

from ._robandit import *  # noqa: F401,F403
from ._robandit import run_sweep as _run_sweep

__version__ = "0.1.0"


def sweep(setting: str, **config):
    """Run an S1/S2 sweep with flat config overrides; returns the parsed report."""
    return _json.loads(_run_sweep(setting, _json.dumps(config)))
