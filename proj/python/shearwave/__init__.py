"""Exact solutions, a finite-volume solver and verification harness for 1+1 nonlinear shear waves."""

import json as _json
import os as _os

from ._shearwave import *  # noqa: F401,F403
from ._shearwave import ShearwaveError, run_command as _run_command

__version__ = "0.1.0"


def run(command, config, out, threads=1, quiet=True):
    """Run a CLI command on a config (dict, JSON string or file path). Returns the exit code."""
    if isinstance(config, _os.PathLike) or (isinstance(config, str) and _os.path.isfile(config)):
        with open(config) as f:
            config = f.read()
    elif not isinstance(config, str):
        config = _json.dumps(config)
    return _run_command(command, config, str(out), threads, quiet)
