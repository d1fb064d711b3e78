"""Numerical checks for lightlike submanifolds of statistical manifolds."""

import json
import os

from ._core import (
    FixtureError,
    GeometryError,
    ScenarioError,
    __version__,
    list_builtins,
    list_checks,
    run_json,
)

__all__ = [
    "FixtureError",
    "GeometryError",
    "ScenarioError",
    "__version__",
    "list_builtins",
    "list_checks",
    "run",
]


def run(scenario, *, tol=None, fd_step=None, seed=None, samples=None, threads=None, timing=True):
    """Run a scenario and return the report as a dict.

    `scenario` is a dict, a JSON string or a path to a JSON file. Keyword
    arguments override the scenario like the command-line flags do.
    """
    if isinstance(scenario, dict):
        text = json.dumps(scenario)
    elif isinstance(scenario, os.PathLike) or (isinstance(scenario, str) and not scenario.lstrip().startswith("{")):
        with open(scenario, encoding="utf-8") as f:
            text = f.read()
    else:
        text = scenario
    return json.loads(
        run_json(text, tol=tol, fd_step=fd_step, seed=seed, samples=samples, threads=threads, timing=timing)
    )
