"""Spectral solver for time-periodic 2x2 linear transport systems.

The heavy lifting lives in the compiled ``periwave._core`` extension, which
speaks JSON text. These wrappers accept problem documents as dicts or
strings and hand back plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    ConditionInapplicable,
    DegenerateProblem,
    ProblemParseError,
    boundary_determinant as _boundary_determinant,
    contraction_bound as _contraction_bound,
    determinant_lower_bound as _determinant_lower_bound,
)

__all__ = [
    "ProblemParseError",
    "DegenerateProblem",
    "ConditionInapplicable",
    "normalize_problem",
    "check",
    "solve",
    "run",
    "manufactured",
    "solve_samples",
    "boundary_determinant",
    "determinant_lower_bound",
    "contraction_bound",
]


def _as_text(problem):
    if isinstance(problem, str):
        return problem
    return _json.dumps(problem)


def normalize_problem(problem):
    """Validate a problem document; returns its normalized dict form."""
    return _json.loads(_core.normalize_problem(_as_text(problem)))


def check(problem):
    """Certificate report: nondegeneracy, coefficient conditions, contraction."""
    return _json.loads(_core.check(_as_text(problem)))


def solve(problem, max_iter=None, tol=None):
    """Solve; returns {certificate, solve, status} as a dict."""
    return _json.loads(_core.solve(_as_text(problem), max_iter, tol))


def run(problem_path, out_dir, **flags):
    """Full harness run writing report.json and CSVs; returns the report."""
    return _json.loads(_core.run(str(problem_path), str(out_dir), **flags))


def manufactured(problem, seed, tol=1e-7):
    """Manufactured-solution accuracy check on the document's coefficients."""
    return _json.loads(_core.manufactured(_as_text(problem), seed, tol))


def solve_samples(problem, nt=64):
    """Solve and synthesize u,v samples on the grid nodes over one period."""
    return _json.loads(_core.solve_samples(_as_text(problem), nt))


def boundary_determinant(problem, k):
    return _boundary_determinant(_as_text(problem), k)


def determinant_lower_bound(problem):
    return _determinant_lower_bound(_as_text(problem))


def contraction_bound(problem):
    return _contraction_bound(_as_text(problem))
