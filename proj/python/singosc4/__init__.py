"""Four-dimensional double singular oscillator toolkit."""

import json
import sys

from ._core import (
    ConvergenceError,
    DomainError,
    SectorParams,
    SystemParams,
    coefficient_table,
    energy,
    euler_states,
    ks_map,
    lambda_eigenvalue,
    polar_states,
    run_cli,
    sector,
    solve_spheroidal,
)
from ._core import run_verify as _run_verify

__all__ = [
    "ConvergenceError",
    "DomainError",
    "SectorParams",
    "SystemParams",
    "coefficient_table",
    "energy",
    "euler_states",
    "ks_map",
    "lambda_eigenvalue",
    "polar_states",
    "run_cli",
    "run_verify",
    "sector",
    "solve_spheroidal",
]


def run_verify(suites=("all",), tol=1e-8):
    """Runs the acceptance checks and returns the report as a dict."""
    return json.loads(_run_verify(list(suites), tol))


def main(argv=None):
    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
