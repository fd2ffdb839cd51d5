"""Rank-one Dunkl potential theory: kernels, ratio scans and verification suites."""

import json

from ._dunklpot import (
    DunklError,
    Params,
    from_a1_basis,
    kernel,
    run_cli,
    scan,
    to_a1_basis,
)
from ._dunklpot import verify as _verify


def verify(suite, d=2, k=1.0, n=0, seed=1):
    """Runs a verification suite and returns the parsed report."""
    return json.loads(_verify(suite, d, k, n, seed))


__all__ = [
    "DunklError",
    "Params",
    "from_a1_basis",
    "kernel",
    "run_cli",
    "scan",
    "to_a1_basis",
    "verify",
]
