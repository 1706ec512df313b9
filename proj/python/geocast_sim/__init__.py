"""1D beaconless geocast simulator (C++ core)."""

from ._core import (
    cdp_chain_run,
    enumerate_runs,
    grid_fill_run,
    lnis,
    run,
    sweep,
    table1_bounds,
    verify,
)

__all__ = [
    "cdp_chain_run",
    "enumerate_runs",
    "grid_fill_run",
    "lnis",
    "run",
    "sweep",
    "table1_bounds",
    "verify",
]
