"""The square-root interval map: 2-shadowing without small-diameter shadowing.

The map fixes 0, 1/2 and 1, pushes every other point upward, and keeps
[0, 1/2) forward invariant.  Ascending pseudo-orbits therefore climb from 0
to 1 while any set of diameter below 1/4 that starts near 0 stays below 1/2
forever.  All real-interval claims are certified on explicit grids with
stated margins; the map's monotonicity is what makes that sound.
"""

from __future__ import annotations

import math

import numpy as np


def evaluate(x):
    """The piecewise map sqrt(2x)/2 on [0, 1/2), 1/2 + sqrt(2x-1)/2 on [1/2, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"point {x} outside [0, 1]")
    if x < 0.5:
        return 0.5 * math.sqrt(2.0 * x)
    return 0.5 + 0.5 * math.sqrt(2.0 * x - 1.0)


def ascending_pseudo_orbit(delta):
    """x_0 = 0, x_{i+1} = min(1, f(x_i) + 0.9 delta), stopping at the first 1.

    The 0.9 headroom keeps the step strictly below delta under floating
    point; since f(x) >= x the orbit gains at least 0.9 delta per step, so
    it reaches 1 in at most ceil(1 / (0.9 delta)) steps.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    xs = [0.0]
    while xs[-1] < 1.0:
        xs.append(min(1.0, evaluate(xs[-1]) + 0.9 * delta))
    return xs


def neighborhood_failure_certificate(epsilon=0.25, grid_step=1e-4):
    """Grid-certify that [0, 2 epsilon) is trapped below 1/2.

    Only stated for epsilon <= 1/4, where [0, 2 epsilon) sits inside
    [0, 1/2).  Sweeps the grid, checks monotonicity and records the margin
    1/2 - max f; any diameter-epsilon set containing a point within epsilon
    of 0 then stays in [0, 1/2) forever and never comes epsilon-close to 1.
    """
    if not 0.0 < epsilon <= 0.25:
        raise ValueError("the trapping argument needs 0 < epsilon <= 1/4")
    if grid_step <= 0:
        raise ValueError("grid step must be positive")
    top = 2.0 * epsilon
    grid = np.arange(0.0, top, grid_step)
    values = np.where(grid < 0.5, 0.5 * np.sqrt(2.0 * grid),
                      0.5 + 0.5 * np.sqrt(np.maximum(2.0 * grid - 1.0, 0.0)))
    if np.any(np.diff(values) < 0):
        raise ValueError("grid too coarse: monotonicity check failed")
    max_image = float(values.max())
    margin = 0.5 - max_image
    if margin <= 0:
        raise ValueError("grid too coarse to certify the strict trapping margin")
    return {
        "kind": "neighborhood_failure",
        "epsilon": epsilon,
        "grid_step": grid_step,
        "points_checked": int(grid.size),
        "max_image": max_image,
        "margin": margin,
        "monotone_on_grid": True,
        "conclusion": (
            "any set of diameter < epsilon containing a point within epsilon of 0 "
            "remains in [0, 1/2) under iteration and never comes within epsilon of 1"
        ),
    }


def grid_shadow_search(pseudo_orbit, epsilon, grid_step=1e-3, set_size=2,
                       budget=10**7):
    """Exhaustive grid search for a shadowing set of at most set_size points.

    No diameter constraint: this is plain set-shadowing.  Returns the first
    witness in lex order over the grid, or None after exhausting all
    candidates.  Orbits of the grid are precomputed, so the pair search is a
    boolean cover problem.
    """
    if set_size not in (1, 2):
        raise ValueError("grid search supports set sizes 1 and 2")
    xs = np.asarray(pseudo_orbit, dtype=float)
    grid = np.arange(0.0, 1.0 + grid_step / 2, grid_step)
    if grid.size ** set_size > budget:
        raise ValueError(f"{grid.size ** set_size} candidates exceed the budget {budget}")
    orbits = np.empty((grid.size, xs.size))
    cur = grid.copy()
    for i in range(xs.size):
        orbits[:, i] = cur
        cur = np.where(cur < 0.5, 0.5 * np.sqrt(2.0 * cur),
                       0.5 + 0.5 * np.sqrt(np.maximum(2.0 * cur - 1.0, 0.0)))
    ok = np.abs(orbits - xs[None, :]) < epsilon  # ok[z, i]
    covers_all = ok.all(axis=1)
    if covers_all.any():
        z = float(grid[int(np.argmax(covers_all))])
        return {"witness": [z] if set_size == 1 else [z, z], "grid_step": grid_step,
                "epsilon": epsilon, "orbit_length": int(xs.size)}
    if set_size == 1:
        return {"witness": None, "grid_step": grid_step, "epsilon": epsilon,
                "orbit_length": int(xs.size)}
    for zi in range(grid.size):
        need = ~ok[zi]
        if not need.any():  # pragma: no cover - handled by covers_all
            continue
        partner = ok[:, need].all(axis=1)
        if partner.any():
            zj = int(np.argmax(partner))
            return {"witness": [float(grid[zi]), float(grid[zj])],
                    "grid_step": grid_step, "epsilon": epsilon,
                    "orbit_length": int(xs.size)}
    return {"witness": None, "grid_step": grid_step, "epsilon": epsilon,
            "orbit_length": int(xs.size)}
