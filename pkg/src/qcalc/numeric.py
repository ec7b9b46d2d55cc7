"""Floating-point comparison and lattice-snapping helpers.

All modules share one tolerance discipline: relative 1e-9 with an
absolute floor of 1e-12.
"""

import math

REL_TOL = 1e-9
ABS_FLOOR = 1e-12


def close(a: float, b: float, rel: float = REL_TOL) -> bool:
    return abs(a - b) <= rel * (1.0 + max(abs(a), abs(b)))


def is_zero(value: float, floor: float = ABS_FLOOR) -> bool:
    return abs(value) <= floor


def snap_floor(x: float) -> int:
    # values within ABS_FLOOR of an integer count as that integer, so
    # exact lattice points never fall into the neighbouring cell
    nearest = round(x)
    if abs(x - nearest) <= ABS_FLOOR:
        return int(nearest)
    return math.floor(x)


def nearest_int(x: float, tol: float = REL_TOL):
    """Integer nearest to x if within tol, else None."""
    nearest = round(x)
    if abs(x - nearest) <= tol:
        return int(nearest)
    return None
