import os

DEFAULT_TOL = 1e-9

_tol = float(os.environ.get("LORCAT_TOL", DEFAULT_TOL))


def get_tolerance():
    return _tol


def set_tolerance(tol):
    """Set the process-wide absolute tolerance. Call once at startup."""
    global _tol
    tol = float(tol)
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    _tol = tol


def resolve(tol):
    return _tol if tol is None else float(tol)
