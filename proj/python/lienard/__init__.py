"""Flow curvature, slow manifolds and energy checks for Lienard systems."""

import json

from ._core import (
    AssumptionCheck,
    LienardSystem,
    ManifoldBranch,
    Polynomial,
    State,
    Trajectory,
    LimitCycle,
    check_assumptions,
    curvature_energy_residual,
    find_limit_cycle,
    H_polynomial,
    integrate,
    lie_identity_residual,
    make_system,
    phi,
    phi_dot,
    slow_branches,
    total_energy,
)
from . import _core


def classify(system, x_max=10.0):
    return json.loads(_core.classify_json(system, x_max))


def verify(system, band=1.0, margin=0.1, y_guess=1.0, cycle_tol=1e-8, max_iter=50):
    return json.loads(_core.verify_json(system, band, margin, y_guess, cycle_tol, max_iter))


def study(system, eps_list, probe=(1.6, 1.9)):
    return json.loads(_core.study_json(system, list(eps_list), tuple(probe)))


def load_system(path):
    return _core.load_system(str(path))


__all__ = [name for name in dir() if not name.startswith("_")]
