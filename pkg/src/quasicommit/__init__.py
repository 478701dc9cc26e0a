"""Optimal monetary policy under quasi-commitment versus discretion.

Closed-form solutions, impulse responses, welfare tables and bifurcation
scans for the new-Keynesian Phillips curve with a cost-push shock.
"""

from quasicommit.calibration import (
    GALI2015,
    DomainError,
    ReducedForm,
    StructuralParams,
    kappa_eps_bounds,
    slope_kappa,
)
from quasicommit.discretion import solve_discretion
from quasicommit.quasi_commitment import (
    DISCRETION,
    QUASI_COMMITMENT,
    InvalidEigenvalueError,
    PolicySolution,
    solve_quasi_commitment,
)

__version__ = "0.1.0"


def solve(params: StructuralParams, q: float) -> PolicySolution:
    """Solve the policy problem for credibility ``q``; ``q == 0`` is discretion."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0,1], got {q!r}")
    if q == 0.0:
        return solve_discretion(params)
    return solve_quasi_commitment(params, q)


__all__ = [
    "DISCRETION",
    "DomainError",
    "GALI2015",
    "InvalidEigenvalueError",
    "PolicySolution",
    "QUASI_COMMITMENT",
    "ReducedForm",
    "StructuralParams",
    "kappa_eps_bounds",
    "slope_kappa",
    "solve",
    "solve_discretion",
    "solve_quasi_commitment",
]
