"""Discretion: the policy maker reoptimizes with certainty every period (q = 0).

With a zero effective discount factor the policy problem is static, giving
the proportional rule ``x_t = -eps pi_t``. Substituted into the forward-
looking Phillips curve this yields an inflation root ``(1 + kappa eps)/beta``
outside the unit circle. The only bounded path is the Blanchard-Kahn
eigenvector of the shock root ``rho``.

This is deliberately not the ``q -> 0+`` limit of the quasi-commitment
solver; the two regimes have different dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from quasicommit.calibration import ReducedForm, StructuralParams, slope_kappa
from quasicommit.quasi_commitment import DISCRETION, PolicySolution


@dataclass(frozen=True)
class DeterminateSolution:
    c_pi: float  # pi_t = c_pi * u_t
    c_x: float  # x_t = c_x * u_t


def discretion_rule(epsilon: float) -> tuple[float, float]:
    """Coefficients ``(f_pi, f_u)`` of the static-optimization rule."""
    return -epsilon, 0.0


def discretion_eigenvalue(rf: ReducedForm, beta: float) -> float:
    return (1.0 + rf.kappa_eps) / beta


def determinate_solution(rf: ReducedForm, beta: float, rho: float) -> DeterminateSolution:
    c_pi = 1.0 / (1.0 - beta * rho + rf.kappa_eps)
    return DeterminateSolution(c_pi=c_pi, c_x=-rf.epsilon * c_pi)


def discretion_closed_loop(rf: ReducedForm, beta: float, rho: float) -> np.ndarray:
    return np.array([[discretion_eigenvalue(rf, beta), -1.0 / beta], [0.0, rho]])


def one_period_loss(pi: float, x: float, weight_x: float) -> float:
    return 0.5 * (pi * pi + weight_x * x * x)


def solve_discretion(p: StructuralParams) -> PolicySolution:
    rf = slope_kappa(p)
    f_pi, f_u = discretion_rule(p.epsilon)
    det = determinate_solution(rf, p.beta, p.rho)
    return PolicySolution(
        regime=DISCRETION,
        q=0.0,
        lam=discretion_eigenvalue(rf, p.beta),
        f_pi=f_pi,
        f_u=f_u,
        anchor_pi=det.c_pi,
        anchor_x=det.c_x,
        closed_loop=discretion_closed_loop(rf, p.beta, p.rho),
    )
