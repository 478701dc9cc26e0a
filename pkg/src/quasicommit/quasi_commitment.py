"""Ramsey optimal policy under quasi-commitment (0 < q <= 1).

The policy maker keeps its plan each period with probability ``q``, which
turns the discount factor into ``beta*q``. The Hamiltonian system has the
characteristic polynomial

    lam**2 - (1 + 1/(beta q) + kappa eps/(beta q)) lam + 1/(beta q) = 0

whose root inside the unit circle governs inflation persistence. The
optimal rule is ``x_t = f_pi pi_t + f_u u_t`` and the costate (Lagrange
multiplier on the Phillips curve) follows ``gamma_t = p_pi pi_t + p_u u_t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from quasicommit.calibration import DomainError, ReducedForm, StructuralParams, slope_kappa

QUASI_COMMITMENT = "quasi_commitment"
DISCRETION = "discretion"

#: Smallest credibility accepted by the root solver.
Q_MIN = 1e-12


class InvalidEigenvalueError(DomainError):
    """An eigenvalue outside (0, 1) was passed where a stable root is required."""


@dataclass(frozen=True, eq=False)
class PolicySolution:
    regime: str
    q: float
    lam: float
    f_pi: float
    f_u: float
    anchor_pi: float
    anchor_x: float
    closed_loop: np.ndarray
    p_pi: Optional[float] = None
    p_u: Optional[float] = None

    @property
    def rho(self) -> float:
        return float(self.closed_loop[1, 1])

    def to_record(self) -> dict:
        """Flat record; costate fields are omitted under discretion."""
        rec = {
            "regime": self.regime,
            "q": self.q,
            "lambda": self.lam,
            "f_pi": self.f_pi,
            "f_u": self.f_u,
        }
        if self.regime == QUASI_COMMITMENT:
            rec["p_pi"] = self.p_pi
            rec["p_u"] = self.p_u
        rec["anchor_pi"] = self.anchor_pi
        rec["anchor_x"] = self.anchor_x
        a = self.closed_loop
        rec["cl_11"] = float(a[0, 0])
        rec["cl_12"] = float(a[0, 1])
        rec["cl_21"] = float(a[1, 0])
        rec["cl_22"] = float(a[1, 1])
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> PolicySolution:
        closed_loop = np.array([[rec["cl_11"], rec["cl_12"]], [rec["cl_21"], rec["cl_22"]]])
        return cls(
            regime=rec["regime"],
            q=rec["q"],
            lam=rec["lambda"],
            f_pi=rec["f_pi"],
            f_u=rec["f_u"],
            anchor_pi=rec["anchor_pi"],
            anchor_x=rec["anchor_x"],
            closed_loop=closed_loop,
            p_pi=rec.get("p_pi"),
            p_u=rec.get("p_u"),
        )


def _polynomial_sum(kappa_eps: float, beta_q: float) -> float:
    return 1.0 + 1.0 / beta_q + kappa_eps / beta_q


def stable_root(kappa_eps: float, beta_q: float) -> float:
    """Smaller root of the characteristic polynomial, no range checks.

    The larger root is computed first and the smaller one recovered from the
    product of roots ``1/(beta q)``; subtracting the square root directly
    cancels catastrophically when ``beta q`` is tiny.
    """
    s = _polynomial_sum(kappa_eps, beta_q)
    prod = 1.0 / beta_q
    # s**2 - 4 prod expanded as a sum of non-negative terms: no cancellation
    disc = (prod - 1.0) ** 2 + kappa_eps * prod * (2.0 * (1.0 + prod) + kappa_eps * prod)
    big = 0.5 * (s + math.sqrt(disc))
    return prod / big


def limit_eigenvalue(rf: ReducedForm) -> float:
    """Limit of the inflation eigenvalue as q -> 0+, ``1/(1 + kappa eps)``."""
    return 1.0 / (1.0 + rf.kappa_eps)


def _check_q(q: float) -> None:
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0,1], got {q!r}")
    if q == 0.0:
        raise DomainError("q = 0 is discretion; use quasicommit.discretion")
    if q < Q_MIN:
        raise DomainError(
            f"q={q!r} is below {Q_MIN:g}; use limit_eigenvalue() for the q -> 0+ limit"
        )


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise InvalidEigenvalueError(f"stable eigenvalue must lie in (0,1), got {lam!r}")


def inflation_eigenvalue(rf: ReducedForm, beta: float, q: float) -> float:
    _check_q(q)
    return stable_root(rf.kappa_eps, beta * q)


def polynomial_residual(lam: float, rf: ReducedForm, beta: float, q: float) -> float:
    """Relative residual of the characteristic polynomial at ``lam``."""
    bq = beta * q
    s = _polynomial_sum(rf.kappa_eps, bq)
    terms = (lam * lam, s * lam, 1.0 / bq)
    return abs(terms[0] - terms[1] + terms[2]) / max(terms)


def rule_parameters(lam: float, rf: ReducedForm, beta: float, q: float, rho: float) -> tuple[float, float]:
    _check_lambda(lam)
    f_pi = lam / (1.0 - lam) * rf.epsilon
    f_u = -f_pi / (1.0 - beta * q * rho * lam)
    return f_pi, f_u


def rule_parameter_alt(lam: float, rf: ReducedForm, beta: float, q: float) -> float:
    """``f_pi`` written as an affine function of the eigenvalue, ``(1 - beta q lam)/kappa``."""
    return (1.0 - beta * q * lam) / rf.kappa


def costate_parameters(lam: float, beta: float, q: float, rho: float) -> tuple[float, float]:
    _check_lambda(lam)
    p_pi = 1.0 / (1.0 - lam)
    p_u = p_pi * lam / (beta * q * lam * rho - 1.0)
    return p_pi, p_u


def initial_anchor(lam: float, beta: float, q: float, rho: float, epsilon: float) -> tuple[float, float]:
    """Initial jump of inflation and output gap per unit of ``u0``."""
    _check_lambda(lam)
    anchor_pi = lam / (1.0 - beta * q * rho * lam)
    return anchor_pi, -epsilon * anchor_pi


def closed_loop_system(lam: float, rf: ReducedForm, beta: float, q: float, rho: float, f_u: float) -> np.ndarray:
    """Transition matrix of ``(pi_t, u_t)`` under the optimal rule.

    The upper-right entry ``-1/(beta q) - (kappa/(beta q)) f_u`` is evaluated
    through its equivalent form ``-lam (1 - rho)/(1 - beta q rho lam)``; the
    printed expression subtracts two numbers of size ``1/(beta q)``.
    """
    _check_lambda(lam)
    off = -lam * (1.0 - rho) / (1.0 - beta * q * rho * lam)
    return np.array([[lam, off], [0.0, rho]])


def closed_loop_offdiag_direct(rf: ReducedForm, beta: float, q: float, f_u: float) -> float:
    """Upper-right closed-loop entry from the rule coefficient, as printed."""
    bq = beta * q
    return -1.0 / bq - rf.kappa / bq * f_u


def solve_quasi_commitment(p: StructuralParams, q: float) -> PolicySolution:
    rf = slope_kappa(p)
    lam = inflation_eigenvalue(rf, p.beta, q)
    f_pi, f_u = rule_parameters(lam, rf, p.beta, q, p.rho)
    p_pi, p_u = costate_parameters(lam, p.beta, q, p.rho)
    anchor_pi, anchor_x = initial_anchor(lam, p.beta, q, p.rho, p.epsilon)
    return PolicySolution(
        regime=QUASI_COMMITMENT,
        q=q,
        lam=lam,
        f_pi=f_pi,
        f_u=f_u,
        anchor_pi=anchor_pi,
        anchor_x=anchor_x,
        closed_loop=closed_loop_system(lam, rf, p.beta, q, p.rho, f_u),
        p_pi=p_pi,
        p_u=p_u,
    )
