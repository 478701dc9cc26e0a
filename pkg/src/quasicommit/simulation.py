"""Deterministic impulse responses and anchor-misspecification experiments."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from quasicommit.calibration import DomainError, ReducedForm
from quasicommit.quasi_commitment import DISCRETION, QUASI_COMMITMENT, PolicySolution

DEFAULT_HORIZON = 12
WELFARE_HORIZON = 200


@dataclass(frozen=True, eq=False)
class IrfPath:
    horizon: int
    pi: np.ndarray
    x: np.ndarray
    u: np.ndarray
    meta: dict = field(default_factory=dict)


def impulse_response(
    sol: PolicySolution,
    horizon: int = DEFAULT_HORIZON,
    u0: float = 1.0,
    anchor_scale: float = 1.0,
) -> IrfPath:
    """Path of inflation, output gap and shock after an initial cost-push shock.

    Inflation starts at ``anchor_scale * anchor_pi * u0`` and then follows the
    closed-loop matrix; the output gap comes from the policy rule.
    """
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon!r}")
    if not anchor_scale > 0:
        raise DomainError(f"anchor_scale must be > 0, got {anchor_scale!r}")
    a11, a12 = sol.closed_loop[0]
    rho = sol.rho
    t = np.arange(horizon + 1)
    u = u0 * rho**t
    pi0 = anchor_scale * sol.anchor_pi * u0

    if abs(a11) < 1.0:
        pi = np.empty(horizon + 1)
        pi[0] = pi0
        for k in range(horizon):
            pi[k + 1] = a11 * pi[k] + a12 * u[k]
    else:
        # Unstable root: iterating would amplify rounding at rate a11/rho, so
        # use the modal form pi_t = c u_t + (pi_0 - c u_0) a11**t, where c is
        # the slope of the shock eigenvector.
        if sol.regime == DISCRETION and anchor_scale == 1.0:
            pi = sol.anchor_pi * u
        else:
            c = a12 / (rho - a11)
            pi = c * u + (pi0 - c * u0) * a11**t
            pi[0] = pi0
    x = sol.f_pi * pi + sol.f_u * u
    meta = {
        "regime": sol.regime,
        "q": sol.q,
        "anchor_pi": sol.anchor_pi,
        "anchor_scale": anchor_scale,
        "u0": u0,
    }
    return IrfPath(horizon=horizon, pi=pi, x=x, u=u, meta=meta)


@dataclass(frozen=True, eq=False)
class RobustnessResult:
    baseline: IrfPath
    perturbed: IrfPath
    rel_gap: np.ndarray
    error: float


def robustness_experiment(
    sol: PolicySolution,
    horizon: int = DEFAULT_HORIZON,
    u0: float = 1.0,
    error: float = 0.1,
) -> RobustnessResult:
    """Compare the optimal path with one whose initial anchor is off by ``error``.

    The gap is measured relative to the optimal initial inflation ``|pi_0|``.
    """
    if not abs(error) < 1.0:
        raise DomainError(f"|error| must be < 1, got {error!r}")
    baseline = impulse_response(sol, horizon, u0)
    perturbed = impulse_response(sol, horizon, u0, anchor_scale=1.0 + error)
    scale = abs(baseline.pi[0])
    if scale == 0.0:
        rel_gap = np.zeros(horizon + 1)
    else:
        rel_gap = np.abs(perturbed.pi - baseline.pi) / scale
    return RobustnessResult(baseline=baseline, perturbed=perturbed, rel_gap=rel_gap, error=error)


def euler_residuals(path: IrfPath, sol: PolicySolution, epsilon: float) -> np.ndarray:
    """Residuals of the policy maker's Euler equation ``x_t = x_{t-1} - eps pi_t``.

    Element 0 is the transversality residual ``x_0 + eps pi_0``; element
    ``t >= 1`` is ``x_t - x_{t-1} + eps pi_t``.
    """
    if sol.regime != QUASI_COMMITMENT:
        raise DomainError("Euler equation applies to quasi-commitment paths only")
    if path.meta.get("anchor_scale", 1.0) != 1.0:
        raise DomainError("Euler residuals require the optimal anchor (anchor_scale=1.0)")
    res = np.empty_like(path.pi)
    res[0] = path.x[0] + epsilon * path.pi[0]
    res[1:] = path.x[1:] - path.x[:-1] + epsilon * path.pi[1:]
    return res


def phillips_residuals(path: IrfPath, rf: ReducedForm, beta: float) -> np.ndarray:
    """``pi_t - kappa x_t - beta pi_{t+1} - u_t`` for ``t < horizon`` (full commitment form)."""
    return path.pi[:-1] - rf.kappa * path.x[:-1] - beta * path.pi[1:] - path.u[:-1]


def write_path_csv(
    out: TextIO | str | Path,
    path: IrfPath,
    rel_gap: Optional[Sequence[float]] = None,
) -> None:
    """Write ``t,pi,x,u[,rel_gap]`` rows with round-trip-safe floats."""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_path_csv(fh, path, rel_gap)
        return
    writer = csv.writer(out, lineterminator="\n")
    header = ["t", "pi", "x", "u"]
    if rel_gap is not None:
        header.append("rel_gap")
    writer.writerow(header)
    for t in range(path.horizon + 1):
        row = [str(t), repr(float(path.pi[t])), repr(float(path.x[t])), repr(float(path.u[t]))]
        if rel_gap is not None:
            row.append(repr(float(rel_gap[t])))
        writer.writerow(row)


def read_path_csv(src: str | Path) -> dict[str, np.ndarray]:
    with open(src, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    cols = rows[0].keys() if rows else ()
    out = {c: np.array([float(r[c]) for r in rows]) for c in cols}
    if "t" in out:
        out["t"] = out["t"].astype(int)
    return out


def path_to_dict(path: IrfPath, rel_gap: Optional[Sequence[float]] = None) -> dict:
    d = {
        "horizon": path.horizon,
        "meta": path.meta,
        "pi": [float(v) for v in path.pi],
        "x": [float(v) for v in path.x],
        "u": [float(v) for v in path.u],
    }
    if rel_gap is not None:
        d["rel_gap"] = [float(v) for v in rel_gap]
    return d
