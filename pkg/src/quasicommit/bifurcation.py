"""Grid scans over credibility and elasticity, and the ``verify`` claim suite.

The saddle-node bifurcation shows up as a jump of the inflation eigenvalue
from below ``1/(1 + kappa_max)`` for every ``q > 0`` to above
``(1 + kappa_max)/beta`` at ``q = 0``. Everything here is numerical grid
evidence; no symbolic work.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, TextIO

import numpy as np

from quasicommit import solve
from quasicommit.calibration import StructuralParams, kappa_eps_bounds, slope_kappa
from quasicommit.discretion import discretion_rule, one_period_loss
from quasicommit.quasi_commitment import (
    costate_parameters,
    polynomial_residual,
    rule_parameter_alt,
    stable_root,
)

Q_GRID = (0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.8, 1.0)
EPS_GRID = (1.001, 1.5, 2.35, 6.0, 12.0, 50.0, 500.0, 3193.0)
FD_Q_GRID = (1e-7, 1e-4, 1e-2, 0.1, 0.3, 0.5, 0.8, 1.0)
FD_EPS_GRID = (1.5, 2.35, 6.0, 50.0)
FD_STEP = 1e-6

STABLE = "stable"
UNSTABLE = "unstable"


@dataclass(frozen=True, eq=False)
class ScanResult:
    q_grid: tuple[float, ...]
    eps_grid: tuple[float, ...]
    lam: np.ndarray  # shape (len(q_grid), len(eps_grid))
    f_pi: np.ndarray
    anchor_pi: np.ndarray
    regime_class: np.ndarray
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def grid(self) -> list[tuple[float, float]]:
        return [(q, e) for q in self.q_grid for e in self.eps_grid]


def _strictly_monotone(values: Sequence[float], sign: int) -> bool:
    d = np.diff(np.asarray(values, dtype=float))
    return bool(np.all(sign * d > 0))


def eigenvalue_scan(
    p: StructuralParams,
    q_grid: Sequence[float] = Q_GRID,
    eps_grid: Sequence[float] = EPS_GRID,
) -> ScanResult:
    """Solve every ``(q, eps)`` point; grids are sorted ascending."""
    qs = tuple(sorted(float(q) for q in q_grid))
    es = tuple(sorted(float(e) for e in eps_grid))
    shape = (len(qs), len(es))
    lam = np.empty(shape)
    f_pi = np.empty(shape)
    anchor = np.empty(shape)
    regime = np.empty(shape, dtype=object)
    for i, q in enumerate(qs):
        for j, e in enumerate(es):
            sol = solve(p.with_epsilon(e), q)
            lam[i, j] = sol.lam
            f_pi[i, j] = sol.f_pi
            anchor[i, j] = sol.anchor_pi
            regime[i, j] = STABLE if abs(sol.lam) < 1.0 else UNSTABLE

    pos = [i for i, q in enumerate(qs) if q > 0]
    zero = [i for i, q in enumerate(qs) if q == 0]
    flags = {
        "regime_matches_credibility": all(
            regime[i, j] == (STABLE if qs[i] > 0 else UNSTABLE) for i in range(len(qs)) for j in range(len(es))
        ),
        "lambda_decreasing_in_q": all(_strictly_monotone(lam[pos, j], -1) for j in range(len(es))),
        "lambda_decreasing_in_eps_qc": all(_strictly_monotone(lam[i], -1) for i in pos),
        "lambda_increasing_in_eps_disc": all(_strictly_monotone(lam[i], +1) for i in zero),
    }
    return ScanResult(qs, es, lam, f_pi, anchor, regime, flags)


def bound_report(p: StructuralParams) -> tuple[float, float, float, float]:
    """Elasticity-uniform bounds on the inflation eigenvalue.

    Returns ``(lambda_min, lambda_sup_qc, lambda_inf_disc, lambda_sup_disc)``:
    quasi-commitment roots lie in ``(lambda_min, lambda_sup_qc)`` and the
    discretion root in ``(lambda_inf_disc, lambda_sup_disc)``.
    """
    kmax, ksup = kappa_eps_bounds(p)
    lam_min = stable_root(ksup, p.beta)
    return lam_min, 1.0 / (1.0 + kmax), (1.0 + kmax) / p.beta, (1.0 + ksup) / p.beta


@dataclass(frozen=True, eq=False)
class AnchorTable:
    q_grid: tuple[float, ...]
    eps_grid: tuple[float, ...]
    anchor_pi: np.ndarray  # shape (len(q_grid), len(eps_grid))
    anchor_disc: np.ndarray  # shape (len(eps_grid),)
    increasing_in_q: bool
    decreasing_in_eps: bool
    below_discretion: bool


def anchor_comparison(
    p: StructuralParams,
    q_grid: Sequence[float] = Q_GRID,
    eps_grid: Sequence[float] = EPS_GRID,
) -> AnchorTable:
    qs = tuple(sorted(float(q) for q in q_grid if q > 0))
    es = tuple(sorted(float(e) for e in eps_grid))
    anchors = np.array([[solve(p.with_epsilon(e), q).anchor_pi for e in es] for q in qs])
    disc = np.array([solve(p.with_epsilon(e), 0.0).anchor_pi for e in es])
    return AnchorTable(
        q_grid=qs,
        eps_grid=es,
        anchor_pi=anchors,
        anchor_disc=disc,
        increasing_in_q=all(_strictly_monotone(anchors[:, j], +1) for j in range(len(es))),
        decreasing_in_eps=all(_strictly_monotone(anchors[i], -1) for i in range(len(qs)))
        and _strictly_monotone(disc, -1),
        below_discretion=bool(np.all(anchors < disc[None, :])),
    )


def write_scan_csv(out: TextIO | str | Path, scan: ScanResult) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_scan_csv(fh, scan)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "epsilon", "lambda", "f_pi", "anchor_pi", "regime"])
    for i, q in enumerate(scan.q_grid):
        for j, e in enumerate(scan.eps_grid):
            writer.writerow([repr(q), repr(e), repr(float(scan.lam[i, j])), repr(float(scan.f_pi[i, j])),
                             repr(float(scan.anchor_pi[i, j])), scan.regime_class[i, j]])


# --- finite differences ---------------------------------------------------

def _lam_qe(p: StructuralParams, q: float, eps: float) -> float:
    """Eigenvalue as a smooth function of ``(q, eps)``; q slightly above 1 is allowed."""
    rf = slope_kappa(p.with_epsilon(eps))
    if q == 0.0:
        return (1.0 + rf.kappa_eps) / p.beta
    return stable_root(rf.kappa_eps, p.beta * q)


def _f_pi_qe(p: StructuralParams, q: float, eps: float) -> float:
    if q == 0.0:
        return discretion_rule(eps)[0]
    lam = _lam_qe(p, q, eps)
    return lam / (1.0 - lam) * eps


def _anchor_qe(p: StructuralParams, q: float, eps: float) -> float:
    rf = slope_kappa(p.with_epsilon(eps))
    if q == 0.0:
        return 1.0 / (1.0 - p.beta * p.rho + rf.kappa_eps)
    lam = stable_root(rf.kappa_eps, p.beta * q)
    return lam / (1.0 - p.beta * q * p.rho * lam)


def central_difference(f: Callable[[float], float], x: float, rel_step: float = FD_STEP) -> float:
    h = rel_step * abs(x)
    return (f(x + h) - f(x - h)) / (2.0 * h)


def derivative_grid(
    p: StructuralParams,
    func: Callable[[StructuralParams, float, float], float],
    wrt: str,
    q_grid: Sequence[float] = FD_Q_GRID,
    eps_grid: Sequence[float] = FD_EPS_GRID,
) -> np.ndarray:
    """Central differences of ``func(p, q, eps)`` with respect to ``wrt`` ('q' or 'eps')."""
    out = np.empty((len(q_grid), len(eps_grid)))
    for i, q in enumerate(q_grid):
        for j, e in enumerate(eps_grid):
            if wrt == "q":
                out[i, j] = central_difference(lambda v: func(p, v, e), q)
            else:
                out[i, j] = central_difference(lambda v: func(p, q, v), e)
    return out


# --- verify ---------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _static_argmin(pi_intercept: float, kappa: float, weight_x: float) -> float:
    """Brute-force minimizer of the one-period loss along ``pi = kappa x + c``."""
    xs = np.linspace(-20.0, 20.0, 400_001)
    loss = one_period_loss(kappa * xs + pi_intercept, xs, weight_x)
    x_best = xs[int(np.argmin(loss))]
    # refine on a local grid
    fine = np.linspace(x_best - 2e-4, x_best + 2e-4, 40_001)
    loss = one_period_loss(kappa * fine + pi_intercept, fine, weight_x)
    return float(fine[int(np.argmin(loss))])


def verify(
    p: StructuralParams,
    q_grid: Sequence[float] = Q_GRID,
    eps_grid: Sequence[float] = EPS_GRID,
) -> list[Claim]:
    """Check the bound, sign and monotonicity claims on a grid; one Claim each."""
    claims: list[Claim] = []

    def add(name: str, ok: bool, detail: str) -> None:
        claims.append(Claim(name, bool(ok), detail))

    scan = eigenvalue_scan(p, q_grid, eps_grid)
    qs, es = np.array(scan.q_grid), np.array(scan.eps_grid)
    pos = qs > 0
    zero = qs == 0
    lam_qc = scan.lam[pos]
    lam_d = scan.lam[zero]
    lam_min, lam_sup_qc, lam_inf_d, lam_sup_d = bound_report(p)

    # slope
    rfs = [slope_kappa(p.with_epsilon(e)) for e in es]
    kappas = [rf.kappa for rf in rfs]
    kes = [rf.kappa_eps for rf in rfs]
    kmax, ksup = kappa_eps_bounds(p)
    add("kappa.decreasing_in_eps", _strictly_monotone(kappas, -1),
        f"kappa from {max(kappas):.6g} to {min(kappas):.6g}")
    add("kappa.kappa_eps_bounds",
        _strictly_monotone(kes, +1) and kmax < min(kes) and max(kes) < ksup,
        f"{kmax:.6g} < [{min(kes):.6g}, {max(kes):.6g}] < {ksup:.6g}")

    # eigenvalue bounds and the saddle-node gap
    add("prop4.i.bounds_quasi_commitment",
        lam_min < lam_qc.min() and lam_qc.max() < lam_sup_qc < 1.0,
        f"{lam_min:.6g} < [{lam_qc.min():.6g}, {lam_qc.max():.6g}] < {lam_sup_qc:.6g} < 1")
    if lam_d.size:
        add("prop4.i.bounds_discretion",
            1.0 < lam_inf_d < lam_d.min() and lam_d.max() < lam_sup_d,
            f"1 < {lam_inf_d:.6g} < [{lam_d.min():.6g}, {lam_d.max():.6g}] < {lam_sup_d:.6g}")
        i_small = int(np.argmax(pos))  # smallest positive q (grid is sorted)
        lam_small = scan.lam[i_small]
        lim = 1.0 / (1.0 + np.array(kes))
        jump = lam_d[0] - lam_small
        add("prop4.i.saddle_node_gap",
            bool(np.all(np.abs(lam_small - lim) < 1e-4) and np.all(lim < 1.0)
                 and np.all(jump > (1.0 + np.array(kes)) / p.beta - lim - 1e-4)),
            f"q={qs[i_small]:g}: max|lambda - 1/(1+kappa eps)|={np.abs(lam_small - lim).max():.2e}, "
            f"min jump={jump.min():.6g}")
    add("prop4.regime_classification", scan.flags["regime_matches_credibility"],
        "stable for every q>0, unstable at q=0")

    # monotonicity of the eigenvalue
    dlam_dq = derivative_grid(p, _lam_qe, "q")
    dlam_de = derivative_grid(p, _lam_qe, "eps")
    dlam0_de = np.array([central_difference(lambda v: _lam_qe(p, 0.0, v), e) for e in FD_EPS_GRID])
    add("prop4.ii.lambda_decreasing_in_q",
        scan.flags["lambda_decreasing_in_q"] and np.all(dlam_dq < 0),
        f"max dlambda/dq={dlam_dq.max():.3e}")
    add("prop4.iii.lambda_eps_slope",
        scan.flags["lambda_decreasing_in_eps_qc"] and np.all(dlam_de < 0)
        and (not lam_d.size or scan.flags["lambda_increasing_in_eps_disc"]) and np.all(dlam0_de > 0),
        f"max dlambda/deps (q>0)={dlam_de.max():.3e}, min dlambda/deps (q=0)={dlam0_de.min():.3e}")

    # rule parameter
    fp_qc = scan.f_pi[pos]
    fp_d = scan.f_pi[zero]
    add("prop5.rule_sign_gap",
        fp_qc.min() > 0.0 and (not fp_d.size or (fp_d.max() < -1.0 and np.allclose(fp_d[0], -es))),
        f"min F_pi(q>0)={fp_qc.min():.6g}, max F_pi(0)={fp_d.max() if fp_d.size else float('nan'):.6g}")
    dfp_de = derivative_grid(p, _f_pi_qe, "eps")
    dfp_dq = derivative_grid(p, _f_pi_qe, "q")
    add("prop5.rule_monotone",
        np.all(dfp_de > 0) and np.all(dfp_dq < 0) and _strictly_monotone([-e for e in es], -1),
        f"min dF_pi/deps={dfp_de.min():.3e}, max dF_pi/dq={dfp_dq.max():.3e}")

    # anchors
    anchors = anchor_comparison(p, q_grid, eps_grid)
    da_de = derivative_grid(p, _anchor_qe, "eps")
    da_dq = derivative_grid(p, _anchor_qe, "q")
    add("prop6.i.anchor_decreasing_in_eps", anchors.decreasing_in_eps and np.all(da_de < 0),
        f"max danchor/deps={da_de.max():.3e}")
    add("prop6.ii.anchor_increasing_in_q", anchors.increasing_in_q and np.all(da_dq > 0),
        f"min danchor/dq={da_dq.min():.3e}")
    gap = anchors.anchor_disc[None, :] - anchors.anchor_pi
    add("prop6.iii.anchor_below_discretion", anchors.below_discretion,
        f"min gap={gap.min():.6g}")

    # closed-form identities on the positive-q grid
    poly, sums, prods, link, fid, fu_id, feedback, ineq = [], [], [], [], [], [], [], []
    for q in qs[pos]:
        for rf in rfs:
            bq = p.beta * q
            lam = stable_root(rf.kappa_eps, bq)
            other = 1.0 / (bq * lam)
            s = 1.0 + 1.0 / bq + rf.kappa_eps / bq
            poly.append(polynomial_residual(lam, rf, p.beta, q))
            sums.append(abs(lam + other - s) / s)
            prods.append(abs(lam * other * bq - 1.0))
            f_pi = lam / (1.0 - lam) * rf.epsilon
            f_u = -f_pi / (1.0 - bq * p.rho * lam)
            p_pi, p_u = costate_parameters(lam, p.beta, q, p.rho)
            link.append(abs(lam - (1.0 / bq - rf.kappa / bq * f_pi)) * bq)
            alts = (rf.epsilon * (p_pi - 1.0), rf.epsilon * lam * p_pi, rule_parameter_alt(lam, rf, p.beta, q))
            fid.append(max(abs(a - f_pi) / abs(f_pi) for a in alts))
            fu_id.append(abs(rf.epsilon * p_u - f_u) / abs(f_u))
            feedback.append(-rf.kappa / bq * f_pi)
            ineq.append((1.0 + rf.kappa_eps) * lam)
    add("roots.polynomial_residual", max(poly) < 1e-12, f"max relative residual={max(poly):.2e}")
    add("roots.sum_product", max(sums) < 1e-10 and max(prods) < 1e-10,
        f"max sum err={max(sums):.2e}, max product err={max(prods):.2e}")
    add("roots.eigenvalue_rule_link", max(link) < 1e-10, f"max scaled err={max(link):.2e}")
    add("rule.f_pi_identities", max(fid) < 1e-10, f"max relative err={max(fid):.2e}")
    add("rule.f_u_identity", max(fu_id) < 1e-10, f"max relative err={max(fu_id):.2e}")
    add("rule.negative_feedback", max(feedback) < 0.0, f"max -kappa F_pi/(beta q)={max(feedback):.6g}")
    add("appendix.functional_inequality", max(ineq) < 1.0, f"max (1+kappa eps) lambda={max(ineq):.6g}")

    # discretion as static optimization
    rf = slope_kappa(p)
    errs = []
    for c in (-1.0, -0.3, 0.2, 0.7, 1.5):
        x_star = _static_argmin(c, rf.kappa, rf.weight_x)
        pi_star = rf.kappa * x_star + c
        errs.append(abs(x_star - (-p.epsilon * pi_star)))
    add("prop1.static_optimization", max(errs) < 1e-4, f"max |x - (-eps pi)|={max(errs):.2e}")
    return claims


def verify_passed(claims: Sequence[Claim]) -> bool:
    return all(c.passed for c in claims)
