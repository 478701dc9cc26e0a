"""Discounted welfare losses and the credibility/elasticity welfare table.

Welfare is always discounted with the household factor ``beta`` (not the
policy maker's ``beta*q``) so that regimes are comparable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from quasicommit import solve
from quasicommit.calibration import DomainError, ReducedForm, StructuralParams, slope_kappa
from quasicommit.simulation import WELFARE_HORIZON, IrfPath, impulse_response

TABLE_EPSILONS = (3193.0, 6.0, 2.35, 1.001)
TABLE_QS = (1.0, 0.8, 0.5, 0.1, 1e-7, 0.0)


def welfare_simulated(path: IrfPath, beta_household: float, weight_x: float) -> float:
    """``-1/2 sum_t beta**t (pi_t**2 + weight_x x_t**2)`` over the whole path."""
    if path.horizon < 1:
        raise DomainError(f"welfare needs horizon >= 1, got {path.horizon!r}")
    disc = beta_household ** np.arange(path.horizon + 1)
    return -0.5 * float(np.sum(disc * (path.pi**2 + weight_x * path.x**2)))


def welfare_discretion_closed_form(rf: ReducedForm, beta: float, rho: float, u0: float) -> float:
    ke = rf.kappa_eps
    return -0.5 * (1.0 + ke) / (1.0 + ke - beta * rho) ** 2 * u0**2 / (1.0 - beta * rho**2)


@dataclass
class WelfareCell:
    q: float
    W: Optional[float]
    w: Optional[float]
    error: Optional[str] = None


@dataclass
class WelfareRow:
    epsilon: float
    kappa: float
    weight_x: float
    W_commit: Optional[float]
    entries: list[WelfareCell] = field(default_factory=list)

    def cell(self, q: float) -> WelfareCell:
        for c in self.entries:
            if c.q == q:
                return c
        raise KeyError(q)


@dataclass
class WelfareTable:
    rows: list[WelfareRow]
    periods: int
    u0: float

    def row(self, epsilon: float) -> WelfareRow:
        for r in self.rows:
            if r.epsilon == epsilon:
                return r
        raise KeyError(epsilon)


def _welfare_at(p: StructuralParams, q: float, periods: int, u0: float, weight_x: float) -> float:
    path = impulse_response(solve(p, q), periods, u0)
    return welfare_simulated(path, p.beta, weight_x)


def welfare_table(
    p: StructuralParams,
    eps_list: Sequence[float] = TABLE_EPSILONS,
    q_list: Sequence[float] = TABLE_QS,
    T: int = WELFARE_HORIZON,
    u0: float = 1.0,
) -> WelfareTable:
    """Welfare ``W(q)`` and relative loss ``w(q) = W(q)/W(1) - 1`` per elasticity.

    A cell whose solve fails records the error instead of aborting the table.
    """
    if not eps_list:
        raise DomainError("eps_list must not be empty")
    for q in q_list:
        if not 0.0 <= q <= 1.0:
            raise DomainError(f"q must lie in [0,1], got {q!r}")
    rows = []
    for eps in eps_list:
        try:
            pe = p.with_epsilon(float(eps))
            rf = slope_kappa(pe)
        except DomainError as exc:
            rows.append(
                WelfareRow(float(eps), float("nan"), float("nan"), None,
                           [WelfareCell(q, None, None, str(exc)) for q in q_list])
            )
            continue
        W1 = _welfare_at(pe, 1.0, T, u0, rf.weight_x)
        row = WelfareRow(eps, rf.kappa, rf.weight_x, W1)
        for q in q_list:
            try:
                W = W1 if q == 1.0 else _welfare_at(pe, q, T, u0, rf.weight_x)
            except DomainError as exc:
                row.entries.append(WelfareCell(q, None, None, str(exc)))
                continue
            w = 0.0 if q == 1.0 else (W / W1 - 1.0 if W1 != 0.0 else float("nan"))
            row.entries.append(WelfareCell(q, W, w))
        rows.append(row)
    return WelfareTable(rows=rows, periods=T, u0=u0)


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else repr(float(v))


def write_table_csv(out: TextIO | str | Path, table: WelfareTable) -> None:
    """Columns ``epsilon,kappa,weight_x,q,W,w_percent``; failed cells leave W empty."""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_table_csv(fh, table)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["epsilon", "kappa", "weight_x", "q", "W", "w_percent"])
    for row in table.rows:
        for c in row.entries:
            w_pct = None if c.w is None else 100.0 * c.w
            writer.writerow([_fmt(row.epsilon), _fmt(row.kappa), _fmt(row.weight_x),
                             _fmt(c.q), _fmt(c.W), _fmt(w_pct)])


def read_table_csv(src: str | Path) -> list[dict[str, Optional[float]]]:
    with open(src, newline="", encoding="utf-8") as fh:
        return [{k: (float(v) if v != "" else None) for k, v in r.items()} for r in csv.DictReader(fh)]


def format_table(table: WelfareTable) -> str:
    """Human-readable layout: one line per elasticity, ``w(q)`` in percent."""
    qs = [c.q for c in table.rows[0].entries] if table.rows else []
    qs_rel = [q for q in qs if q != 1.0]
    head = ["eps", "kappa", "kappa/eps", "W(1)"] + [f"q={q:g}" for q in qs_rel]
    lines = ["  ".join(f"{h:>10}" for h in head)]
    for row in table.rows:
        cells = [f"{row.epsilon:>10g}", f"{row.kappa:>10.4g}", f"{row.weight_x:>10.4g}",
                 f"{row.W_commit:>10.4f}" if row.W_commit is not None else f"{'n/a':>10}"]
        for q in qs_rel:
            c = row.cell(q)
            cells.append(f"{100 * c.w:>9.2f}%" if c.w is not None else f"{'error':>10}")
        lines.append("  ".join(cells))
    return "\n".join(lines)
