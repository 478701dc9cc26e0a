import io

import numpy as np
import pytest

from quasicommit.bifurcation import (
    FD_EPS_GRID,
    FD_Q_GRID,
    STABLE,
    UNSTABLE,
    anchor_comparison,
    bound_report,
    eigenvalue_scan,
    verify,
    verify_passed,
    write_scan_csv,
)
from quasicommit.calibration import params_from_mapping, slope_kappa
from quasicommit.quasi_commitment import stable_root


def test_scan_gali(gali):
    scan = eigenvalue_scan(gali, (0.0, 1e-7, 0.5, 1.0), (6.0,))
    assert scan.lam[:, 0] == pytest.approx([1.7828, 0.5666, 0.4965, 0.4292], abs=1e-4)
    assert scan.regime_class[:, 0].tolist() == [UNSTABLE, STABLE, STABLE, STABLE]
    assert all(scan.flags.values())


def test_scan_respects_bounds(gali):
    scan = eigenvalue_scan(gali)
    lam_min, sup_qc, inf_d, sup_d = bound_report(gali)
    qs = np.array(scan.q_grid)
    assert np.all(scan.lam[qs > 0] < sup_qc) and np.all(scan.lam[qs > 0] > lam_min)
    assert np.all(scan.lam[qs == 0] > inf_d) and np.all(scan.lam[qs == 0] < sup_d)
    assert len(scan.grid) == len(scan.q_grid) * len(scan.eps_grid)


def test_bound_report_gali(gali):
    lam_min, sup_qc, inf_d, sup_d = bound_report(gali)
    assert (lam_min, sup_qc, inf_d, sup_d) == pytest.approx((0.3796, 0.7463, 1.3535, 2.0404), abs=1e-4)
    assert sup_qc < 1 < inf_d
    assert inf_d < 1.7828 < sup_d


def test_lambda_min_is_a_limit(gali):
    lam_min = bound_report(gali)[0]
    # q = 1, eps -> infinity
    far = stable_root(slope_kappa(gali.with_epsilon(1e9)).kappa_eps, gali.beta)
    assert far == pytest.approx(lam_min, abs=1e-8)
    assert far > lam_min


def test_anchor_comparison_gali(gali):
    table = anchor_comparison(gali, (1e-7, 1e-4, 0.1, 0.5, 0.8, 1.0), (6.0,))
    assert table.anchor_pi[0, 0] == pytest.approx(0.5666, abs=1e-4)
    assert table.anchor_pi[-1, 0] == pytest.approx(0.6502, abs=1e-4)
    assert table.anchor_disc[0] == pytest.approx(1.0277, abs=1e-4)
    assert table.increasing_in_q and table.below_discretion
    assert np.all(np.diff(table.anchor_pi[:, 0]) > 0)


def test_anchor_gap_vanishes_for_white_noise_near_unit_elasticity():
    gaps = []
    for rho, eps in [(0.5, 3.0), (0.1, 1.1), (0.01, 1.01), (1e-4, 1.0001)]:
        p = params_from_mapping({"rho": rho, "epsilon": eps})
        t = anchor_comparison(p, (1e-7,), (eps,))
        gaps.append(t.anchor_disc[0] - t.anchor_pi[0, 0])
    assert all(g > 0 for g in gaps)
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-3


def test_saddle_node_discontinuity(gali):
    scan = eigenvalue_scan(gali)
    i_small = scan.q_grid.index(1e-7)
    for j, e in enumerate(scan.eps_grid):
        ke = slope_kappa(gali.with_epsilon(e)).kappa_eps
        lim = 1 / (1 + ke)
        assert abs(scan.lam[i_small, j] - lim) < 1e-4
        assert scan.lam[0, j] - scan.lam[i_small, j] > (1 + ke) / gali.beta - lim - 1e-4


def test_fd_grid_is_8_by_4():
    assert len(FD_Q_GRID) == 8 and len(FD_EPS_GRID) == 4


def test_verify_all_pass(gali):
    claims = verify(gali)
    assert verify_passed(claims), [c.line() for c in claims if not c.passed]
    names = {c.name for c in claims}
    for prefix in ("prop4.i", "prop4.ii", "prop4.iii", "prop5", "prop6.i", "prop6.ii", "prop6.iii"):
        assert any(n.startswith(prefix) for n in names)


@pytest.mark.parametrize("overrides", [{"beta": 0.95, "theta": 0.75}, {"rho": 0.9, "epsilon": 11.0}])
def test_verify_other_calibrations(overrides):
    claims = verify(params_from_mapping(overrides))
    assert verify_passed(claims), [c.line() for c in claims if not c.passed]


def test_verify_flags_anchor_monotonicity_at_low_persistence():
    # With rho = 0.3 the anchor falls with q: the eigenvalue decline outweighs
    # the shrinking denominator 1 - beta q rho lam.
    claims = verify(params_from_mapping({"rho": 0.3}))
    failed = [c.name for c in claims if not c.passed]
    assert failed == ["prop6.ii.anchor_increasing_in_q"]
    a = anchor_comparison(params_from_mapping({"rho": 0.3}), (0.1, 1.0), (6.0,)).anchor_pi[:, 0]
    assert a[1] < a[0]


def test_scan_csv(gali):
    buf = io.StringIO()
    write_scan_csv(buf, eigenvalue_scan(gali, (0.0, 1.0), (6.0, 2.35)))
    lines = buf.getvalue().splitlines()
    assert lines[0] == "q,epsilon,lambda,f_pi,anchor_pi,regime"
    assert len(lines) == 5
    assert lines[1].startswith("0.0,2.35,") and lines[1].endswith(",unstable")
