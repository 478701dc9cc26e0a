import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quasicommit.calibration import (
    GALI2015,
    DomainError,
    StructuralParams,
    kappa_eps_bounds,
    load_config,
    params_from_mapping,
    slope_kappa,
)

EPS_GRID = (1.001, 2, 6, 50, 3193)


def kappa_exact(eps: Fraction) -> Fraction:
    # Gali calibration in exact arithmetic: beta=99/100, sigma=phi=1, alpha=1/3, theta=2/3
    beta, alpha, theta = Fraction(99, 100), Fraction(1, 3), Fraction(2, 3)
    curvature = 1 + (1 + alpha) / (1 - alpha)
    calvo = (1 - theta) * (1 - beta * theta) / theta
    return curvature * calvo * (1 - alpha) / (1 - alpha + alpha * eps)


def test_gali_slope_matches_exact_fraction(rf):
    assert kappa_exact(Fraction(6)) == Fraction(51, 400)
    assert rf.kappa == pytest.approx(0.1275, rel=1e-15)
    assert rf.weight_x == pytest.approx(0.02125, rel=1e-15)
    assert rf.kappa_max == pytest.approx(0.34, rel=1e-15)


@pytest.mark.parametrize(
    "eps, kappa, weight",
    [(2.35, 0.235, 0.1), (1.001, 0.34, 0.34)],
)
def test_table_rows_at_reported_precision(gali, eps, kappa, weight):
    rf = slope_kappa(gali.with_epsilon(eps))
    assert rf.kappa == pytest.approx(kappa, abs=1e-3)
    assert rf.weight_x == pytest.approx(weight, abs=1e-3)
    assert float(kappa_exact(Fraction(str(eps)))) == pytest.approx(rf.kappa, rel=1e-14)


def test_large_elasticity_weight(gali):
    rf = slope_kappa(gali.with_epsilon(3193))
    assert rf.weight_x == pytest.approx(1e-7, rel=1e-3)
    assert rf.kappa == pytest.approx(0.00032, abs=5e-6)


def test_weight_is_ratio(rf):
    assert rf.weight_x == rf.kappa / rf.epsilon


def test_kappa_eps_bounds_gali(gali):
    lo, hi = kappa_eps_bounds(gali)
    assert lo == pytest.approx(0.34, rel=1e-14)
    assert hi == pytest.approx(1.02, rel=1e-14)
    assert lo < 0.1275 * 6 < hi


def test_bounds_finite_near_unit_alpha(gali):
    lo, hi = kappa_eps_bounds(params_from_mapping({"alpha_L": 0.99}))
    assert 0 < lo < hi < float("inf")
    assert hi == pytest.approx(lo / 0.99)


def test_monotone_on_sampled_grid(gali):
    rfs = [slope_kappa(gali.with_epsilon(e)) for e in EPS_GRID]
    lo, hi = kappa_eps_bounds(gali)
    for a, b in zip(rfs, rfs[1:]):
        assert b.kappa < a.kappa
        assert b.kappa_eps > a.kappa_eps
    for r in rfs:
        assert lo < r.kappa_eps < hi
        assert r.weight_x < r.kappa < r.kappa_max


params = st.builds(
    StructuralParams,
    beta=st.floats(0.5, 0.999),
    sigma=st.floats(0.1, 5),
    phi=st.floats(0.1, 5),
    alpha_L=st.floats(0.01, 0.9),
    theta=st.floats(0.05, 0.95),
    epsilon=st.floats(1.0001, 1e4),
    rho=st.floats(0.01, 0.99),
)


@given(params)
def test_reduced_form_invariants(p):
    rf = slope_kappa(p)
    assert 0 < rf.kappa < rf.kappa_max
    assert rf.kappa_max < rf.kappa_eps < rf.kappa_eps_sup
    assert rf.weight_x < rf.kappa


@pytest.mark.parametrize(
    "field, value",
    [("beta", 1.0), ("theta", 0.0), ("epsilon", 1.0), ("alpha_L", 1.0), ("rho", 0.0), ("sigma", 0.0), ("phi", -1.0)],
)
def test_boundary_values_rejected(field, value):
    with pytest.raises(DomainError, match=field):
        params_from_mapping({field: value})


def test_config_roundtrip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({**GALI2015.to_dict(), "epsilon": 2.35}))
    p = load_config(path)
    assert p.epsilon == 2.35 and p.beta == 0.99


def test_config_unknown_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"beta": 0.99, "gamma": 1}))
    with pytest.raises(DomainError, match="gamma"):
        load_config(path)


def test_config_preset_and_partial(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"preset": "gali2015", "rho": 0.5}))
    p = load_config(path)
    assert p.rho == 0.5 and p.theta == GALI2015.theta
