"""Structural parameters and the reduced-form Phillips-curve slope.

The slope of the new-Keynesian Phillips curve is

    kappa(eps) = (sigma + (phi + alpha_L)/(1 - alpha_L))
                 * (1 - theta)(1 - beta*theta)/theta
                 * (1 - alpha_L)/(1 - alpha_L + alpha_L*eps)

and the welfare weight on the output gap is kappa/eps.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path


class DomainError(ValueError):
    """A parameter or argument lies outside its admissible range."""


@dataclass(frozen=True)
class StructuralParams:
    beta: float  # household discount factor, per quarter
    sigma: float  # inverse intertemporal elasticity
    phi: float  # inverse Frisch elasticity
    alpha_L: float  # decreasing returns to labor
    theta: float  # Calvo probability of not resetting prices
    epsilon: float  # elasticity of substitution between goods
    rho: float  # cost-push shock autocorrelation
    u0: float = 1.0  # initial cost-push shock

    def __post_init__(self) -> None:
        self.validate()

    def validate(self, *, ignore_epsilon: bool = False) -> None:
        open_unit = ("beta", "alpha_L", "theta", "rho")
        for name in open_unit:
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise DomainError(f"{name} must lie in (0,1), got {value!r}")
        for name in ("sigma", "phi"):
            value = getattr(self, name)
            if not value > 0.0:
                raise DomainError(f"{name} must be > 0, got {value!r}")
        if not ignore_epsilon and not self.epsilon > 1.0:
            raise DomainError(f"epsilon must be > 1, got {self.epsilon!r}")

    def with_epsilon(self, epsilon: float) -> StructuralParams:
        return replace(self, epsilon=epsilon)

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


GALI2015 = StructuralParams(
    beta=0.99,
    sigma=1.0,
    phi=1.0,
    alpha_L=1.0 / 3.0,
    theta=2.0 / 3.0,
    epsilon=6.0,
    rho=0.8,
    u0=1.0,
)

PRESETS = {"gali2015": GALI2015}


@dataclass(frozen=True)
class ReducedForm:
    kappa: float
    weight_x: float
    kappa_max: float
    kappa_eps: float
    kappa_eps_sup: float
    epsilon: float


def _kappa_max(p: StructuralParams) -> float:
    curvature = p.sigma + (p.phi + p.alpha_L) / (1.0 - p.alpha_L)
    calvo = (1.0 - p.theta) * (1.0 - p.beta * p.theta) / p.theta
    return curvature * calvo * (1.0 - p.alpha_L)


def slope_kappa(p: StructuralParams) -> ReducedForm:
    """Reduced-form slope, instrument weight and their limits for ``p``."""
    p.validate()
    kappa_max = _kappa_max(p)
    # kappa = kappa_max / (1 - alpha_L + alpha_L * eps)
    kappa = kappa_max / (1.0 - p.alpha_L + p.alpha_L * p.epsilon)
    return ReducedForm(
        kappa=kappa,
        weight_x=kappa / p.epsilon,
        kappa_max=kappa_max,
        kappa_eps=kappa * p.epsilon,
        kappa_eps_sup=kappa_max / p.alpha_L,
        epsilon=p.epsilon,
    )


def kappa_eps_bounds(p: StructuralParams) -> tuple[float, float]:
    """Return ``(kappa_max, kappa_max / alpha_L)``.

    For every ``eps > 1`` the product ``kappa(eps) * eps`` lies strictly
    between the two values; the bounds do not depend on ``p.epsilon``.
    """
    p.validate(ignore_epsilon=True)
    kappa_max = _kappa_max(p)
    return kappa_max, kappa_max / p.alpha_L


_PARAM_NAMES = tuple(f.name for f in fields(StructuralParams))


def params_from_mapping(data: dict, base: StructuralParams = GALI2015) -> StructuralParams:
    """Override ``base`` with the entries of a flat mapping.

    Unknown keys are rejected. A ``preset`` key selects the base calibration.
    """
    data = dict(data)
    preset = data.pop("preset", None)
    if preset is not None:
        try:
            base = PRESETS[preset]
        except KeyError:
            raise DomainError(f"unknown preset {preset!r}; known: {sorted(PRESETS)}") from None
    unknown = sorted(set(data) - set(_PARAM_NAMES))
    if unknown:
        raise DomainError(f"unknown config key(s): {', '.join(unknown)}")
    values = base.to_dict()
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DomainError(f"{key} must be a number, got {value!r}")
        values[key] = float(value)
    return StructuralParams(**values)


def load_config(path: str | Path) -> StructuralParams:
    """Read a flat JSON object of structural parameters.

    Missing keys fall back to the ``gali2015`` calibration.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise DomainError(f"config {path}: expected a flat JSON object")
    return params_from_mapping(data)
