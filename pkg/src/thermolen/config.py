"""TOML configuration files describing an equation of state and tolerances.

Example::

    gas_constant = 8.314
    model = "virial"            # or "quasi_ideal"
    coefficients = [-1.0e-4]    # B, C, ...
    coeff_dT = [1.0e-6]

    [cv_model]
    kind = "constant"
    parameters = [12.471]

    [tolerances]
    rel_tol = 1e-10
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .eos import R_DEFAULT, VirialEos
from .errors import ConfigError
from .metric import DEFAULT_TOL
from .quad import QuadratureConfig
from .response import CvModel

_TOP_KEYS = {"gas_constant", "model", "coefficients", "excluded_volume", "cv_model",
             "coeff_dT", "coeff_d2T", "tolerances"}
_CV_KEYS = {"kind", "parameters"}
_TOL_KEYS = {"rel_tol", "abs_tol", "max_depth", "metric_tol"}

BUNDLED = ("ideal", "quasi_ideal", "virial2", "virial3")


@dataclass(frozen=True)
class EosConfig:
    gas_constant: float = R_DEFAULT
    model: str = "virial"
    coefficients: tuple[float, ...] = ()
    excluded_volume: float | None = None
    cv_model: CvModel = field(default_factory=CvModel)
    coeff_dT: tuple[float, ...] | None = None
    coeff_d2T: tuple[float, ...] | None = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    metric_tol: float = DEFAULT_TOL

    def to_eos(self) -> VirialEos:
        if self.model == "quasi_ideal":
            return VirialEos(gas_constant=self.gas_constant,
                             excluded_volume=self.excluded_volume or 0.0)
        return VirialEos.virial(self.coefficients, self.gas_constant,
                                self.coeff_dT, self.coeff_d2T)


def _reject_unknown(table, allowed, where):
    unknown = sorted(set(table) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _floats(value, name):
    if not isinstance(value, list):
        raise ConfigError(f"{name} must be an array of numbers")
    try:
        return tuple(float(x) for x in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must contain only numbers") from exc


def parse_config(data: dict) -> EosConfig:
    _reject_unknown(data, _TOP_KEYS, "config")
    model = data.get("model", "virial")
    if model not in ("virial", "quasi_ideal"):
        raise ConfigError(f"model must be 'virial' or 'quasi_ideal', got {model!r}")
    coefficients = _floats(data.get("coefficients", []), "coefficients")
    excluded = data.get("excluded_volume")
    if model == "quasi_ideal":
        if excluded is None:
            raise ConfigError("quasi_ideal model needs excluded_volume")
        if coefficients:
            raise ConfigError("quasi_ideal model takes no virial coefficients")
    elif excluded is not None:
        raise ConfigError("excluded_volume is only valid with model = 'quasi_ideal'")

    cv = data.get("cv_model", {})
    if not isinstance(cv, dict):
        raise ConfigError("cv_model must be a table")
    _reject_unknown(cv, _CV_KEYS, "cv_model")
    cv_model = CvModel(cv.get("kind", "constant"), _floats(cv.get("parameters", []),
                                                          "cv_model.parameters"))

    tol = data.get("tolerances", {})
    if not isinstance(tol, dict):
        raise ConfigError("tolerances must be a table")
    _reject_unknown(tol, _TOL_KEYS, "tolerances")
    try:
        quadrature = QuadratureConfig(
            rel_tol=float(tol.get("rel_tol", 1e-10)),
            abs_tol=float(tol.get("abs_tol", 1e-14)),
            max_depth=int(tol.get("max_depth", 60)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    metric_tol = float(tol.get("metric_tol", DEFAULT_TOL))
    if not metric_tol > 0:
        raise ConfigError("metric_tol must be positive")

    dT = data.get("coeff_dT")
    d2T = data.get("coeff_d2T")
    cfg = EosConfig(
        gas_constant=float(data.get("gas_constant", R_DEFAULT)),
        model=model,
        coefficients=coefficients,
        excluded_volume=None if excluded is None else float(excluded),
        cv_model=cv_model,
        coeff_dT=None if dT is None else _floats(dT, "coeff_dT"),
        coeff_d2T=None if d2T is None else _floats(d2T, "coeff_d2T"),
        quadrature=quadrature,
        metric_tol=metric_tol,
    )
    cfg.to_eos()  # surface VirialEos invariant violations as ConfigError now
    return cfg


def load_config(path_or_name: str | Path) -> EosConfig:
    """Load a TOML file, or one of the bundled configs by name."""
    path = Path(path_or_name)
    if path.is_file():
        text = path.read_text()
    elif str(path_or_name) in BUNDLED:
        text = resources.files("thermolen.data").joinpath(
            f"{path_or_name}.toml").read_text()
    else:
        raise ConfigError(f"config file not found: {path_or_name}")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path_or_name}: {exc}") from exc
    return parse_config(data)
