"""Parameter records, scaling constants, and their JSON forms.

Two parameter sets describe the same model at different levels:
``PhysicalParams`` holds the dimensional constants of the
temperature/carbon equations, ``DimensionlessParams`` the eight numbers
(k, p, a, b, m, lambda, r, epsilon) of the scaled system.  Both
round-trip through flat JSON objects whose keys are exactly the field
names; unknown keys are rejected so that config files fail loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Any, Mapping

State3 = tuple[float, float, float]
"""An (x, y, z) state triple; operations accept any length-3 sequence."""


def _as_finite(name: str, value: Any) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return v


def _check_keys(cls_name: str, data: Mapping[str, Any], expected: tuple[str, ...]) -> None:
    unknown = sorted(set(data) - set(expected))
    missing = sorted(set(expected) - set(data))
    if unknown:
        raise ValueError(f"{cls_name}: unknown JSON keys {unknown}")
    if missing:
        raise ValueError(f"{cls_name}: missing JSON keys {missing}")


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional constants of the temperature/carbon model.

    Fields
    ------
    C_p : planetary heat capacity (W yr m^-2 K^-1, i.e. J K^-1 m^-2 per year unit)
    Q : insolation (W m^-2)
    alpha_max, alpha_min : extreme planetary albedos (dimensionless)
    D : width of the albedo transition (K)
    T_tilde : albedo midpoint temperature (K)
    T_star : temperature of optimal carbon drawdown (K)
    B0 : outgoing-radiation offset (W m^-2)
    B1 : outgoing-radiation carbon sensitivity (W m^-2 PgC^-1)
    B2 : outgoing-radiation temperature sensitivity (W m^-2 K^-1)
    B3 : land-atmosphere flux rate (yr^-1)
    B4 : baseline terrestrial drawdown (PgC yr^-1)
    B5 : atmosphere-to-ocean exchange rate (yr^-1)
    B6 : ocean-to-atmosphere exchange rate (yr^-1)
    P : drawdown curvature (PgC K^-2)
    L : ocean leak (PgC yr^-1)

    All fields except ``T_tilde`` and ``T_star`` must be strictly
    positive; albedos must satisfy alpha_min < alpha_max <= 1.
    """

    C_p: float
    Q: float
    alpha_max: float
    alpha_min: float
    D: float
    T_tilde: float
    T_star: float
    B0: float
    B1: float
    B2: float
    B3: float
    B4: float
    B5: float
    B6: float
    P: float
    L: float

    _ANY_SIGN = ("T_tilde", "T_star")

    def __post_init__(self) -> None:
        for fld in fields(self):
            value = _as_finite(fld.name, getattr(self, fld.name))
            object.__setattr__(self, fld.name, value)
            if fld.name not in self._ANY_SIGN and value <= 0.0:
                raise ValueError(f"{fld.name} must be strictly positive, got {value}")
        if not self.alpha_min < self.alpha_max <= 1.0:
            raise ValueError(
                f"albedos must satisfy alpha_min < alpha_max <= 1, "
                f"got alpha_min={self.alpha_min}, alpha_max={self.alpha_max}"
            )

    def to_json(self) -> dict[str, float]:
        return {fld.name: getattr(self, fld.name) for fld in fields(self)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PhysicalParams":
        names = tuple(fld.name for fld in fields(cls))
        _check_keys(cls.__name__, data, names)
        return cls(**{name: data[name] for name in names})


_DIMLESS_KEYS = ("k", "p", "a", "b", "m", "lambda", "r", "epsilon")


@dataclass(frozen=True)
class DimensionlessParams:
    """The eight parameters of the scaled system.

    ``lam`` is serialized under the JSON key ``"lambda"`` (the attribute
    name avoids the Python keyword).  ``epsilon`` is the singular
    perturbation parameter; ``epsilon = 0`` and ``r = 0`` inputs are
    accepted so that singular-limit and degenerate analyses can be run,
    but the full vector field refuses epsilon = 0 at evaluation time.

    ``provenance`` optionally records how the values were obtained (for
    instance the cached forcing constant from a nondimensionalization);
    it never takes part in comparison or serialization.
    """

    k: float
    p: float
    a: float
    b: float
    m: float
    lam: float
    r: float
    epsilon: float
    provenance: dict[str, float] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        for name in ("k", "p", "a", "b", "m", "lam", "r", "epsilon"):
            object.__setattr__(self, name, _as_finite(name, getattr(self, name)))
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.r < 0.0:
            raise ValueError(f"r must be >= 0, got {self.r}")

    def to_json(self) -> dict[str, float]:
        return {
            "k": self.k,
            "p": self.p,
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "lambda": self.lam,
            "r": self.r,
            "epsilon": self.epsilon,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "DimensionlessParams":
        _check_keys(cls.__name__, data, _DIMLESS_KEYS)
        return cls(
            k=data["k"],
            p=data["p"],
            a=data["a"],
            b=data["b"],
            m=data["m"],
            lam=data["lambda"],
            r=data["r"],
            epsilon=data["epsilon"],
        )


@dataclass(frozen=True)
class Scales:
    """Scaling constants linking the dimensional and scaled systems.

    x = S/S0, y = A/A0, z = H/H0 and s = t/t0.
    """

    S0: float
    A0: float
    H0: float
    t0: float

    def __post_init__(self) -> None:
        for name in ("S0", "A0", "H0", "t0"):
            value = _as_finite(name, getattr(self, name))
            object.__setattr__(self, name, value)
            if value <= 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value}")

    def to_json(self) -> dict[str, float]:
        return {"S0": self.S0, "A0": self.A0, "H0": self.H0, "t0": self.t0}
