"""Model forms and the scaling transformation between them.

Three equivalent formulations of the temperature/carbon oscillator live
here.  The dimensional system couples a shifted global temperature S to
atmospheric carbon A and oceanic carbon H; its energy-balance equation
comes in a smooth tanh-albedo form and in a cubic approximation of that
form.  Nondimensionalizing the cubic system produces the scaled system

    epsilon * dx/ds = y - x^3 + 3*x - k
    dy/ds           = p*(x - a)^2 - b - m*y - (lambda + y) + z
    dz/ds           = r*(lambda + y - z)

whose right sides are built from the scalar pieces ``h``, ``f`` and
``F`` defined below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cubic import solve_cubic
from .errors import ScalingError, SingularLimitError
from .params import DimensionlessParams, PhysicalParams, Scales

ATTRACTING = "attracting"
REPELLING = "repelling"
FOLD = "fold"

_FOLD_TOL = 1e-9


def h(x, k):
    """Cubic branch function h(x) = x^3 - 3x + k (ufunc-friendly)."""
    return x * x * x - 3.0 * x + k


def hprime(x):
    """h'(x) = 3x^2 - 3."""
    return 3.0 * x * x - 3.0


def f(x, p, a, b):
    """Drawdown parabola f(x) = p*(x - a)^2 - b."""
    return p * (x - a) ** 2 - b


def fprime(x, p, a):
    """f'(x) = 2p*(x - a)."""
    return 2.0 * p * (x - a)


def F(x, y, k):
    """Fast-direction field F(x, y) = y - h(x); its zero set is y = h(x)."""
    return y - h(x, k)


def albedo(S: float, params: PhysicalParams) -> float:
    """Planetary albedo as a function of the shifted temperature S.

    Smoothly interpolates between ``alpha_max`` (cold) and ``alpha_min``
    (warm) over a transition of width ``D``; the value is strictly
    between the two extremes for finite S.
    """
    if not math.isfinite(S):
        raise ValueError(f"shifted temperature must be finite, got {S!r}")
    mid = 0.5 * (params.alpha_max + params.alpha_min)
    half = 0.5 * (params.alpha_max - params.alpha_min)
    return mid - half * math.tanh(S / params.D)


def cubic_forcing_constant(params: PhysicalParams) -> float:
    """Constant forcing term of the cubic energy-balance equation."""
    mid = 0.5 * (params.alpha_max + params.alpha_min)
    return params.Q * (1.0 - mid) - (params.B0 + params.B2 * params.T_tilde)


def _carbon_fluxes(params: PhysicalParams, S: float, A: float, H: float) -> tuple[float, float]:
    S_star = params.T_star - params.T_tilde
    land = params.B3 * (params.P * (S - S_star) ** 2 - params.B4 - A)
    ocean = params.L + params.B5 * A - params.B6 * H
    return land, ocean


def vf_dimensional_tanh(params: PhysicalParams, state: Sequence[float]) -> np.ndarray:
    """Time derivative (dS/dt, dA/dt, dH/dt) of the tanh-albedo system.

    The ocean-atmosphere exchange enters the A and H components with
    opposite signs, so dA/dt + dH/dt reduces to the land flux alone.
    """
    S, A, H = state
    dS = (
        params.Q * (1.0 - albedo(S, params))
        - (params.B0 + params.B2 * params.T_tilde - params.B1 * A + params.B2 * S)
    ) / params.C_p
    land, ocean = _carbon_fluxes(params, S, A, H)
    return np.array((dS, land - ocean, ocean))


def vf_dimensional_cubic(params: PhysicalParams, state: Sequence[float]) -> np.ndarray:
    """Time derivative of the cubic approximation of the tanh system.

    Only the S component differs from :func:`vf_dimensional_tanh`; the
    difference is O((S/D)^5) near S = 0.
    """
    S, A, H = state
    G = params.Q * (params.alpha_max - params.alpha_min)
    dS = (
        params.B1 * A
        - G / (6.0 * params.D**3) * S**3
        + (G / (2.0 * params.D) - params.B2) * S
        + cubic_forcing_constant(params)
    ) / params.C_p
    land, ocean = _carbon_fluxes(params, S, A, H)
    return np.array((dS, land - ocean, ocean))


def vf_full(params: DimensionlessParams, state: Sequence[float]) -> np.ndarray:
    """Derivative of the scaled system in slow time.

    Raises :class:`SingularLimitError` at epsilon = 0, where the flow is
    undefined and the layer or reduced formulations apply instead.
    """
    if params.epsilon == 0.0:
        raise SingularLimitError(
            "epsilon = 0: the full vector field is undefined in the singular "
            "limit; use the layer/reduced flow operations instead"
        )
    x, y, z = state
    return np.array(
        (
            (y - x * x * x + 3.0 * x - params.k) / params.epsilon,
            params.p * (x - params.a) ** 2
            - params.b
            - params.m * y
            - (params.lam + y)
            + z,
            params.r * (params.lam + y - z),
        )
    )


def full_rhs(params: DimensionlessParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator-ready right side t, (x, y, z) -> derivative of the scaled system."""
    if params.epsilon == 0.0:
        raise SingularLimitError(
            "epsilon = 0: cannot build the full right side in the singular limit"
        )
    k, p, a, b = params.k, params.p, params.a, params.b
    m, lam, r = params.m, params.lam, params.r
    inv_eps = 1.0 / params.epsilon

    def rhs(t: float, state: np.ndarray) -> np.ndarray:
        x, y, z = state
        return np.array(
            (
                (y - x * x * x + 3.0 * x - k) * inv_eps,
                p * (x - a) ** 2 - b - m * y - (lam + y) + z,
                r * (lam + y - z),
            )
        )

    return rhs


def dimensional_tanh_rhs(params: PhysicalParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator-ready right side of the tanh-albedo system."""
    return lambda t, state: vf_dimensional_tanh(params, state)


def dimensional_cubic_rhs(params: PhysicalParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator-ready right side of the cubic system."""
    return lambda t, state: vf_dimensional_cubic(params, state)


def nondimensionalize(phys: PhysicalParams) -> tuple[DimensionlessParams, Scales]:
    """Map physical constants to the scaled parameters and their scales.

    The scales are fixed by requiring the cubic system to take the
    scaled form exactly: ``S0`` normalizes the cubic's x-coefficients to
    (-1, +3), ``A0`` normalizes the carbon coupling, ``H0 = B5*A0/B6``
    and ``t0 = 1/B5``.  Trajectories of the cubic system and of the
    scaled system then coincide under (x, y, z, s) =
    (S/S0, A/A0, H/H0, t/t0).

    Raises :class:`ScalingError` when the albedo feedback is too weak
    relative to the radiative damping for a real scaling to exist.
    """
    G = phys.Q * (phys.alpha_max - phys.alpha_min)
    gate = G - 4.0 * phys.D * phys.B2
    if gate <= 0.0:
        raise ScalingError(
            "no real scaling: Q*(alpha_max - alpha_min) - 4*D*B2 = "
            f"{gate!r} must be strictly positive"
        )
    S0 = phys.D * math.sqrt((G - 2.0 * phys.D * phys.B2) / G)
    A0 = G * S0**3 / (6.0 * phys.D**3 * phys.B1)
    H0 = phys.B5 * A0 / phys.B6
    t0 = 1.0 / phys.B5

    K = cubic_forcing_constant(phys)
    S_star = phys.T_star - phys.T_tilde
    carbon_coupling = phys.B1 * A0
    exchange = phys.B5 * A0

    # The scaled fast equation reads y - x^3 + 3x - k, while the cubic
    # system carries +K, so the map must negate it: k = -K/(B1*A0).
    dimless = DimensionlessParams(
        k=-K / carbon_coupling,
        p=phys.B3 * phys.P * S0**2 / exchange,
        a=S_star / S0,
        b=phys.B3 * phys.B4 / exchange,
        m=phys.B3 / phys.B5,
        lam=phys.L / exchange,
        r=phys.B6 / phys.B5,
        epsilon=phys.B5 * phys.C_p * S0 / carbon_coupling,
        provenance={
            "K": K,
            "S_star": S_star,
            "S0": S0,
            "A0": A0,
            "H0": H0,
            "t0": t0,
        },
    )
    return dimless, Scales(S0=S0, A0=A0, H0=H0, t0=t0)


@dataclass(frozen=True)
class EquilibriumRoot:
    """One energy-balance equilibrium at frozen carbon level."""

    x: float
    stability: str
    multiplicity: int


def energy_balance_equilibria(y: float, k: float) -> list[EquilibriumRoot]:
    """Equilibria of the fast dynamics at frozen scaled carbon y.

    Solves y = h(x) in closed form and tags each root: attracting where
    |x| > 1, repelling where |x| < 1, fold where |x| = 1 (double roots
    sit exactly on a fold).  Returns 0 to 3 roots in ascending order.
    """
    out = []
    for x, mult in solve_cubic(1.0, 0.0, -3.0, k - y):
        gap = abs(x) - 1.0
        if abs(gap) <= _FOLD_TOL:
            stability = FOLD
        elif gap > 0.0:
            stability = ATTRACTING
        else:
            stability = REPELLING
        out.append(EquilibriumRoot(x=x, stability=stability, multiplicity=mult))
    return out
