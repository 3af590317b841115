"""Singular-limit geometry of the scaled system.

In the limit epsilon -> 0 the flow splits into a fast layer problem,
whose equilibria form the S-shaped surface y = h(x), and a slow flow on
that surface.  Rescaling slow time by h'(x) removes the fold
singularity at x = +-1 and yields the planar desingularized system

    dx/dt = f(x) - (m + 1) h(x) - lambda + z
    dz/dt = r h'(x) (lambda + h(x) - z)

whose equilibria on the folds are the folded singularities analyzed
here.  The module classifies them, evaluates the algebraic admissibility
conditions for a closed singular orbit, approximates the strong canard
bounding the funnel on the lower attracting sheet, and assembles the
singular orbit itself from fast jumps and slow arcs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import model
from .cubic import solve_cubic
from .errors import CanardPathError, NoFoldedNodeError, OrbitTrappedError
from .integrate import (
    EventSpec,
    IntegratorConfig,
    Trajectory,
    integrate_with_events,
)
from .params import DimensionlessParams

LOWER = "lower"
UPPER = "upper"

STABLE_NODE = "stable node"
STABLE_FOCUS = "stable focus"
UNSTABLE = "unstable"
SADDLE = "saddle"
DEGENERATE = "degenerate (SN-II)"

BRANCH_LOWER = "M_A-"
FOLD_LOWER = "L-"
BRANCH_MIDDLE = "M_R"
FOLD_UPPER = "L+"
BRANCH_UPPER = "M_A+"

FAST_JUMP = "fast-jump"
SLOW_ARC = "slow-arc"

_DEGENERATE_DET_TOL = 1e-12
_TRANSVERSAL_TOL = 1e-8
_GUARD_X = 8.0

_TIGHT = IntegratorConfig(rtol=1e-12, atol=1e-14, h_max=10.0, max_steps=2_000_000)


def branch_of(x: float) -> str:
    """Label of the critical-surface branch containing x (exact fold test)."""
    if x < -1.0:
        return BRANCH_LOWER
    if x == -1.0:
        return FOLD_LOWER
    if x < 1.0:
        return BRANCH_MIDDLE
    if x == 1.0:
        return FOLD_UPPER
    return BRANCH_UPPER


def reduced_vf(params: DimensionlessParams, x: float, z: float) -> tuple[float, float]:
    """Slow flow on the critical surface in implicit form.

    Returns (h'(x) * dx/ds, dz/ds); dividing the first component by
    h'(x) recovers the true slow velocity away from the folds.
    """
    xdot_scaled = (
        model.f(x, params.p, params.a, params.b)
        - (params.m + 1.0) * model.h(x, params.k)
        - params.lam
        + z
    )
    zdot = params.r * (params.lam + model.h(x, params.k) - z)
    return xdot_scaled, zdot


def desingularized_vf(params: DimensionlessParams, x: float, z: float) -> tuple[float, float]:
    """Desingularized slow flow (time rescaled by h'(x)).

    Equals h'(x) times the true slow flow, so orientation is reversed on
    the middle branch where h' < 0.
    """
    xdot = (
        model.f(x, params.p, params.a, params.b)
        - (params.m + 1.0) * model.h(x, params.k)
        - params.lam
        + z
    )
    zdot = params.r * model.hprime(x) * (params.lam + model.h(x, params.k) - z)
    return xdot, zdot


def desingularized_rhs(params: DimensionlessParams):
    """Integrator-ready right side t, (x, z) -> desingularized derivative."""
    p, a, b = params.p, params.a, params.b
    k, m1, lam, r = params.k, params.m + 1.0, params.lam, params.r

    def rhs(t: float, state: np.ndarray) -> np.ndarray:
        x, z = state
        hx = x * x * x - 3.0 * x + k
        return np.array(
            (
                p * (x - a) ** 2 - b - m1 * hx - lam + z,
                r * (3.0 * x * x - 3.0) * (lam + hx - z),
            )
        )

    return rhs


def delta(params: DimensionlessParams) -> float:
    """Fold gap f(-1) - m*h(-1); positive values put the lower folded
    singularity strictly below the z-nullcline."""
    return model.f(-1.0, params.p, params.a, params.b) - params.m * model.h(-1.0, params.k)


def z_minus(params: DimensionlessParams) -> float:
    """z coordinate of the folded singularity on the lower fold."""
    return model.h(-1.0, params.k) + params.lam - delta(params)


def z_plus(params: DimensionlessParams) -> float:
    """z coordinate of the folded singularity on the upper fold."""
    return (
        (params.m + 1.0) * model.h(1.0, params.k)
        + params.lam
        - model.f(1.0, params.p, params.a, params.b)
    )


def z_nullcline(params: DimensionlessParams, fold_side: str = LOWER) -> float:
    """z value where the z-nullcline meets the given fold."""
    x0 = -1.0 if fold_side == LOWER else 1.0
    return model.h(x0, params.k) + params.lam


@dataclass(frozen=True)
class FoldedSingularity:
    """Folded singularity with its linearization and classification.

    ``eigen_strong``/``eigen_weak`` (ordered by magnitude) and the
    eigenvector slopes are populated only when the eigenvalues are real;
    ``mu_ratio`` and the predicted small-oscillation count only for a
    stable node.  ``s_boundary`` flags the knife-edge where the count
    formula lands on an exact integer.
    """

    fold_side: str
    x: float
    z: float
    jacobian: tuple[tuple[float, float], tuple[float, float]]
    trace: float
    det: float
    discriminant: float
    classification: str
    eigenvalues: tuple[complex, complex]
    eigen_strong: float | None
    eigen_weak: float | None
    slope_strong: float | None
    slope_weak: float | None
    mu_ratio: float | None
    s_predicted: int | None
    s_boundary: bool

    def to_json(self) -> dict:
        return {
            "fold_side": self.fold_side,
            "x": self.x,
            "z": self.z,
            "jacobian": [list(row) for row in self.jacobian],
            "trace": self.trace,
            "det": self.det,
            "discriminant": self.discriminant,
            "classification": self.classification,
            "eigenvalues": [[ev.real, ev.imag] for ev in self.eigenvalues],
            "eigen_strong": self.eigen_strong,
            "eigen_weak": self.eigen_weak,
            "slope_strong": self.slope_strong,
            "slope_weak": self.slope_weak,
            "mu_ratio": self.mu_ratio,
            "s_predicted": self.s_predicted,
            "s_boundary": self.s_boundary,
        }


def predicted_sao_count(mu: float) -> tuple[int, bool]:
    """Small-oscillation count from the folded-node eigenvalue ratio.

    Returns (count, boundary) where count is the greatest integer less
    than (1 + mu) / (2 mu); when the ratio is an exact integer the count
    is decremented accordingly and the boundary flag is set.
    Requires 0 < mu < 1.
    """
    if not 0.0 < mu < 1.0:
        raise ValueError(f"eigenvalue ratio must lie strictly in (0, 1), got {mu!r}")
    ratio = (1.0 + mu) / (2.0 * mu)
    nearest = round(ratio)
    if abs(ratio - nearest) < 1e-9:
        return int(nearest) - 1, True
    return math.floor(ratio), False


def jacobian_folded(params: DimensionlessParams, fold_side: str) -> FoldedSingularity:
    """Linearization of the desingularized flow at a folded singularity.

    On either fold h' vanishes, so the matrix takes the form
    [[f'(x0), 1], [r h''(x0) g0, 0]] with g0 the signed gap between the
    singularity and the z-nullcline.
    """
    if fold_side not in (LOWER, UPPER):
        raise ValueError(f"fold_side must be {LOWER!r} or {UPPER!r}, got {fold_side!r}")
    if fold_side == LOWER:
        x0 = -1.0
        z0 = z_minus(params)
        j21 = -6.0 * params.r * delta(params)
    else:
        x0 = 1.0
        z0 = z_plus(params)
        gap_upper = model.f(1.0, params.p, params.a, params.b) - params.m * model.h(1.0, params.k)
        j21 = 6.0 * params.r * gap_upper
    j11 = model.fprime(x0, params.p, params.a)

    trace = j11
    det = -j21
    disc = trace * trace - 4.0 * det

    eigen_strong = eigen_weak = None
    slope_strong = slope_weak = None
    mu_ratio = None
    s_predicted = None
    s_boundary = False

    det_scale = max(1.0, trace * trace)
    if abs(det) <= _DEGENERATE_DET_TOL * det_scale:
        classification = DEGENERATE
        eigenvalues = (complex(trace), complex(0.0))
    elif det < 0.0:
        classification = SADDLE
        s_disc = math.sqrt(disc)
        lo, hi = (trace - s_disc) / 2.0, (trace + s_disc) / 2.0
        eigen_strong, eigen_weak = (lo, hi) if abs(lo) >= abs(hi) else (hi, lo)
        slope_strong = -det / eigen_strong
        slope_weak = -det / eigen_weak
        eigenvalues = (complex(eigen_strong), complex(eigen_weak))
    elif disc < 0.0:
        classification = STABLE_FOCUS if trace < 0.0 else UNSTABLE
        imag = math.sqrt(-disc) / 2.0
        eigenvalues = (complex(trace / 2.0, imag), complex(trace / 2.0, -imag))
    elif trace == 0.0 or disc == 0.0:
        classification = DEGENERATE
        eigenvalues = (complex(trace / 2.0), complex(trace / 2.0))
    else:
        s_disc = math.sqrt(disc)
        lo, hi = (trace - s_disc) / 2.0, (trace + s_disc) / 2.0
        eigen_strong, eigen_weak = (lo, hi) if abs(lo) >= abs(hi) else (hi, lo)
        slope_strong = -det / eigen_strong
        slope_weak = -det / eigen_weak
        eigenvalues = (complex(eigen_strong), complex(eigen_weak))
        if trace < 0.0:
            classification = STABLE_NODE
            mu_ratio = eigen_weak / eigen_strong
            if 0.0 < mu_ratio < 1.0:
                s_predicted, s_boundary = predicted_sao_count(mu_ratio)
        else:
            classification = UNSTABLE

    return FoldedSingularity(
        fold_side=fold_side,
        x=x0,
        z=z0,
        jacobian=((j11, 1.0), (j21, 0.0)),
        trace=trace,
        det=det,
        discriminant=disc,
        classification=classification,
        eigenvalues=eigenvalues,
        eigen_strong=eigen_strong,
        eigen_weak=eigen_weak,
        slope_strong=slope_strong,
        slope_weak=slope_weak,
        mu_ratio=mu_ratio,
        s_predicted=s_predicted,
        s_boundary=s_boundary,
    )


def find_folded_singularities(params: DimensionlessParams) -> list[FoldedSingularity]:
    """Both folded singularities (lower fold first) with full eigendata."""
    return [jacobian_folded(params, LOWER), jacobian_folded(params, UPPER)]


def discriminant_delta(a: float, p: float, m: float, delta_value: float) -> float:
    """Discriminant of the nullcline-intersection cubic m*h(x) - f(x).

    Expressed through (a, p, m) and the fold gap; negative means the x-
    and z-nullclines of the desingularized flow intersect exactly once,
    positive means three times.  Requires m != 0 (otherwise the
    intersection equation is not cubic).
    """
    if m == 0.0:
        raise ValueError("m must be nonzero: the intersection equation degenerates")
    c3 = m
    c2 = -p
    c1 = 2.0 * a * p - 3.0 * m
    c0 = 2.0 * a * p + p - 2.0 * m - delta_value
    return (
        18.0 * c3 * c2 * c1 * c0
        - 4.0 * c2**3 * c0
        + c2**2 * c1**2
        - 4.0 * c3 * c1**3
        - 27.0 * c3**2 * c0**2
    )


def discriminant_verdict(
    a: float, p: float, m: float, delta_value: float, boundary_tol: float = 1e-8
) -> str:
    """"one", "three", or "boundary" real nullcline intersections.

    Within ``boundary_tol`` of the discriminant's zero set no root-count
    claim is made.
    """
    value = discriminant_delta(a, p, m, delta_value)
    if abs(value) < boundary_tol:
        return "boundary"
    return "three" if value > 0.0 else "one"


@dataclass(frozen=True)
class OrdinarySingularity:
    """True equilibrium of the full system, lying on the critical surface."""

    x: float
    z: float
    branch: str
    multiplicity: int


def ordinary_singularities(params: DimensionlessParams) -> list[OrdinarySingularity]:
    """Equilibria of the full system: roots of m*h(x) = f(x) with z = h(x) + lambda."""
    k, p, a, b, m = params.k, params.p, params.a, params.b, params.m
    roots = solve_cubic(m, -p, 2.0 * a * p - 3.0 * m, m * k - p * a * a + b)
    return [
        OrdinarySingularity(
            x=x,
            z=model.h(x, k) + params.lam,
            branch=branch_of(x),
            multiplicity=mult,
        )
        for x, mult in roots
    ]


def project_fold(fold_side: str) -> float:
    """Landing x of the fast jump from a fold onto the opposite attracting branch.

    h(x) = h(x_fold) factors as (x - x_fold)^2 (x + 2 x_fold), so the
    simple root is -2 x_fold: +2 from the lower fold, -2 from the upper.
    The jump preserves y and z exactly.
    """
    if fold_side == LOWER:
        return 2.0
    if fold_side == UPPER:
        return -2.0
    raise ValueError(f"fold_side must be {LOWER!r} or {UPPER!r}, got {fold_side!r}")


def _require_stable_node(params: DimensionlessParams) -> FoldedSingularity:
    fold = jacobian_folded(params, LOWER)
    if fold.classification != STABLE_NODE:
        raise NoFoldedNodeError(
            "the lower folded singularity is classified as "
            f"'{fold.classification}'; a stable folded node is required"
        )
    return fold


def funnel_bound_zstar(params: DimensionlessParams) -> float:
    """Tangent-line funnel bound: the strong-eigenvector line through the
    node evaluated at the landing line x = -2."""
    fold = _require_stable_node(params)
    return fold.z - fold.slope_strong


@dataclass(frozen=True)
class CanardApprox:
    """Numerical approximation of the strong canard on the lower branch.

    ``x``/``z`` sample the trajectory for x in [x_stop, -1); the slope
    reported at the node converges to the strong eigenvector slope as
    the seed offset shrinks.
    """

    x: np.ndarray
    z: np.ndarray
    seed_offset: float
    tangent_slope_at_node: float
    x_stop: float
    z_at_stop: float

    def to_json(self) -> dict:
        return {
            "seed_offset": self.seed_offset,
            "tangent_slope_at_node": self.tangent_slope_at_node,
            "x_stop": self.x_stop,
            "z_at_stop": self.z_at_stop,
            "samples": len(self.x),
        }


def strong_canard(
    params: DimensionlessParams,
    seed_offset: float | None = None,
    x_stop: float = -2.0,
    config: IntegratorConfig | None = None,
    max_reverse_time: float | None = None,
) -> CanardApprox:
    """Trace the strong canard backwards from the folded node.

    Seeds a point ``seed_offset`` along the strong eigenvector (oriented
    into x < -1) and integrates the desingularized flow in reverse time
    until x reaches ``x_stop``.  The default offset is
    1e-6 * (1 + |z_node|); rerunning with a smaller offset gives a
    convergence estimate.  ``max_reverse_time`` caps the reverse-time
    horizon (a generous default is derived from the strong eigenvalue).

    Raises :class:`CanardPathError` when the trajectory turns back
    toward the lower fold (it crossed the x-nullcline) before reaching
    ``x_stop``, or when the horizon is exhausted.
    """
    fold = _require_stable_node(params)
    if x_stop >= -1.0:
        raise ValueError(f"x_stop must lie left of the fold x=-1, got {x_stop}")
    if seed_offset is None:
        seed_offset = 1e-6 * (1.0 + abs(fold.z))
    if seed_offset <= 0.0:
        raise ValueError("seed_offset must be strictly positive")

    ms = fold.slope_strong
    direction = np.array((-1.0, -ms)) / math.hypot(1.0, ms)
    seed = np.array((-1.0, fold.z)) + seed_offset * direction

    rhs = desingularized_rhs(params)
    du = rhs(0.0, seed)
    tangent_slope = float(du[1] / du[0])

    reverse = lambda t, u: -rhs(t, u)
    t_max = (
        max_reverse_time
        if max_reverse_time is not None
        else math.log(4.0 / seed_offset) / abs(fold.eigen_strong) + 200.0
    )
    cfg = config or _TIGHT
    events = (
        EventSpec(component=0, threshold=x_stop, direction="falling", terminal=True),
        EventSpec(component=0, threshold=-1.0, direction="rising", terminal=True),
    )
    traj, log = integrate_with_events(reverse, seed, (0.0, t_max), cfg, events)

    hit = log[-1] if log else None
    if hit is None or hit.spec_index != 0:
        if hit is not None and hit.spec_index == 1:
            raise CanardPathError(
                "strong canard crossed the x-nullcline and turned back to the "
                f"lower fold before reaching x = {x_stop}"
            )
        raise CanardPathError(
            f"strong canard did not reach x = {x_stop} within the reverse-time "
            f"horizon {t_max:.3g}"
        )

    xs = traj.states[:, 0]
    zs = traj.states[:, 1]
    order = np.argsort(xs)
    return CanardApprox(
        x=xs[order],
        z=zs[order],
        seed_offset=float(seed_offset),
        tangent_slope_at_node=tangent_slope,
        x_stop=x_stop,
        z_at_stop=float(hit.state[1]),
    )


def funnel_edge(
    params: DimensionlessParams, config: IntegratorConfig | None = None
) -> tuple[float, float]:
    """Numeric funnel edge at x = -2 with a two-offset convergence estimate.

    Runs the strong canard at the default seed offset and at one tenth
    of it; returns (edge_z, |difference|) using the finer run's value.
    """
    fold = _require_stable_node(params)
    base = 1e-6 * (1.0 + abs(fold.z))
    coarse = strong_canard(params, seed_offset=base, config=config)
    fine = strong_canard(params, seed_offset=base / 10.0, config=config)
    return fine.z_at_stop, abs(fine.z_at_stop - coarse.z_at_stop)


@dataclass(frozen=True)
class OrbitSegment:
    kind: str
    start: tuple[float, float]
    end: tuple[float, float]
    samples: np.ndarray

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "start": list(self.start),
            "end": list(self.end),
            "samples": [[float(x), float(z)] for x, z in self.samples],
        }


@dataclass(frozen=True)
class SingularOrbit:
    """Candidate singular periodic orbit in the (x, z) plane.

    Segments are ordered: fast jump off the lower folded node, slow arc
    across the upper attracting branch, fast jump back from the upper
    fold.  ``crossing_z`` is the z value where the arc meets the upper
    fold; the landing point of the return jump is (-2, crossing_z).
    Closure requires the landing to fall inside the funnel and the fold
    crossing to be transversal.
    """

    segments: tuple[OrbitSegment, ...]
    crossing_z: float
    transversal: bool
    landing: tuple[float, float]
    in_funnel_linear: bool
    in_funnel_numeric: bool | None
    closed: bool
    z_star: float
    funnel_edge_z: float | None

    def to_json(self) -> dict:
        return {
            "segments": [seg.to_json() for seg in self.segments],
            "crossing_z": self.crossing_z,
            "transversal": self.transversal,
            "landing": list(self.landing),
            "in_funnel_linear": self.in_funnel_linear,
            "in_funnel_numeric": self.in_funnel_numeric,
            "closed": self.closed,
            "z_star": self.z_star,
            "funnel_edge_z": self.funnel_edge_z,
        }


def build_singular_orbit(
    params: DimensionlessParams,
    funnel_method: str = "numeric",
    config: IntegratorConfig | None = None,
) -> SingularOrbit:
    """Assemble the singular orbit launched from the lower folded node.

    The slow arc is integrated under the desingularized flow from the
    landing point (2, z_node) until x crosses 1 (located to 1e-10).
    ``funnel_method`` selects which funnel membership decides closure:
    "numeric" compares the return landing against the computed strong
    canard, "linear" against the tangent-line bound (cheaper, and
    conservative whenever the canard lies above its tangent line).

    Raises :class:`OrbitTrappedError` when the slow arc fails to reach
    the upper fold (an equilibrium or escape intervenes).
    """
    if funnel_method not in ("numeric", "linear"):
        raise ValueError(f"funnel_method must be 'numeric' or 'linear', got {funnel_method!r}")
    fold = _require_stable_node(params)
    zm = fold.z
    land_x = project_fold(LOWER)

    jump_out = OrbitSegment(
        kind=FAST_JUMP,
        start=(-1.0, zm),
        end=(land_x, zm),
        samples=np.array(((-1.0, zm), (land_x, zm))),
    )

    rhs = desingularized_rhs(params)
    cfg = config or _TIGHT
    events = (
        EventSpec(component=0, threshold=1.0, direction="falling", terminal=True),
        EventSpec(component=0, threshold=_GUARD_X, direction="rising", terminal=True),
    )
    traj, log = integrate_with_events(rhs, np.array((land_x, zm)), (0.0, 1e4), cfg, events)
    hit = log[-1] if log else None
    if hit is None or hit.spec_index != 0:
        tail_x, tail_z = traj.states[-1]
        detail = f"last state (x, z) = ({tail_x:.6g}, {tail_z:.6g})"
        near = [
            s
            for s in ordinary_singularities(params)
            if math.hypot(s.x - tail_x, s.z - tail_z) < 1e-3
        ]
        if near:
            detail += f"; converged to an equilibrium at x = {near[0].x:.6g}"
        raise OrbitTrappedError(
            "slow arc never reached the upper fold x = 1; " + detail
        )

    z_c = float(hit.state[1])
    arc = OrbitSegment(
        kind=SLOW_ARC,
        start=(land_x, zm),
        end=(1.0, z_c),
        samples=traj.states.copy(),
    )
    jump_back = OrbitSegment(
        kind=FAST_JUMP,
        start=(1.0, z_c),
        end=(-2.0, z_c),
        samples=np.array(((1.0, z_c), (-2.0, z_c))),
    )

    zp = z_plus(params)
    transversal = abs(z_c - zp) > _TRANSVERSAL_TOL * max(1.0, abs(zp))
    z_star = zm - fold.slope_strong
    in_funnel_linear = z_c < z_star

    if funnel_method == "numeric":
        edge_z, _ = funnel_edge(params, config=config)
        in_funnel_numeric: bool | None = z_c < edge_z
        closed = bool(in_funnel_numeric and transversal)
    else:
        edge_z = None
        in_funnel_numeric = None
        closed = bool(in_funnel_linear and transversal)

    return SingularOrbit(
        segments=(jump_out, arc, jump_back),
        crossing_z=z_c,
        transversal=transversal,
        landing=(-2.0, z_c),
        in_funnel_linear=in_funnel_linear,
        in_funnel_numeric=in_funnel_numeric,
        closed=closed,
        z_star=z_star,
        funnel_edge_z=edge_z,
    )


@dataclass(frozen=True)
class ConditionCheck:
    value: float | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "value": self.value if self.value is None or math.isfinite(self.value) else None,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Evaluation of the admissibility conditions at one parameter point.

    ``checks`` holds every computed form; ``required`` lists the names
    whose conjunction defines ``verdict`` for the requested mode.
    Strict mode evaluates the printed algebraic inequalities (a)-(i)
    plus the auxiliary bound delta < 4.  Sharp mode replaces the node
    conditions by the actual eigenvalue test, the tangent-line condition
    (e) by the curvature criterion 12r + |mu_s| - 2p - 6(m+1) < 0, and
    the return condition (i) by the direct comparison z_plus < z_star.
    Both printed variants of (i) are always reported because they are
    not equivalent.
    """

    mode: str
    delta: float
    r_max: float
    z_plus: float
    z_star: float | None
    no_folded_node: bool
    checks: dict[str, ConditionCheck]
    required: tuple[str, ...]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "delta": self.delta,
            "r_max": self.r_max if math.isfinite(self.r_max) else None,
            "z_plus": self.z_plus,
            "z_star": self.z_star,
            "no_folded_node": self.no_folded_node,
            "checks": {name: chk.to_json() for name, chk in self.checks.items()},
            "required": list(self.required),
            "verdict": self.verdict,
        }


_STRICT_REQUIRED = ("a", "b", "c", "d", "e_printed", "f", "delta_lt_4", "g", "h", "i_printed")
_SHARP_REQUIRED = ("a", "b", "c", "node", "e_sharp", "f", "delta_lt_4", "g", "h", "i_direct")


def check_conditions(params: DimensionlessParams, mode: str = "strict") -> ConditionReport:
    """Evaluate all admissibility conditions at ``params``.

    See :class:`ConditionReport` for the strict/sharp semantics.  When
    no stable folded node exists the sharp funnel checks are skipped and
    flagged via ``no_folded_node``.
    """
    if mode not in ("strict", "sharp"):
        raise ValueError(f"mode must be 'strict' or 'sharp', got {mode!r}")
    a, p, m, r = params.a, params.p, params.m, params.r
    d = delta(params)

    checks: dict[str, ConditionCheck] = {}
    checks["a"] = ConditionCheck(p, p > 0.0)
    checks["b"] = ConditionCheck(a, -1.0 < a < 1.0)
    checks["c"] = ConditionCheck(d, d > 0.0)
    d_value = p * p * (a + 1.0) ** 2 - 6.0 * r * d
    checks["d"] = ConditionCheck(d_value, d_value > 0.0)
    e_printed = (
        2.0 * p * p * (a + 1.0) ** 2 / d + 2.0 * p * a - 6.0 * (m + 1.0)
        if d != 0.0
        else math.inf
    )
    checks["e_printed"] = ConditionCheck(e_printed, e_printed < 0.0)
    f_value = p * (a + 1.0)
    checks["f"] = ConditionCheck(f_value, f_value > 2.0)
    checks["delta_lt_4"] = ConditionCheck(d, d < 4.0)
    g_value = 4.0 * (a * p - m) - d
    checks["g"] = ConditionCheck(g_value, g_value > 0.0)
    if m != 0.0:
        h_value = discriminant_delta(a, p, m, d)
        checks["h"] = ConditionCheck(h_value, h_value < 0.0)
    else:
        checks["h"] = ConditionCheck(None, False)
    i_printed = 4.0 * (m + 4.0) - 5.0 * a * p - p
    checks["i_printed"] = ConditionCheck(i_printed, i_printed > 0.0)
    i_variant = 4.0 * (m + 1.0) - 5.0 * a * p - p
    checks["i_variant"] = ConditionCheck(i_variant, i_variant > 0.0)

    fold = jacobian_folded(params, LOWER)
    is_node = fold.classification == STABLE_NODE
    checks["node"] = ConditionCheck(fold.discriminant, is_node)
    zp = z_plus(params)
    if is_node:
        e_sharp = 12.0 * r + abs(fold.eigen_strong) - 2.0 * p - 6.0 * (m + 1.0)
        checks["e_sharp"] = ConditionCheck(e_sharp, e_sharp < 0.0)
        z_star: float | None = fold.z - fold.slope_strong
        checks["i_direct"] = ConditionCheck(z_star - zp, zp < z_star)
    else:
        checks["e_sharp"] = ConditionCheck(None, False)
        checks["i_direct"] = ConditionCheck(None, False)
        z_star = None

    required = _STRICT_REQUIRED if mode == "strict" else _SHARP_REQUIRED
    verdict = all(checks[name].passed for name in required)
    r_max = p * p * (a + 1.0) ** 2 / (6.0 * d) if d > 0.0 else math.inf

    return ConditionReport(
        mode=mode,
        delta=d,
        r_max=r_max,
        z_plus=zp,
        z_star=z_star,
        no_folded_node=not is_node,
        checks=checks,
        required=required,
        verdict=verdict,
    )


def write_orbit_csv(orbit: SingularOrbit, path: str | Path) -> Path:
    """Write the orbit polylines as CSV rows (segment_index, kind, x, z)."""
    path = Path(path)
    lines = ["segment_index,kind,x,z"]
    for idx, seg in enumerate(orbit.segments):
        for x, z in seg.samples:
            lines.append(f"{idx},{seg.kind},{repr(float(x))},{repr(float(z))}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_orbit_json(orbit: SingularOrbit, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(orbit.to_json(), indent=2) + "\n")
    return path
