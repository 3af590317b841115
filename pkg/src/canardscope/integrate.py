"""Adaptive explicit integration with dense output and event location.

A single method is provided: the Dormand-Prince 5(4) embedded pair
("rk54"), propagating the fifth-order solution with the FSAL stage
reused across steps.  Local error is controlled against
``rtol * |state| + atol`` per component.  Dense output is a cubic
Hermite interpolant on each accepted step, which is what event
bisection refines against: an event is reported when the selected
component is within 1e-10 of its threshold.

The solver is explicit by design.  Stiff three-timescale runs
(epsilon below ~1e-3 with small r) remain correct but take many small
steps; expect long runtimes there rather than failures.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import NonFiniteDerivativeError, StepUnderflowError

EVENT_VALUE_TOL = 1e-10

RISING = "rising"
FALLING = "falling"
BOTH = "both"

_COMPONENT_LETTERS = {"x": 0, "y": 1, "z": 2}

# Dormand-Prince 5(4) tableau.  The last row of _A equals the propagating
# weights, so stage 7 evaluates the new solution (FSAL).
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_SAFETY = 0.9
_ORDER_EXPONENT = -0.2  # embedded error is O(h^5)


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-8
    atol: float = 1e-10
    h_init: float | None = None
    h_max: float = math.inf
    max_steps: int = 2_000_000
    method: str = "rk54"

    def __post_init__(self) -> None:
        if not (self.rtol > 0.0 and self.atol > 0.0):
            raise ValueError("rtol and atol must be strictly positive")
        if not self.h_max > 0.0:
            raise ValueError("h_max must be strictly positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be a positive integer")
        if self.method != "rk54":
            raise ValueError(f"unsupported method {self.method!r}; only 'rk54' is available")
        if self.h_init is not None and not self.h_init > 0.0:
            raise ValueError("h_init must be strictly positive when given")

    def to_json(self) -> dict:
        return {
            "rtol": self.rtol,
            "atol": self.atol,
            "h_init": self.h_init,
            "h_max": None if math.isinf(self.h_max) else self.h_max,
            "max_steps": self.max_steps,
            "method": self.method,
        }


@dataclass(frozen=True)
class EventSpec:
    """Directional threshold crossing of one state component.

    ``component`` is a 0-based index or one of the letters "x", "y", "z"
    (mapped to 0, 1, 2).  ``direction`` selects crossings from below
    ("rising"), from above ("falling"), or either ("both").  Terminal
    events stop the integration at the located crossing.
    """

    component: int | str
    threshold: float
    direction: str = BOTH
    terminal: bool = False

    def __post_init__(self) -> None:
        if not math.isfinite(self.threshold):
            raise ValueError("event threshold must be finite")
        if self.direction not in (RISING, FALLING, BOTH):
            raise ValueError(f"unknown event direction {self.direction!r}")

    @property
    def index(self) -> int:
        if isinstance(self.component, str):
            try:
                return _COMPONENT_LETTERS[self.component]
            except KeyError:
                raise ValueError(f"unknown component letter {self.component!r}") from None
        return int(self.component)


@dataclass(frozen=True)
class EventRecord:
    spec_index: int
    t: float
    state: np.ndarray
    direction: str


@dataclass(frozen=True)
class StepStats:
    accepted: int
    rejected: int

    def to_json(self) -> dict:
        return {"accepted": self.accepted, "rejected": self.rejected}


@dataclass
class Trajectory:
    """Accepted integration nodes with derivatives for dense evaluation."""

    times: np.ndarray
    states: np.ndarray
    derivs: np.ndarray
    step_stats: StepStats
    truncated: bool = False
    config: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __len__(self) -> int:
        return len(self.times)

    def sample(self, t: float) -> np.ndarray:
        """Dense-output state at time t (cubic Hermite between nodes)."""
        times = self.times
        if not times[0] <= t <= times[-1]:
            raise ValueError(f"t={t} outside stored range [{times[0]}, {times[-1]}]")
        i = int(np.searchsorted(times, t, side="right")) - 1
        i = min(max(i, 0), len(times) - 2)
        h_step = times[i + 1] - times[i]
        theta = (t - times[i]) / h_step
        return _hermite(
            self.states[i], self.states[i + 1], self.derivs[i], self.derivs[i + 1], h_step, theta
        )


def _hermite(y0, y1, f0, f1, h_step, theta):
    t2 = theta * theta
    t3 = t2 * theta
    return (
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + theta) * h_step * f0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h_step * f1
    )


def _error_norm(err: np.ndarray, y0: np.ndarray, y1: np.ndarray, rtol: float, atol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    ratio = err / scale
    return float(np.sqrt(np.mean(ratio * ratio)))


def _initial_step(rhs, t0, y0, f0, rtol, atol, h_cap):
    scale = atol + rtol * np.abs(y0)
    d0 = float(np.sqrt(np.mean((y0 / scale) ** 2)))
    d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, h_cap)
    y1 = y0 + h0 * f0
    f1 = np.asarray(rhs(t0 + h0, y1), dtype=float)
    d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, h_cap)


def _first_crossing(spec: EventSpec, t_left, h_step, y0, y1, f0, f1):
    """Earliest directional crossing of ``spec`` inside one accepted step.

    Scans the Hermite interpolant on a coarse grid to bracket the first
    crossing, then bisects until the component value is within
    EVENT_VALUE_TOL of the threshold.  Returns (theta, t, state) or None.
    """
    idx = spec.index
    thr = spec.threshold

    n_scan = 8
    thetas = [j / n_scan for j in range(n_scan + 1)]
    values = []
    for theta in thetas:
        if theta == 0.0:
            values.append(float(y0[idx]) - thr)
        elif theta == 1.0:
            values.append(float(y1[idx]) - thr)
        else:
            values.append(float(_hermite(y0, y1, f0, f1, h_step, theta)[idx]) - thr)

    def matches(lo_val: float, hi_val: float) -> str | None:
        if spec.direction in (RISING, BOTH) and lo_val < 0.0 <= hi_val:
            return RISING
        if spec.direction in (FALLING, BOTH) and lo_val > 0.0 >= hi_val:
            return FALLING
        return None

    for j in range(n_scan):
        found = matches(values[j], values[j + 1])
        if found is None:
            continue
        lo, hi = thetas[j], thetas[j + 1]
        g_lo = values[j]
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            g_mid = float(_hermite(y0, y1, f0, f1, h_step, mid)[idx]) - thr
            if abs(g_mid) < EVENT_VALUE_TOL:
                lo = hi = mid
                break
            same_side = (g_mid < 0.0) == (g_lo < 0.0)
            if same_side:
                lo, g_lo = mid, g_mid
            else:
                hi = mid
        theta_star = 0.5 * (lo + hi)
        state = _hermite(y0, y1, f0, f1, h_step, theta_star)
        return theta_star, t_left + theta_star * h_step, state, found
    return None


def integrate(
    vector_field: Callable[[float, np.ndarray], np.ndarray],
    initial: Sequence[float],
    t_span: tuple[float, float],
    config: IntegratorConfig | None = None,
) -> Trajectory:
    """Integrate ``vector_field`` over ``t_span`` from ``initial``.

    Deterministic for identical inputs.  If ``max_steps`` is exhausted
    the partial trajectory is returned with ``truncated=True``.
    """
    traj, _ = integrate_with_events(vector_field, initial, t_span, config, events=())
    return traj


def integrate_with_events(
    vector_field: Callable[[float, np.ndarray], np.ndarray],
    initial: Sequence[float],
    t_span: tuple[float, float],
    config: IntegratorConfig | None = None,
    events: Sequence[EventSpec] = (),
) -> tuple[Trajectory, list[EventRecord]]:
    """Integrate while locating directional threshold crossings.

    Every accepted step is scanned for each event; crossings are refined
    on the dense output until the component sits within 1e-10 of the
    threshold.  A terminal event truncates the trajectory at the located
    point, which becomes its final node.
    """
    cfg = config or IntegratorConfig()
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError(f"t_span must be increasing, got {t_span!r}")

    y = np.asarray(initial, dtype=float).copy()
    if y.ndim != 1:
        raise ValueError("initial state must be one-dimensional")
    t = t0
    k1 = np.asarray(vector_field(t, y), dtype=float)
    _require_finite(k1, t)

    h_cap = min(cfg.h_max, t1 - t0)
    h_step = cfg.h_init if cfg.h_init is not None else _initial_step(
        vector_field, t, y, k1, cfg.rtol, cfg.atol, h_cap
    )
    h_step = min(h_step, h_cap)

    times = [t]
    states = [y.copy()]
    derivs = [k1.copy()]
    event_log: list[EventRecord] = []

    n_accepted = 0
    n_rejected = 0
    truncated = False
    stages: list[np.ndarray] = [k1] + [np.empty_like(y) for _ in range(6)]

    while t < t1:
        if n_accepted + n_rejected >= cfg.max_steps:
            truncated = True
            break
        h_step = min(h_step, t1 - t)
        if h_step <= abs(t) * 1e-16 + 1e-300:
            raise StepUnderflowError(f"step size underflow at t={t!r}")

        for i in range(1, 7):
            acc = stages[0] * _A[i][0]
            for j in range(1, i):
                acc = acc + stages[j] * _A[i][j]
            stages[i] = np.asarray(
                vector_field(t + _C[i] * h_step, y + h_step * acc), dtype=float
            )
        y_new = y + h_step * (
            stages[0] * _A[6][0]
            + stages[2] * _A[6][2]
            + stages[3] * _A[6][3]
            + stages[4] * _A[6][4]
            + stages[5] * _A[6][5]
        )
        k_new = stages[6]  # FSAL: f(t + h, y_new) was stage 7
        if not np.all(np.isfinite(y_new)) or not np.all(np.isfinite(k_new)):
            _require_finite(k_new, t + h_step)
            raise NonFiniteDerivativeError(f"non-finite state produced at t={t + h_step!r}")

        err = h_step * (
            stages[0] * _E[0]
            + stages[2] * _E[2]
            + stages[3] * _E[3]
            + stages[4] * _E[4]
            + stages[5] * _E[5]
            + stages[6] * _E[6]
        )
        err_norm = _error_norm(err, y, y_new, cfg.rtol, cfg.atol)

        if err_norm > 1.0:
            n_rejected += 1
            factor = max(_MIN_FACTOR, _SAFETY * err_norm**_ORDER_EXPONENT)
            h_step = h_step * factor
            continue

        terminal_hit = None
        step_hits = []
        for spec_index, spec in enumerate(events):
            hit = _first_crossing(spec, t, h_step, y, y_new, stages[0], k_new)
            if hit is not None:
                step_hits.append((hit[0], spec_index, hit[1], hit[2], hit[3]))
        step_hits.sort(key=lambda item: item[0])
        for theta, spec_index, t_e, y_e, direction in step_hits:
            if events[spec_index].terminal:
                terminal_hit = (theta, spec_index, t_e, y_e, direction)
                break
        if terminal_hit is not None:
            cutoff = terminal_hit[0]
            step_hits = [hit for hit in step_hits if hit[0] <= cutoff]

        for theta, spec_index, t_e, y_e, direction in step_hits:
            event_log.append(
                EventRecord(spec_index=spec_index, t=t_e, state=y_e.copy(), direction=direction)
            )

        n_accepted += 1
        if terminal_hit is not None:
            _, _, t_e, y_e, _ = terminal_hit
            times.append(t_e)
            states.append(y_e.copy())
            derivs.append(np.asarray(vector_field(t_e, y_e), dtype=float))
            t = t_e
            break

        t = t + h_step
        y = y_new
        stages[0] = k_new
        times.append(t)
        states.append(y.copy())
        derivs.append(k_new.copy())

        if err_norm == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err_norm**_ORDER_EXPONENT))
        h_step = min(h_step * factor, cfg.h_max)

    traj = Trajectory(
        times=np.array(times),
        states=np.array(states),
        derivs=np.array(derivs),
        step_stats=StepStats(accepted=n_accepted, rejected=n_rejected),
        truncated=truncated,
        config=cfg,
    )
    return traj, event_log


def _require_finite(values: np.ndarray, t: float) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteDerivativeError(f"vector field returned a non-finite derivative at t={t!r}")


def write_trajectory_csv(
    traj: Trajectory,
    path: str | Path,
    columns: Sequence[str] = ("x", "y", "z"),
) -> Path:
    """Write nodes as CSV (t plus one column per component) with a JSON sidecar.

    The sidecar, written next to the CSV with a ``.json`` suffix, records
    the integrator configuration and step statistics.
    """
    path = Path(path)
    dim = traj.states.shape[1]
    names = list(columns[:dim])
    if len(names) != dim:
        names = [f"y{i}" for i in range(dim)]
    lines = ["t," + ",".join(names)]
    for i in range(len(traj.times)):
        row = [repr(float(traj.times[i]))]
        row.extend(repr(float(v)) for v in traj.states[i])
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")

    sidecar = path.with_suffix(".json")
    sidecar.write_text(
        json.dumps(
            {
                "config": traj.config.to_json(),
                "step_stats": traj.step_stats.to_json(),
                "truncated": traj.truncated,
                "samples": len(traj.times),
            },
            indent=2,
        )
        + "\n"
    )
    return path
