"""Parameter-region sweeps over (a, p, m) at a fixed fold gap.

Each grid point fixes (a, p, m) and recovers b from the requested fold
gap via b = p(a+1)^2 - m(k+2) - delta, so the whole grid shares one
delta.  Conditions are evaluated per point with
:func:`canardscope.singular.check_conditions`; the subset flag restricts
the verdict to the node-existence conditions (a)-(d), (g), (h), which
yields a superset of the full region on any grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from . import singular
from .params import DimensionlessParams

_CONDITION_LETTERS = ("a", "b", "c", "d", "e", "f", "g", "h", "i")
_SUBSET_REQUIRED = ("a", "b", "c", "d", "g", "h")

# Placeholder only: the admissibility conditions do not involve epsilon.
_SWEEP_EPSILON = 0.01


def derived_b(a: float, p: float, m: float, k: float, delta_value: float) -> float:
    """b making the fold gap equal ``delta_value`` at fixed (a, p, m, k)."""
    return p * (a + 1.0) ** 2 - m * (k + 2.0) - delta_value


@dataclass(frozen=True)
class SweepSpec:
    """Grid specification; each range is (min, max, count) inclusive.

    ``mode`` picks strict or sharp condition forms; ``subset`` restricts
    the verdict to conditions (a)-(d), (g), (h); ``emit`` returns either
    the full grid or only the passing region.  ``k`` and ``lam`` matter
    only when sweep rows seed follow-up simulations; ``r`` enters the
    node conditions directly.
    """

    a_range: tuple[float, float, int]
    p_range: tuple[float, float, int]
    m_range: tuple[float, float, int]
    delta: float
    r: float = 0.3
    k: float = 4.0
    lam: float = 1.0
    mode: str = "strict"
    subset: bool = False
    emit: str = "full"

    def __post_init__(self) -> None:
        for name in ("a_range", "p_range", "m_range"):
            lo, hi, count = getattr(self, name)
            if count < 1:
                raise ValueError(f"{name} count must be >= 1, got {count}")
            if lo > hi:
                raise ValueError(f"{name} must satisfy min <= max, got ({lo}, {hi})")
        if self.mode not in ("strict", "sharp"):
            raise ValueError(f"mode must be 'strict' or 'sharp', got {self.mode!r}")
        if self.emit not in ("full", "region"):
            raise ValueError(f"emit must be 'full' or 'region', got {self.emit!r}")
        if not self.r >= 0.0:
            raise ValueError("r must be nonnegative")


@dataclass(frozen=True)
class RegionRow:
    """One evaluated grid point."""

    a: float
    p: float
    m: float
    delta: float
    conditions: dict[str, bool]
    r_max: float
    verdict: bool


def _axis(rng: tuple[float, float, int]) -> list[float]:
    lo, hi, count = rng
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + step * i for i in range(count)]


def _letter_checks(report: singular.ConditionReport, mode: str) -> dict[str, bool]:
    checks = report.checks
    out = {
        "a": checks["a"].passed,
        "b": checks["b"].passed,
        "c": checks["c"].passed,
        "f": checks["f"].passed,
        "g": checks["g"].passed,
        "h": checks["h"].passed,
    }
    if mode == "strict":
        out["d"] = checks["d"].passed
        out["e"] = checks["e_printed"].passed
        out["i"] = checks["i_printed"].passed
    else:
        out["d"] = checks["node"].passed
        out["e"] = checks["e_sharp"].passed
        out["i"] = checks["i_direct"].passed
    return out


def iter_sweep(spec: SweepSpec) -> Iterator[RegionRow]:
    """Evaluate grid points in row-major order (a outer, p middle, m inner)."""
    for a in _axis(spec.a_range):
        for p in _axis(spec.p_range):
            for m in _axis(spec.m_range):
                b = derived_b(a, p, m, spec.k, spec.delta)
                params = DimensionlessParams(
                    k=spec.k,
                    p=p,
                    a=a,
                    b=b,
                    m=m,
                    lam=spec.lam,
                    r=spec.r,
                    epsilon=_SWEEP_EPSILON,
                )
                report = singular.check_conditions(params, mode=spec.mode)
                letters = _letter_checks(report, spec.mode)
                if spec.subset:
                    verdict = all(letters[name] for name in _SUBSET_REQUIRED)
                else:
                    verdict = report.verdict
                yield RegionRow(
                    a=a,
                    p=p,
                    m=m,
                    delta=report.delta,
                    conditions=letters,
                    r_max=report.r_max,
                    verdict=verdict,
                )


def run_sweep(spec: SweepSpec) -> list[RegionRow]:
    """Evaluate the grid; with ``emit="region"`` only passing rows are kept."""
    rows = list(iter_sweep(spec))
    if spec.emit == "region":
        rows = [row for row in rows if row.verdict]
    return rows


def write_region_csv(rows: Sequence[RegionRow], path: str | Path) -> Path:
    """Write rows as CSV with the fixed region schema.

    Columns: a, p, m, delta, cond_a..cond_i, r_max, verdict.  Floats use
    shortest round-trip decimal form, so identical inputs give byte-
    identical files.
    """
    path = Path(path)
    header = (
        ["a", "p", "m", "delta"]
        + [f"cond_{letter}" for letter in _CONDITION_LETTERS]
        + ["r_max", "verdict"]
    )
    lines = [",".join(header)]
    for row in rows:
        parts = [repr(float(v)) for v in (row.a, row.p, row.m, row.delta)]
        parts.extend(str(int(row.conditions[letter])) for letter in _CONDITION_LETTERS)
        parts.append("inf" if math.isinf(row.r_max) else repr(float(row.r_max)))
        parts.append(str(int(row.verdict)))
        lines.append(",".join(parts))
    path.write_text("\n".join(lines) + "\n")
    return path
