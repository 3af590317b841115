"""Oscillation counting and MMO signature extraction from trajectories.

An oscillation is a confirmed local maximum of x paired with the
preceding local minimum.  It counts as large (LAO) when the excursion
visits both attracting branches, i.e. the maximum exceeds +1 and the
preceding minimum undershoots -1 (both folds crossed); everything else
is small (SAO).  The per-cycle pattern of L large followed by s small
oscillations is compressed into blocks and rendered as "L^s".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

LAO = "LAO"
SAO = "SAO"

DEFAULT_HYSTERESIS = 1e-4


@dataclass(frozen=True)
class Oscillation:
    """One confirmed maximum of the fast variable with its preceding minimum."""

    t_peak: float
    x_max: float
    x_min_before: float
    t_min_before: float

    def to_json(self) -> dict:
        return {
            "t_peak": self.t_peak,
            "x_max": self.x_max,
            "x_min_before": self.x_min_before,
            "t_min_before": self.t_min_before,
            "class": classify(self),
        }


def classify(osc: Oscillation) -> str:
    """LAO when the excursion spans both folds, SAO otherwise."""
    return LAO if (osc.x_max > 1.0 and osc.x_min_before < -1.0) else SAO


def _alternating_extrema(x: np.ndarray, hysteresis: float) -> list[tuple[str, int]]:
    """Alternating extrema confirmed once the signal retreats by ``hysteresis``."""
    out: list[tuple[str, int]] = []
    imax = imin = 0
    mode = None  # None until the first confirmation fixes the phase
    for i in range(1, len(x)):
        xi = x[i]
        if xi > x[imax]:
            imax = i
        if xi < x[imin]:
            imin = i
        if mode != "down" and xi < x[imax] - hysteresis:
            out.append(("max", imax))
            mode = "down"
            imin = i
        elif mode != "up" and xi > x[imin] + hysteresis:
            out.append(("min", imin))
            mode = "up"
            imax = i
    return out


def oscillations_from_series(
    t: Sequence[float],
    x: Sequence[float],
    transient_fraction: float = 0.5,
    hysteresis: float = DEFAULT_HYSTERESIS,
) -> list[Oscillation]:
    """Oscillation records from a sampled series.

    The leading ``transient_fraction`` of the time span is discarded
    before extrema detection.  Fewer than two confirmed extrema means no
    oscillation and yields an empty list.
    """
    if not 0.0 <= transient_fraction < 1.0:
        raise ValueError("transient_fraction must lie in [0, 1)")
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if t.shape != x.shape or t.ndim != 1:
        raise ValueError("t and x must be one-dimensional arrays of equal length")
    if len(t) < 3:
        return []

    t_cut = t[0] + transient_fraction * (t[-1] - t[0])
    start = int(np.searchsorted(t, t_cut, side="left"))
    t = t[start:]
    x = x[start:]
    if len(t) < 3:
        return []

    extrema = _alternating_extrema(x, hysteresis)
    if len(extrema) < 2:
        return []

    records: list[Oscillation] = []
    last_min: int | None = None
    for kind, idx in extrema:
        if kind == "min":
            last_min = idx
            continue
        if last_min is None:
            # First confirmed extremum is a maximum: pair it with the
            # lowest sample seen before the peak inside the window.
            pre = int(np.argmin(x[: idx + 1]))
        else:
            pre = last_min
        records.append(
            Oscillation(
                t_peak=float(t[idx]),
                x_max=float(x[idx]),
                x_min_before=float(x[pre]),
                t_min_before=float(t[pre]),
            )
        )
    return records


def extract_oscillations(
    traj,
    transient_fraction: float = 0.5,
    component: int = 0,
    hysteresis: float = DEFAULT_HYSTERESIS,
) -> list[Oscillation]:
    """Oscillation records from a :class:`~canardscope.integrate.Trajectory`."""
    return oscillations_from_series(
        traj.times, traj.states[:, component], transient_fraction, hysteresis
    )


@dataclass(frozen=True)
class MmoSignature:
    """Compressed oscillation pattern.

    ``blocks`` lists (large count, small count) pairs: the minimal
    repeating cycle when ``periodic``, otherwise the full observed
    sequence.  ``canonical_string`` renders the blocks as "L^s" terms.
    With no large oscillation at all the blocks are empty and the string
    degrades to "0^s" with the observed small-oscillation count.
    """

    blocks: tuple[tuple[int, int], ...]
    periodic: bool
    canonical_string: str
    oscillations: tuple[Oscillation, ...]

    def to_json(self) -> dict:
        return {
            "blocks": [list(block) for block in self.blocks],
            "periodic": self.periodic,
            "canonical_string": self.canonical_string,
            "oscillation_table": [osc.to_json() for osc in self.oscillations],
        }


def _blocks_from_symbols(symbols: Sequence[str]) -> tuple[tuple[int, int], ...]:
    blocks: list[tuple[int, int]] = []
    i = 0
    n = len(symbols)
    while i < n:
        large = 0
        while i < n and symbols[i] == LAO:
            large += 1
            i += 1
        small = 0
        while i < n and symbols[i] == SAO:
            small += 1
            i += 1
        if large == 0:
            break
        blocks.append((large, small))
    return tuple(blocks)


def _minimal_cycle(symbols: Sequence[str]) -> tuple[str, ...] | None:
    """Shortest pattern whose repetition (prefix-truncated) matches symbols.

    Requires at least two full repetitions so a single pass is never
    declared periodic.
    """
    n = len(symbols)
    for period in range(1, n // 2 + 1):
        if all(symbols[i] == symbols[i % period] for i in range(n)):
            return tuple(symbols[:period])
    return None


def _render(blocks: Sequence[tuple[int, int]]) -> str:
    return " ".join(f"{large}^{small}" for large, small in blocks)


def signature_from_series(
    t: Sequence[float],
    x: Sequence[float],
    transient_fraction: float = 0.5,
    hysteresis: float = DEFAULT_HYSTERESIS,
) -> MmoSignature:
    """MMO signature of a sampled series (see :func:`signature`)."""
    osc = oscillations_from_series(t, x, transient_fraction, hysteresis)
    if not osc:
        return MmoSignature(blocks=(), periodic=False, canonical_string="0^0", oscillations=())

    symbols = [classify(o) for o in osc]
    if LAO not in symbols:
        return MmoSignature(
            blocks=(),
            periodic=False,
            canonical_string=f"0^{len(symbols)}",
            oscillations=tuple(osc),
        )

    first = symbols.index(LAO)
    trimmed = symbols[first:]
    cycle = _minimal_cycle(trimmed)
    if cycle is not None:
        blocks = _blocks_from_symbols(cycle)
        return MmoSignature(
            blocks=blocks,
            periodic=True,
            canonical_string=_render(blocks),
            oscillations=tuple(osc),
        )
    blocks = _blocks_from_symbols(trimmed)
    return MmoSignature(
        blocks=blocks,
        periodic=False,
        canonical_string=_render(blocks),
        oscillations=tuple(osc),
    )


def signature(
    traj,
    transient_fraction: float = 0.5,
    component: int = 0,
    hysteresis: float = DEFAULT_HYSTERESIS,
) -> MmoSignature:
    """MMO signature of a trajectory's fast component.

    The LAO/SAO sequence (after transient discard) is compressed into
    blocks; ``periodic`` is set when the sequence is a repetition of a
    minimal cycle observed at least twice, allowing truncation of the
    final partial cycle.
    """
    return signature_from_series(
        traj.times, traj.states[:, component], transient_fraction, hysteresis
    )


def write_signature_json(sig: MmoSignature, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(sig.to_json(), indent=2) + "\n")
    return path


def read_trajectory_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read (t, x) from a trajectory CSV written by this package."""
    path = Path(path)
    rows = path.read_text().strip().splitlines()
    if not rows or not rows[0].startswith("t,"):
        raise ValueError(f"{path} does not look like a trajectory CSV (missing 't,...' header)")
    data = np.array(
        [[float(part) for part in row.split(",")] for row in rows[1:]], dtype=float
    )
    if data.ndim != 2 or data.shape[1] < 2 or not len(data):
        raise ValueError(f"{path} has no usable samples")
    return data[:, 0], data[:, 1]
