"""Closed-form real-root solver for polynomials up to degree three.

Cardano's formula for the one-real-root case, the trigonometric form
for three real roots, and explicit handling of repeated roots at the
discriminant boundary.  A short Newton polish removes most of the
rounding incurred by the radicals.  Degenerate leading coefficients
fall through to the quadratic and linear cases.
"""

from __future__ import annotations

import math

_DEGENERATE_REL = 1e-14


def cubic_discriminant(c3: float, c2: float, c1: float, c0: float) -> float:
    """Discriminant of c3*x^3 + c2*x^2 + c1*x + c0.

    Positive for three distinct real roots, negative for one real root,
    zero when roots coincide.
    """
    return (
        18.0 * c3 * c2 * c1 * c0
        - 4.0 * c2**3 * c0
        + c2**2 * c1**2
        - 4.0 * c3 * c1**3
        - 27.0 * c3**2 * c0**2
    )


def _polish(root: float, c3: float, c2: float, c1: float, c0: float) -> float:
    # Two Newton steps; skipped near multiple roots where the derivative vanishes.
    scale = max(abs(c3), abs(c2), abs(c1), abs(c0), 1.0)
    x = root
    for _ in range(2):
        deriv = (3.0 * c3 * x + 2.0 * c2) * x + c1
        if abs(deriv) < 1e-8 * scale:
            return x
        value = ((c3 * x + c2) * x + c1) * x + c0
        step = value / deriv
        if not math.isfinite(step):
            return x
        x -= step
    return x


def _solve_linear(c1: float, c0: float) -> list[tuple[float, int]]:
    if c1 == 0.0:
        return []
    return [(-c0 / c1, 1)]


def _solve_quadratic(c2: float, c1: float, c0: float) -> list[tuple[float, int]]:
    if abs(c2) <= _DEGENERATE_REL * max(abs(c1), abs(c0)):
        return _solve_linear(c1, c0)
    disc = c1 * c1 - 4.0 * c2 * c0
    scale = max(c1 * c1, abs(4.0 * c2 * c0), 1e-300)
    if abs(disc) <= 4.0 * _DEGENERATE_REL * scale:
        return [(-c1 / (2.0 * c2), 2)]
    if disc < 0.0:
        return []
    # Citardauq form on one root avoids cancellation.
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    r1 = q / c2
    r2 = c0 / q if q != 0.0 else -c1 / c2 - r1
    lo, hi = sorted((r1, r2))
    return [(lo, 1), (hi, 1)]


def solve_cubic(
    c3: float, c2: float, c1: float, c0: float, polish: bool = True
) -> list[tuple[float, int]]:
    """Real roots of c3*x^3 + c2*x^2 + c1*x + c0 with multiplicities.

    Returns (root, multiplicity) pairs sorted by ascending root.  Roots
    are found in closed form; ``polish`` applies Newton correction to
    simple roots.
    """
    coeff_scale = max(abs(c2), abs(c1), abs(c0))
    if abs(c3) <= _DEGENERATE_REL * max(coeff_scale, 1e-300):
        return _solve_quadratic(c2, c1, c0)

    b = c2 / c3
    c = c1 / c3
    d = c0 / c3
    # Depressed form t^3 + pp*t + qq with x = t - b/3.
    shift = b / 3.0
    pp = c - b * b / 3.0
    qq = d - b * c / 3.0 + 2.0 * b**3 / 27.0

    disc = (pp / 3.0) ** 3 + (qq / 2.0) ** 2
    disc_scale = max(abs(pp / 3.0) ** 3, (qq / 2.0) ** 2, 1e-300)

    roots: list[tuple[float, int]]
    if abs(disc) <= 4.0 * _DEGENERATE_REL * disc_scale:
        if abs(qq) <= 1e-300 and abs(pp) <= 1e-300:
            roots = [(-shift, 3)]
        else:
            simple = 3.0 * qq / pp - shift
            double = -1.5 * qq / pp - shift
            roots = [(simple, 1), (double, 2)]
    elif disc > 0.0:
        s = math.sqrt(disc)
        t = _cbrt(-qq / 2.0 + s) + _cbrt(-qq / 2.0 - s)
        roots = [(t - shift, 1)]
    else:
        # Three distinct real roots (trigonometric form; pp < 0 here).
        rho = 2.0 * math.sqrt(-pp / 3.0)
        arg = 3.0 * qq / (pp * rho)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg) / 3.0
        third = 2.0 * math.pi / 3.0
        roots = [(rho * math.cos(theta - third * j) - shift, 1) for j in range(3)]

    if polish:
        roots = [
            (_polish(x, c3, c2, c1, c0) if mult == 1 else x, mult)
            for x, mult in roots
        ]
    roots.sort(key=lambda item: item[0])
    return roots


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)
