"""Closed-form geometry of the two-word scenario {(1,1,2,2), (1,2,1,2)}.

Writing x = Delta(1,2,1,2) and y = Delta(1,1,2,2), normalized pairs in any
dimension fill exactly the region 0 <= y^2 <= x <= y <= 1; jointly diagonal
pairs sit on the segment x = y in [0, 1]; unnormalized PSD pairs fill the
cone over the region, which closes to {(0, 0)} union {0 < x <= y}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .scenarios import build_scenario
from .states import (
    DensityOperator,
    Realization,
    bargmann,
    designolle_pair,
    obg_states,
)

#: The scenario itself; word order is [(1,1,2,2), (1,2,1,2)] = [y, x].
TWO_WORD_SCENARIO = build_scenario([(1, 1, 2, 2), (1, 2, 1, 2)])

ANALYTIC_TOL = 1e-10

__all__ = [
    "TWO_WORD_SCENARIO",
    "ANALYTIC_TOL",
    "TwoWordPoint",
    "two_word_point",
    "two_word_membership",
    "two_word_cone_membership",
    "qubit_closed_form",
    "obg_curve",
    "designolle_curve",
    "spectroscopy_vector",
]


@dataclass(frozen=True)
class TwoWordPoint:
    """x = Delta(1,2,1,2), y = Delta(1,1,2,2)."""

    x: float
    y: float


def two_word_point(realization: Realization) -> TwoWordPoint:
    """Evaluate both two-word invariants of a pair; real parts (both words
    are reversal-symmetric up to rotation, so the values are real)."""
    y = bargmann(realization, (1, 1, 2, 2))
    x = bargmann(realization, (1, 2, 1, 2))
    return TwoWordPoint(x=float(x.real), y=float(y.real))


def two_word_membership(point: TwoWordPoint, tol: float = ANALYTIC_TOL) -> str:
    """Verdict for the normalized-pair region 0 <= y^2 <= x <= y <= 1.

    "outside" when any of the three slacks x - y^2, y - x, 1 - y drops below
    -tol, "boundary" when all pass but one is within tol of zero, otherwise
    "inside".
    """
    x, y = point.x, point.y
    slacks = (x - y * y, y - x, 1.0 - y)
    if any(s < -tol for s in slacks):
        return "outside"
    if any(s <= tol for s in slacks):
        return "boundary"
    return "inside"


def two_word_cone_membership(point: TwoWordPoint) -> bool:
    """Membership in the closed cone over the normalized region:
    the origin, or 0 < x <= y."""
    x, y = point.x, point.y
    if x == 0.0 and y == 0.0:
        return True
    return 0.0 < x <= y


def qubit_closed_form(r: float, s: float, theta: float) -> TwoWordPoint:
    """Two-word invariants of the Bloch pair (r, s, theta) in closed form:

    y = (1 + r^2 + s^2 + r^2 s^2 + 4 r s cos(theta)) / 8
    x = (1 + r^2 + s^2 - r^2 s^2 + 4 r s cos(theta) + 2 r^2 s^2 cos^2(theta)) / 8
    """
    r, s, theta = float(r), float(s), float(theta)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    c = np.cos(theta)
    r2, s2 = r * r, s * s
    y = (1.0 + r2 + s2 + r2 * s2 + 4.0 * r * s * c) / 8.0
    x = (1.0 + r2 + s2 - r2 * s2 + 4.0 * r * s * c + 2.0 * r2 * s2 * c * c) / 8.0
    return TwoWordPoint(x=x, y=y)


def obg_curve(theta: float) -> TwoWordPoint:
    """Two-word point of the n=2 phase-star pair: exactly (y^2, y) with
    y = cos^2(theta), tracing the lower boundary x = y^2."""
    c = np.cos(float(theta))
    y = c * c
    return TwoWordPoint(x=y * y, y=y)


def designolle_curve(omega: float) -> TwoWordPoint:
    """Two-word point of the interpolated pair at ``omega``, by direct matrix
    evaluation (no closed form is used)."""
    return two_word_point(designolle_pair(omega))


def spectroscopy_vector(rho: DensityOperator, d: int | None = None) -> np.ndarray:
    """Moment vector (Tr rho^k) for k = 1..d (default: the dimension).

    d moments determine the spectrum of a d-dimensional state, so this is a
    complete single-state invariant.
    """
    if d is None:
        d = rho.dimension
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    out = np.empty(d, dtype=float)
    power = rho.matrix
    out[0] = float(power.trace().real)
    for k in range(1, d):
        power = power @ rho.matrix
        out[k] = float(power.trace().real)
    return out


def _obg_two_word_check(theta: float) -> TwoWordPoint:
    """Matrix-evaluated two-word point of obg_states(2, theta); used by tests
    to confirm the closed-form curve."""
    return two_word_point(obg_states(2, theta))
