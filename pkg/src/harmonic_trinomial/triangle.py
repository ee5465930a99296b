"""Triangle with sides ``(|a| r**n, |b| r**m, |c|)``: feasibility, angles, and the pivots.

A root of modulus ``r`` makes the three terms of the trinomial sum to zero, so
their lengths must close up into a (possibly flat) triangle.  The angles of that
triangle determine the argument of every root on the circle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import TWO_PI, HarmonicTrinomial
from .errors import NotATriangle, OutsideRegion


class TriangleState(str, enum.Enum):
    """Shape of the side triple; the suffix names the side that equals or beats the others."""

    STRICT = "Strict"
    DEGENERATE_A = "DegenerateA"
    DEGENERATE_B = "DegenerateB"
    DEGENERATE_C = "DegenerateC"
    INFEASIBLE_A = "InfeasibleA"
    INFEASIBLE_B = "InfeasibleB"
    INFEASIBLE_C = "InfeasibleC"

    @property
    def feasible(self) -> bool:
        return not self.value.startswith("Infeasible")

    @property
    def degenerate(self) -> bool:
        return self.value.startswith("Degenerate")


@dataclass(frozen=True)
class TriangleAngles:
    omega1: float  # opposite |a| r**n
    omega2: float  # opposite |b| r**m
    omega3: float  # opposite |c|
    state: TriangleState


def side_lengths(T: HarmonicTrinomial, r: float) -> tuple[float, float, float]:
    ma, mb, mc = T.moduli
    return ma * r**T.n, mb * r**T.m, mc


def triangle_state(
    T: HarmonicTrinomial, r: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> TriangleState:
    l1, l2, l3 = side_lengths(T, r)
    eps = tol.degenerate_rel * (l1 + l2 + l3)
    excess = {"A": l1 - l2 - l3, "B": l2 - l1 - l3, "C": l3 - l1 - l2}
    for side, value in excess.items():
        if value > eps:
            return TriangleState("Infeasible" + side)
    for side, value in excess.items():
        if abs(value) <= eps:
            return TriangleState("Degenerate" + side)
    return TriangleState.STRICT


def _quarter_area_times_four(p: float, q: float, s: float) -> float:
    """Four times the area of a triangle with sides ``p, q, s`` (Kahan's ordering)."""
    x, y, z = sorted((p, q, s), reverse=True)
    prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    return math.sqrt(max(prod, 0.0))


def _angle_opposite(x: float, y: float, z: float, four_area: float) -> float:
    # same value as arccos((y^2 + z^2 - x^2) / (2 y z)) but accurate near 0 and pi
    if y >= z:
        cos_num = (y - x) * (y + x) + z * z
    else:
        cos_num = (z - x) * (z + x) + y * y
    return math.atan2(four_area, cos_num)


def triangle_angles(
    l1: float, l2: float, l3: float, state: TriangleState | None = None
) -> TriangleAngles:
    """Interior angles of the triangle with sides ``l1, l2, l3``.

    ``state`` may be supplied when already known; flat triangles get exact angles.
    """
    if state is None:
        state = TriangleState.STRICT
    if not state.feasible:
        raise NotATriangle(f"sides ({l1:g}, {l2:g}, {l3:g}) violate the triangle inequality")
    if state is TriangleState.DEGENERATE_A:
        w1, w2 = math.pi, 0.0
    elif state is TriangleState.DEGENERATE_B:
        w1, w2 = 0.0, math.pi
    elif state is TriangleState.DEGENERATE_C:
        w1, w2 = 0.0, 0.0
    else:
        k4 = _quarter_area_times_four(l1, l2, l3)
        w1 = _angle_opposite(l1, l2, l3, k4)
        w2 = _angle_opposite(l2, l1, l3, k4)
    return TriangleAngles(w1, w2, math.pi - w1 - w2, state)


def angles(T: HarmonicTrinomial, r: float, tol: Tolerances = DEFAULT_TOLERANCES) -> TriangleAngles:
    state = triangle_state(T, r, tol)
    return triangle_angles(*side_lengths(T, r), state=state)


def omega_star(T: HarmonicTrinomial, r: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``(n*omega1 - m*omega2) / (2*pi)``, extended by constants where no triangle exists.

    Outside the feasible radii the value is 0 (``|c|`` dominates), ``n/2`` (``|a| r**n``
    dominates) or ``-m/2`` (``|b| r**m`` dominates), which makes it continuous in ``r``.
    """
    state = triangle_state(T, r, tol)
    if state in (TriangleState.INFEASIBLE_C, TriangleState.DEGENERATE_C):
        return 0.0
    if state in (TriangleState.INFEASIBLE_A, TriangleState.DEGENERATE_A):
        return T.n / 2
    if state in (TriangleState.INFEASIBLE_B, TriangleState.DEGENERATE_B):
        return -T.m / 2
    tri = triangle_angles(*side_lengths(T, r), state=state)
    return (T.n * tri.omega1 - T.m * tri.omega2) / TWO_PI


def pivot(T: HarmonicTrinomial) -> float:
    """``(n(beta - gamma - pi) + m(alpha - gamma - pi)) / (2*pi)``; gamma vanishes once ``c > 0``."""
    g = T.gamma
    return (T.n * (T.beta - g - math.pi) + T.m * (T.alpha - g - math.pi)) / TWO_PI


@dataclass(frozen=True)
class PivotData:
    """The pivot ``P`` and the two paths ``u -> P - omega_star(u)``, ``u -> P + omega_star(u)``."""

    p_star: float
    trinomial: HarmonicTrinomial
    generic: bool

    def path(self, sign: int, u: float) -> float:
        return self.p_star + sign * omega_star(self.trinomial, u)

    def minus(self, u: float) -> float:
        return self.path(-1, u)

    def plus(self, u: float) -> float:
        return self.path(+1, u)


def is_generic(p: float, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """``2P`` away from the integers, i.e. ``n*beta + m*alpha`` not a multiple of pi."""
    twice = 2.0 * p
    return abs(twice - round(twice)) > tol.integer_hit


def p_star(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> PivotData:
    p = pivot(T)
    return PivotData(p, T, is_generic(p, tol))


def critical_radius(T: HarmonicTrinomial) -> float:
    """``r0 = (m|b| / (n|a|))**(1/(n-m))``, where ``n|a|r**n = m|b|r**m``."""
    ma, mb, _ = T.moduli
    return (T.m * mb / (T.n * ma)) ** (1.0 / (T.n - T.m))


def omega_star_derivative_sign(
    T: HarmonicTrinomial, r: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """Sign of ``d omega_star / dr`` inside the feasible region: -1, 0 or +1.

    The derivative is a positive multiple of ``n|a|r**n - m|b|r**m``, which
    changes sign only at the critical radius.
    """
    if triangle_state(T, r, tol) is not TriangleState.STRICT:
        raise OutsideRegion(f"r={r:g} is not a strict-triangle radius")
    ma, mb, _ = T.moduli
    lead = T.n * ma * r**T.n
    trail = T.m * mb * r**T.m
    diff = lead - trail
    if abs(diff) <= tol.critical_rel * (lead + trail):
        return 0
    return 1 if diff > 0 else -1
