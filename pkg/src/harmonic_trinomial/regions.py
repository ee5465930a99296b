"""The set of radii that can carry roots, and the shape of ``omega_star`` on it.

Three signomials govern feasibility of the side triple::

    A(r) =  |a| r**n - |b| r**m - |c|
    B(r) = -|a| r**n + |b| r**m - |c|
    C(r) = -|a| r**n - |b| r**m + |c|

``A`` and ``C`` have exactly one positive root each (``a_break`` and ``c_break``);
``B`` peaks at the critical radius ``r0`` and has zero, one or two positive roots
depending on the sign of that peak.  Strict triangles exist exactly where all
three are negative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import HarmonicTrinomial
from .errors import BracketFailure
from .triangle import critical_radius, omega_star

Signomial = Sequence[tuple[float, float]]

_MAX_GROWTH = 200


class Case(str, enum.Enum):
    I = "I"  # noqa: E741  B stays negative: one interval
    II = "II"  # B touches zero at r0
    III = "III"  # B positive near r0: two intervals around a gap


class RegionTag(str, enum.Enum):
    BELOW_C = "BelowC"
    GAP = "Gap"
    ABOVE_A = "AboveA"
    INSIDE_T = "InsideT"
    BOUNDARY = "Boundary"


class PieceKind(str, enum.Enum):
    DESCENDING = "Descending"
    ASCENDING = "Ascending"


@dataclass(frozen=True)
class Piece:
    """A radius interval on which ``omega_star`` is strictly monotone."""

    lo: float
    hi: float
    start: float  # omega_star(lo)
    end: float  # omega_star(hi)
    kind: PieceKind


@dataclass(frozen=True)
class BisectionResult:
    root: float
    tolerance: float  # final relative bracket width
    iterations: int


@dataclass(frozen=True)
class RegionProfile:
    case: Case
    c_break: float
    a_break: float
    r0: float
    b_breaks: tuple[float, ...]
    plateau: tuple[float, float]
    omega_min: float
    b_max: float  # B(r0), the maximum of B on [0, inf)
    r1: float  # radius above the dip where omega_star returns to 0
    n: int
    m: int

    @property
    def pieces(self) -> list[Piece]:
        return monotone_pieces(self)

    def contains(self, r: float) -> bool:
        """Whether ``r`` is a strict-triangle radius (open intervals)."""
        if not self.c_break < r < self.a_break:
            return False
        if self.case is Case.I:
            return True
        lo, hi = self.plateau
        return not lo <= r <= hi

    def to_dict(self) -> dict:
        b1 = self.b_breaks[0] if self.b_breaks else None
        b2 = self.b_breaks[-1] if self.b_breaks else None
        return {
            "case": self.case.value,
            "c": self.c_break,
            "a": self.a_break,
            "r0": self.r0,
            "b1": b1,
            "b2": b2,
            "omega_min": self.omega_min,
            "plateau": list(self.plateau),
            "b_max": self.b_max,
            "r1": self.r1,
        }


def abc_values(T: HarmonicTrinomial, r: float) -> tuple[float, float, float]:
    ma, mb, mc = T.moduli
    p, q = ma * r**T.n, mb * r**T.m
    return p - q - mc, -p + q - mc, -p - q + mc


def _as_callable(f: Union[Callable[[float], float], Signomial]) -> Callable[[float], float]:
    if callable(f):
        return f
    terms = [(float(coef), float(exp)) for coef, exp in f]
    return lambda r: sum(coef * r**exp for coef, exp in terms)


def solve_signomial_root(
    f: Union[Callable[[float], float], Signomial],
    bracket: tuple[float, float],
    rel_tol: float = DEFAULT_TOLERANCES.bisection_rel,
    max_iter: int = DEFAULT_TOLERANCES.bisection_max_iter,
) -> BisectionResult:
    """Bisection for a sign change of ``f`` on ``bracket``.

    ``f`` is either a callable or a signomial given as ``(coefficient, exponent)``
    pairs, e.g. ``[(1, 2), (-1, 1), (-1, 0)]`` for ``r**2 - r - 1``.
    """
    func = _as_callable(f)
    lo, hi = float(bracket[0]), float(bracket[1])
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = func(lo), func(hi)
    if flo == 0.0:
        return BisectionResult(lo, 0.0, 0)
    if fhi == 0.0:
        return BisectionResult(hi, 0.0, 0)
    if (flo > 0) == (fhi > 0):
        raise BracketFailure(f"no sign change on [{lo:g}, {hi:g}]")
    it = 0
    while it < max_iter:
        width = hi - lo
        if width <= rel_tol * max(abs(lo), abs(hi)):
            break
        mid = lo + 0.5 * width
        if mid <= lo or mid >= hi:
            break
        fmid = func(mid)
        it += 1
        if fmid == 0.0:
            return BisectionResult(mid, 0.0, it)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    root = lo + 0.5 * (hi - lo)
    return BisectionResult(root, (hi - lo) / abs(root) if root else hi - lo, it)


def _grow_until(func: Callable[[float], float], start: float, want_positive: bool) -> float:
    r = start
    for _ in range(_MAX_GROWTH):
        r *= 2.0
        v = func(r)
        if (v > 0) == want_positive and v != 0.0:
            return r
    raise BracketFailure(f"no sign change found above r={start:g}")


def a_break(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    ma, _, mc = T.moduli
    A = lambda r: abc_values(T, r)[0]  # noqa: E731
    lo = 0.5 * (mc / ma) ** (1.0 / T.n)  # A(lo) < -|c| (1 - 2**-n) < 0, robust to rounding
    hi = _grow_until(A, lo, want_positive=True)
    return solve_signomial_root(A, (lo, hi), tol.bisection_rel, tol.bisection_max_iter).root


def c_break(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    ma, mb, mc = T.moduli
    C = lambda r: abc_values(T, r)[2]  # noqa: E731
    # at hi one of the two terms is at least 2|c|, so C(hi) < 0 with room to spare
    hi = 2.0 * min((mc / ma) ** (1.0 / T.n), (mc / mb) ** (1.0 / T.m))
    return solve_signomial_root(C, (0.0, hi), tol.bisection_rel, tol.bisection_max_iter).root


def breakpoints(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> RegionProfile:
    """Case label, breakpoints and dip of ``omega_star`` for ``T``."""
    c_b = c_break(T, tol)
    a_b = a_break(T, tol)
    r0 = critical_radius(T)
    B = lambda r: abc_values(T, r)[1]  # noqa: E731
    b_max = B(r0)
    scale0 = T.scale(r0)

    if abs(b_max) <= tol.collapsed_gap_rel * scale0:
        case = Case.II
        b_breaks: tuple[float, ...] = (r0,)
        plateau = (r0, r0)
        omega_min = -T.m / 2
    elif b_max > 0:
        case = Case.III
        b1 = solve_signomial_root(B, (0.0, r0), tol.bisection_rel, tol.bisection_max_iter).root
        hi = _grow_until(B, r0, want_positive=False)
        b2 = solve_signomial_root(B, (r0, hi), tol.bisection_rel, tol.bisection_max_iter).root
        b_breaks = (b1, b2)
        plateau = (b1, b2)
        omega_min = -T.m / 2
    else:
        case = Case.I
        b_breaks = ()
        if r0 <= c_b:
            plateau = (c_b, c_b)
            omega_min = 0.0
        else:
            plateau = (r0, r0)
            omega_min = omega_star(T, r0, tol)

    d2 = min(plateau[1], a_b)
    if omega_min < 0.0 and d2 < a_b:

        def w(r: float) -> float:
            # pin the endpoint values; the stretch can be narrower than float resolution
            if r <= d2:
                return omega_min
            if r >= a_b:
                return T.n / 2
            return omega_star(T, r, tol)

        r1 = solve_signomial_root(w, (d2, a_b), tol.bisection_rel, tol.bisection_max_iter).root
    else:
        r1 = d2 if omega_min >= 0.0 else a_b
    return RegionProfile(case, c_b, a_b, r0, b_breaks, plateau, omega_min, b_max, r1, T.n, T.m)


def monotone_pieces(profile: RegionProfile) -> list[Piece]:
    """Strictly monotone stretches of ``omega_star``: a descent to the dip, then an ascent.

    Outside them ``omega_star`` is constant: 0 below ``c_break``, ``omega_min`` on the
    plateau and ``n/2`` above ``a_break``.  A piece is kept whenever ``omega_star``
    changes across it, even if rounding has squeezed it to a single radius.
    """
    d1, d2 = profile.plateau
    n_half = profile.n / 2
    pieces = []
    if profile.omega_min < 0.0:
        hi = max(d1, profile.c_break)
        pieces.append(Piece(profile.c_break, hi, 0.0, profile.omega_min, PieceKind.DESCENDING))
    lo = min(d2, profile.a_break)
    pieces.append(Piece(lo, profile.a_break, profile.omega_min, n_half, PieceKind.ASCENDING))
    return pieces


def zero_free_classification(
    T: HarmonicTrinomial,
    r: float,
    profile: RegionProfile | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> RegionTag:
    """Where ``r`` sits relative to the root-carrying radii."""
    if profile is None:
        profile = breakpoints(T, tol)
    marks = [profile.c_break, profile.a_break, *profile.b_breaks]
    if any(abs(r - x) <= tol.degenerate_rel * x for x in marks):
        return RegionTag.BOUNDARY
    if r < profile.c_break:
        return RegionTag.BELOW_C
    if r > profile.a_break:
        return RegionTag.ABOVE_A
    if profile.case is Case.III and profile.plateau[0] < r < profile.plateau[1]:
        return RegionTag.GAP
    return RegionTag.INSIDE_T
