"""Exact zero counting by integer crossings of the pivot paths.

For a coprime instance with ``c > 0`` a root of modulus ``r`` inside the strict
triangle region exists exactly when ``P - omega_star(r)`` or ``P + omega_star(r)``
is an integer, and each such integer hit pins down exactly one argument.  Since
``omega_star`` is strictly monotone on at most two pieces, the roots are found by
enumerating the integers swept by each path on each piece and bisecting for the
radius of every crossing.

Hits that land exactly on a piece endpoint (flat triangles, or the bottom of the
dip) are not crossings in this sense; they are resolved by perturbing the phase
of ``b`` in both directions and keeping what the two perturbed instances agree on.
"""

from __future__ import annotations

import bisect
import cmath
import functools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import TWO_PI, HarmonicTrinomial, evaluate, normalize, wirtinger
from .errors import FallbackDisagreement, NoCandidate, NonCoprime
from .regions import Piece, PieceKind, RegionProfile, breakpoints, monotone_pieces, solve_signomial_root
from .triangle import TriangleState, angles, is_generic, omega_star, pivot, triangle_state

log = logging.getLogger(__name__)

OUTER_REGIME_FLAG = "paper_eq_1_10_case3_mismatch"


@dataclass(frozen=True)
class JumpEvent:
    """One root circle contribution: ``P + path * omega_star(radius) == k``."""

    radius: float
    path: int  # +1 or -1
    k: int
    piece: PieceKind
    transversal: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "radius": self.radius,
            "path": "+" if self.path > 0 else "-",
            "k": self.k,
            "piece": self.piece.value,
            "transversal": self.transversal,
        }


@dataclass(frozen=True)
class CountResult:
    count: int
    jumps_used: list[JumpEvent]
    boundary_warnings: list[tuple[float, float]]
    generic: bool
    radius: float
    gcd: int = 1
    closed_disk: bool = False
    fallback_used: bool = False
    outer_regime_claim: int | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return bool(self.boundary_warnings)

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.radius,
            "count": self.count,
            "gcd": self.gcd,
            "closed_disk": self.closed_disk,
            "generic": self.generic,
            "fallback_used": self.fallback_used,
            "jumps_used": [e.to_dict() for e in self.jumps_used],
            "boundary_warnings": [
                {"radius": rad, "distance": dist} for rad, dist in self.boundary_warnings
            ],
            "paper_eq_1_10_case3": self.outer_regime_claim,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class JumpResolution:
    """Final jump list of a coprime instance plus how it was obtained."""

    events: tuple[JumpEvent, ...]
    raw: tuple[JumpEvent, ...]
    fallback_used: bool = False
    disagreement: bool = False
    shift: float | None = None


@dataclass(frozen=True)
class DegeneracyReport:
    generic: bool
    two_p_star: float
    degenerate_circles_root_free: bool
    endpoint_hits: list[JumpEvent]
    coincident_radii: list[float]

    @property
    def fallback_required(self) -> bool:
        return bool(self.endpoint_hits)

    def to_dict(self) -> dict[str, Any]:
        return {
            "generic": self.generic,
            "two_p_star": self.two_p_star,
            "degenerate_circles_root_free": self.degenerate_circles_root_free,
            "fallback_required": self.fallback_required,
            "endpoint_hits": [e.to_dict() for e in self.endpoint_hits],
            "coincident_radii": list(self.coincident_radii),
        }


# --- crossings -----------------------------------------------------------------


def _require_coprime(T: HarmonicTrinomial) -> None:
    if math.gcd(T.n, T.m) != 1:
        raise NonCoprime(f"gcd({T.n}, {T.m}) != 1; reduce the exponents first")


def _crossing_radius(T: HarmonicTrinomial, piece: Piece, target: float, tol: Tolerances) -> float:
    if piece.hi <= piece.lo:
        return piece.lo

    def g(r: float) -> float:
        # endpoints carry their exact theoretical values
        if r <= piece.lo:
            value = piece.start
        elif r >= piece.hi:
            value = piece.end
        else:
            value = omega_star(T, r, tol)
        return value - target

    return solve_signomial_root(g, (piece.lo, piece.hi), tol.bisection_rel, tol.bisection_max_iter).root


def _endpoint_values(P: float, piece: Piece, sign: int) -> tuple[float, float]:
    return P + sign * piece.start, P + sign * piece.end


def _scan_pieces(
    T: HarmonicTrinomial, profile: RegionProfile, P: float, tol: Tolerances
) -> list[JumpEvent]:
    events: list[JumpEvent] = []
    endpoint: dict[tuple[float, int, int], JumpEvent] = {}
    eps = tol.integer_hit
    for piece in monotone_pieces(profile):
        for sign in (-1, +1):
            v0, v1 = _endpoint_values(P, piece, sign)
            lo, hi = min(v0, v1), max(v0, v1)
            for k in range(math.ceil(lo - eps), math.floor(hi + eps) + 1):
                if abs(k - v0) <= eps:
                    where = piece.lo
                elif abs(k - v1) <= eps:
                    where = piece.hi
                else:
                    radius = _crossing_radius(T, piece, sign * (k - P), tol)
                    events.append(JumpEvent(radius, sign, k, piece.kind, True))
                    continue
                key = (where, sign, k)
                if key not in endpoint:
                    endpoint[key] = JumpEvent(where, sign, k, piece.kind, False)
    events.extend(endpoint.values())
    events.sort(key=lambda e: (e.radius, e.path, e.k))
    return events


def jump_radii(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> list[JumpEvent]:
    """Every integer hit of the two pivot paths on the monotone pieces of ``omega_star``.

    Hits strictly inside a piece are transversal crossings, each carrying exactly one
    root.  Hits at a piece endpoint are returned with ``transversal=False``; how many
    roots they carry is decided by :func:`perturbation_fallback`.
    """
    _require_coprime(T)
    return _scan_pieces(T, breakpoints(T, tol), pivot(T), tol)


# --- perturbation fallback -----------------------------------------------------


def _clearance_ok(profile: RegionProfile, P: float, tol: Tolerances) -> bool:
    for piece in monotone_pieces(profile):
        for sign in (-1, +1):
            for v in _endpoint_values(P, piece, sign):
                if abs(v - round(v)) < tol.perturb_clearance:
                    return False
    return True


def _phase_shifted(T: HarmonicTrinomial, shift: float) -> HarmonicTrinomial:
    # rotating b by delta moves the pivot by n * delta / (2 pi)
    delta = TWO_PI * shift / T.n
    return replace(T, b=T.b * cmath.exp(1j * delta))


def _close(x: float, y: float, rel: float) -> bool:
    return abs(x - y) <= rel * max(abs(x), abs(y))


def _match_perturbed(
    raw: list[JumpEvent], plus: list[JumpEvent], minus: list[JumpEvent], tol: Tolerances
) -> list[JumpEvent] | None:
    """Reconcile the two perturbed jump lists with the unperturbed candidates.

    Returns ``None`` when the perturbations disagree or leave unexplained events.
    """
    rel = tol.perturb_match_rel
    rp = sorted(e.radius for e in plus)
    rm = sorted(e.radius for e in minus)
    if len(rp) != len(rm) or not all(_close(x, y, rel) for x, y in zip(rp, rm)):
        return None

    remaining = list(rp)
    final: list[JumpEvent] = []
    for e in (e for e in raw if e.transversal):
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - e.radius), default=None)
        if j is None or not _close(remaining[j], e.radius, rel):
            return None
        remaining.pop(j)
        final.append(e)

    hits = [e for e in raw if not e.transversal]
    used: dict[float, int] = {}
    for r in remaining:
        near = [e for e in hits if _close(e.radius, r, rel)]
        if not near:
            return None
        radius = min({e.radius for e in near}, key=lambda x: abs(x - r))
        at_radius = [e for e in near if e.radius == radius]
        i = used.get(radius, 0)
        final.append(at_radius[i % len(at_radius)])
        used[radius] = i + 1
    final.sort(key=lambda e: (e.radius, e.path, e.k))
    return final


def _oracle_events(T: HarmonicTrinomial, raw: list[JumpEvent]) -> list[JumpEvent]:
    from .oracle import find_all_roots  # circular at import time

    moduli = [abs(root.z) for root in find_all_roots(T).roots]
    final = [e for e in raw if e.transversal]
    by_radius: dict[float, list[JumpEvent]] = {}
    for e in raw:
        if not e.transversal:
            by_radius.setdefault(e.radius, []).append(e)
    for radius, hits in by_radius.items():
        count = sum(1 for mod in moduli if _close(mod, radius, 1e-6))
        final.extend(hits[i % len(hits)] for i in range(count))
    final.sort(key=lambda e: (e.radius, e.path, e.k))
    return final


def _fallback(
    T: HarmonicTrinomial, raw: list[JumpEvent], tol: Tolerances, use_oracle: bool
) -> JumpResolution:
    profile = breakpoints(T, tol)
    P = pivot(T)
    shift = tol.perturb_shift
    pair = None
    for _ in range(tol.perturb_attempts):
        if _clearance_ok(profile, P + shift, tol) and _clearance_ok(profile, P - shift, tol):
            plus_t, minus_t = _phase_shifted(T, shift), _phase_shifted(T, -shift)
            pair = (
                _scan_pieces(plus_t, profile, pivot(plus_t), tol),
                _scan_pieces(minus_t, profile, pivot(minus_t), tol),
            )
            if all(e.transversal for side in pair for e in side):
                break
            pair = None
        shift *= 1.5

    matched = None if pair is None else _match_perturbed(raw, pair[0], pair[1], tol)
    if matched is not None:
        return JumpResolution(tuple(matched), tuple(raw), True, False, shift)

    msg = f"perturbed jump lists disagree for {T!r}"
    if not use_oracle:
        raise FallbackDisagreement(msg)
    log.warning("%s; deferring to the numerical oracle", msg)
    return JumpResolution(tuple(_oracle_events(T, raw)), tuple(raw), True, True, shift)


@functools.lru_cache(maxsize=512)
def resolve_jumps(
    T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES, use_oracle: bool = True
) -> JumpResolution:
    """Final jump list for a coprime instance, engaging the fallback only when needed."""
    raw = jump_radii(T, tol)
    if all(e.transversal for e in raw):
        return JumpResolution(tuple(raw), tuple(raw))
    return _fallback(T, raw, tol, use_oracle)


def perturbation_fallback(
    T: HarmonicTrinomial,
    tol: Tolerances = DEFAULT_TOLERANCES,
    use_oracle: bool = True,
) -> list[JumpEvent]:
    """Resolve endpoint hits by comparing the instances with ``arg b`` nudged both ways.

    The nudge moves the pivot by a small ``shift`` (``1e-6`` by default, grown if a
    perturbed endpoint lands too near an integer).  Radii found by both perturbed
    instances are snapped back to the unperturbed crossings and endpoint radii.
    Without agreement the oracle arbitrates, or :class:`FallbackDisagreement` is raised
    when ``use_oracle`` is false.
    """
    return list(resolve_jumps(T, tol, use_oracle).events)


# --- counts ----------------------------------------------------------------------


def _pull_back(e: JumpEvent, d: int) -> JumpEvent:
    return e if d == 1 else replace(e, radius=e.radius ** (1.0 / d))


def count_roots_in_disk(
    T: HarmonicTrinomial,
    r: float,
    *,
    closed: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
    use_oracle: bool = True,
) -> CountResult:
    """Number of zeros of ``T`` with ``|z| < r`` (``<= r`` when ``closed``)."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    N, d = normalize(T)
    s = r**d
    generic = is_generic(pivot(N), tol)
    flags: list[str] = []

    outer_claim = None
    if triangle_state(T, r, tol) is TriangleState.INFEASIBLE_A:
        outer_claim = T.n + 2 * T.m

    state = triangle_state(N, s, tol)
    if state in (TriangleState.INFEASIBLE_C, TriangleState.DEGENERATE_C) and not closed:
        return CountResult(0, [], [], generic, r, d, closed, False, outer_claim, flags)

    res = resolve_jumps(N, tol, use_oracle)
    if closed:
        used = [e for e in res.events if e.radius <= s * (1.0 + tol.closed_disk_rel)]
    else:
        used = [e for e in res.events if e.radius < s]
    jumps = [_pull_back(e, d) for e in used]
    warnings = []
    for e in res.events:
        rad = _pull_back(e, d).radius
        if abs(rad - r) <= tol.boundary_rel * r:
            warnings.append((rad, abs(rad - r)))
    count = d * len(used)
    if outer_claim is not None and outer_claim != count:
        flags.append(OUTER_REGIME_FLAG)
    if res.disagreement:
        flags.append("fallback_disagreement_resolved_by_oracle")
    return CountResult(count, jumps, warnings, generic, r, d, closed, res.fallback_used, outer_claim, flags)


def total_root_count(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    N, d = normalize(T)
    return d * len(resolve_jumps(N, tol).events)


def all_jump_events(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> list[JumpEvent]:
    """Resolved jumps of ``T`` in its own radius scale, one entry per root circle family.

    With ``d = gcd(n, m) > 1`` every listed event stands for ``d`` roots.
    """
    N, d = normalize(T)
    return [_pull_back(e, d) for e in resolve_jumps(N, tol).events]


def count_profile(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> list[tuple[float, int]]:
    """Step function ``r -> #{|z| < r}`` as ``(jump radius, count just after it)`` rows."""
    _, d = normalize(T)
    rows: list[tuple[float, int]] = []
    total = 0
    for e in all_jump_events(T, tol):
        total += d
        if rows and _close(rows[-1][0], e.radius, tol.same_radius_rel):
            rows[-1] = (rows[-1][0], total)
        else:
            rows.append((e.radius, total))
    return rows


def count_from_profile(profile: list[tuple[float, int]], r: float) -> int:
    """Open-disk count read off a step profile."""
    radii = [row[0] for row in profile]
    i = bisect.bisect_left(radii, r)
    return profile[i - 1][1] if i else 0


# --- analytic roots ------------------------------------------------------------


def _wrap(x: float) -> float:
    """Distance of ``x`` to the nearest multiple of ``2 pi``."""
    return abs(x - TWO_PI * round(x / TWO_PI))


def _polish(T: HarmonicTrinomial, z: complex, steps: int = 4) -> complex:
    """A few Newton steps on the real system ``(Re f, Im f) = 0``."""
    for _ in range(steps):
        f = evaluate(T, z)
        p, q = wirtinger(T, z)
        det = abs(p) ** 2 - abs(q) ** 2
        if det == 0.0:
            break
        z = z + (q * f.conjugate() - p.conjugate() * f) / det
    return z


def roots_on_circle(
    T: HarmonicTrinomial, e: JumpEvent, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[complex]:
    """The roots on ``|z| = e.radius`` belonging to the event's path.

    For path ``-1`` the arguments solve ``alpha + n t = pi - omega2`` and
    ``beta - m t = pi + omega1`` (mod ``2 pi``); path ``+1`` flips the signs of
    both angles.  Arguments are measured after rotating ``c`` onto the positive axis.

    On very thin triangles the angles swing across ``[0, pi]`` within a few ulps of
    radius, so the second congruence may miss by more than ``tol.congruence``; the
    closest candidate is then kept (coprime exponents make it unique) and polished
    by Newton steps before the residual test.
    """
    _require_coprime(T)
    r = e.radius
    tri = angles(T, r, tol)
    g = T.gamma
    alpha, beta = T.alpha - g, T.beta - g
    first = math.pi + e.path * tri.omega2
    second = math.pi - e.path * tri.omega1
    scale = T.scale(r)
    thetas = [(first - alpha + TWO_PI * j) / T.n for j in range(T.n)]
    misfit = [_wrap(beta - T.m * t - second) for t in thetas]
    picked = [t for t, d in zip(thetas, misfit) if d <= tol.congruence]
    if not picked:
        best = min(range(T.n), key=misfit.__getitem__)
        if misfit[best] < math.pi / T.n:
            picked = [thetas[best]]
    out: list[complex] = []
    for theta in picked:
        z = cmath.rect(r, theta)
        if abs(evaluate(T, z)) >= tol.circle_residual * scale:
            z = _polish(T, z)
        if abs(evaluate(T, z)) < tol.circle_residual * scale:
            out.append(z)
    if not out:
        raise NoCandidate(f"no root found on |z| = {r:.12g} for {e}")
    return out


def analytic_roots(T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES) -> list[complex]:
    """All roots of ``T`` rebuilt from the resolved jump events."""
    N, d = normalize(T)
    roots: list[complex] = []
    for e in resolve_jumps(N, tol).events:
        for w in roots_on_circle(N, e, tol):
            if d == 1:
                roots.append(w)
                continue
            base = cmath.rect(abs(w) ** (1.0 / d), cmath.phase(w) / d)
            roots.extend(base * cmath.exp(1j * TWO_PI * j / d) for j in range(d))
    roots.sort(key=lambda z: (abs(z), cmath.phase(z)))
    return roots


def degenerate_diagnostics(
    T: HarmonicTrinomial, tol: Tolerances = DEFAULT_TOLERANCES
) -> DegeneracyReport:
    """Genericity of the pivot and the endpoint hits that need the perturbation fallback."""
    _require_coprime(T)
    P = pivot(T)
    generic = is_generic(P, tol)
    raw = jump_radii(T, tol)
    hits = [e for e in raw if not e.transversal]
    trans = [e for e in raw if e.transversal]
    coincident = sorted(
        {
            e.radius
            for e in trans
            for f in trans
            if e.path != f.path and _close(e.radius, f.radius, tol.same_radius_rel)
        }
    )
    return DegeneracyReport(generic, 2.0 * P, generic, hits, coincident)
