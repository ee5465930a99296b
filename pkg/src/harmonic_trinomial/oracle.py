"""Independent numerical root finder used to check every count.

Roots are located by Newton's method on the real system ``(Re f, Im f) = 0``
seeded from a polar grid over the annulus that can contain roots, plus the roots
of an eliminant polynomial.  Nothing here uses the pivot/triangle machinery.
"""

from __future__ import annotations

import cmath
import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import HarmonicTrinomial, evaluate, wirtinger
from .errors import GridExhausted, OracleError, SingularRoot
from .regions import a_break, c_break

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchParams:
    angular_factor: int = 8  # angular nodes = angular_factor * n**2
    radial_nodes: int = 64
    newton_tol: float = 1e-12  # stop once |f| < newton_tol * scale
    accept_tol: float = 1e-9  # residual bound for a reported root
    max_iter: int = 50
    dedup_rel: float = 1e-7  # of a_break
    singular_rel: float = 1e-10
    densify_rounds: int = 2
    eliminant_seeds: bool = True

    def densified(self) -> "SearchParams":
        # 4x the nodes: twice as many in each direction
        return SearchParams(
            self.angular_factor * 2,
            self.radial_nodes * 2,
            self.newton_tol,
            self.accept_tol,
            self.max_iter,
            self.dedup_rel,
            self.singular_rel,
            self.densify_rounds,
            self.eliminant_seeds,
        )


@dataclass(frozen=True)
class OracleRoot:
    z: complex
    residual: float
    jacobian_sign: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "re": self.z.real,
            "im": self.z.imag,
            "residual": self.residual,
            "jac_sign": self.jacobian_sign,
        }


@dataclass(frozen=True)
class RootSet:
    roots: tuple[OracleRoot, ...]
    params: SearchParams
    rounds: int = 1

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def moduli(self) -> list[float]:
        return sorted(abs(r.z) for r in self.roots)

    @property
    def tally(self) -> tuple[int, int]:
        """(sense-preserving, sense-reversing) root counts."""
        pos = sum(1 for r in self.roots if r.jacobian_sign > 0)
        neg = sum(1 for r in self.roots if r.jacobian_sign < 0)
        return pos, neg

    def to_list(self) -> list[dict[str, Any]]:
        return [r.to_dict() for r in self.roots]


def _grid_seeds(T: HarmonicTrinomial, params: SearchParams, r_lo: float, r_hi: float) -> np.ndarray:
    n_ang = params.angular_factor * T.n**2
    radii = np.geomspace(r_lo, r_hi, params.radial_nodes)
    thetas = np.arange(n_ang) * (2.0 * np.pi / n_ang)
    return (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()


def eliminant_coefficients(T: HarmonicTrinomial) -> np.ndarray:
    """Ascending coefficients of a degree ``n**2`` polynomial vanishing at every root.

    With ``w = conj(z)`` a root satisfies ``w**m = -(a z**n + c)/b`` and
    ``w**n = -(conj(b) z**m + conj(c))/conj(a)``; equating ``(w**m)**n`` with
    ``(w**n)**m`` eliminates ``w``.
    """
    a, b, c, n, m = T.a, T.b, T.c, T.n, T.m
    lhs = np.zeros(n + 1, dtype=complex)
    lhs[0], lhs[n] = -c, -a
    rhs = np.zeros(m + 1, dtype=complex)
    rhs[0], rhs[m] = -np.conj(c), -np.conj(b)
    left = np.conj(a) ** m * npoly.polypow(lhs, n)
    right = b**n * npoly.polypow(rhs, m)
    return npoly.polysub(left, right)


def _eliminant_seeds(T: HarmonicTrinomial, rho: float) -> np.ndarray:
    coeffs = eliminant_coefficients(T)
    # balance the coefficients around the typical root modulus before solving
    coeffs = coeffs * rho ** np.arange(len(coeffs))
    coeffs = coeffs / np.max(np.abs(coeffs))
    try:
        t = npoly.polyroots(coeffs)
    except np.linalg.LinAlgError:
        return np.empty(0, dtype=complex)
    z = t[np.isfinite(t)] * rho
    return z.astype(complex)


def _newton(T: HarmonicTrinomial, z: np.ndarray, params: SearchParams, r_floor: float) -> np.ndarray:
    z = z.copy()
    active = np.ones(z.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(params.max_iter):
            if not active.any():
                break
            za = z[active]
            f = evaluate(T, za)
            p, q = wirtinger(T, za)
            det = np.abs(p) ** 2 - np.abs(q) ** 2
            step = (q * np.conj(f) - np.conj(p) * f) / det
            # damp long steps so seeds do not get thrown far outside the annulus
            limit = 0.5 * np.maximum(np.abs(za), r_floor)
            size = np.abs(step)
            long = size > limit
            step[long] *= limit[long] / size[long]
            za = za + step
            z[active] = za
            scale = T.scale(np.abs(za))
            done = ~np.isfinite(za) | (np.abs(evaluate(T, za)) < params.newton_tol * scale)
            idx = np.flatnonzero(active)
            active[idx[done]] = False
    return z


def _classify(T: HarmonicTrinomial, z: np.ndarray, params: SearchParams, dedup: float) -> list[OracleRoot]:
    finite = np.isfinite(z)
    z = z[finite]
    with np.errstate(all="ignore"):
        res = np.abs(evaluate(T, z))
        ok = res < params.accept_tol * T.scale(np.abs(z))
    z, res = z[ok], res[ok]
    order = np.lexsort((np.angle(z), np.abs(z)))
    z, res = z[order], res[order]

    clusters: list[list[int]] = []
    for i, zi in enumerate(z):
        for cl in clusters:
            if abs(z[cl[0]] - zi) <= dedup:
                cl.append(i)
                break
        else:
            clusters.append([i])

    roots = []
    for cl in clusters:
        best = min(cl, key=lambda i: res[i])
        zb = complex(z[best])
        p, q = wirtinger(T, zb)
        jac = abs(p) ** 2 - abs(q) ** 2
        if abs(jac) < params.singular_rel * (abs(p) ** 2 + abs(q) ** 2):
            raise SingularRoot(f"Jacobian vanishes at the root {zb:.12g}")
        signs = set()
        for i in cl:
            pi_, qi = wirtinger(T, complex(z[i]))
            signs.add(abs(pi_) ** 2 - abs(qi) ** 2 > 0)
        if len(signs) > 1:
            raise SingularRoot(f"roots of opposite orientation collide near {zb:.12g}")
        roots.append(OracleRoot(zb, float(res[best]), 1 if jac > 0 else -1))
    roots.sort(key=lambda r: (abs(r.z), cmath.phase(r.z)))
    return roots


@functools.lru_cache(maxsize=256)
def find_all_roots(T: HarmonicTrinomial, params: SearchParams = SearchParams()) -> RootSet:
    """All zeros of ``T`` found by seeded Newton iteration.

    Retries on a 4x denser grid when the orientation tally differs from ``n`` or
    more than ``n + 2m`` roots turn up; raises :class:`GridExhausted` if that never
    settles and :class:`SingularRoot` when a root has a vanishing Jacobian.
    """
    c_b, a_b = c_break(T), a_break(T)
    r_lo, r_hi = 0.9 * c_b, 1.1 * a_b
    dedup = params.dedup_rel * a_b
    extra = _eliminant_seeds(T, math.sqrt(c_b * a_b)) if params.eliminant_seeds else np.empty(0, complex)

    current = params
    for round_ in range(params.densify_rounds + 1):
        seeds = np.concatenate([extra, _grid_seeds(T, current, r_lo, r_hi)])
        z = _newton(T, seeds, current, r_lo)
        roots = _classify(T, z, current, dedup)
        pos = sum(1 for r in roots if r.jacobian_sign > 0)
        neg = len(roots) - pos
        if pos - neg == T.n and len(roots) <= T.n + 2 * T.m:
            return RootSet(tuple(roots), params, round_ + 1)
        log.info(
            "oracle round %d: %d roots, tally %d-%d; densifying", round_ + 1, len(roots), pos, neg
        )
        current = current.densified()
    raise GridExhausted(f"no consistent root set for {T!r} after {params.densify_rounds} densifications")


def oracle_count(
    T: HarmonicTrinomial, r: float, roots: RootSet | None = None, params: SearchParams = SearchParams()
) -> int:
    """Number of oracle roots with ``|z| < r``."""
    if roots is None:
        roots = find_all_roots(T, params)
    count = 0
    for root in roots.roots:
        mod = abs(root.z)
        if abs(mod - r) <= 1e-6 * r:
            log.warning("oracle root %s lies within 1e-6 of the query radius %g", root.z, r)
        if mod < r:
            count += 1
    return count


# --- verification --------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    trinomial: HarmonicTrinomial
    formula_total: int | None
    oracle_total: int | None
    tally: tuple[int, int] | None
    checks: list[Check] = field(default_factory=list)
    oracle_error: str | None = None

    @property
    def passed(self) -> bool:
        return self.oracle_error is None and all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.trinomial.to_dict(),
            "passed": self.passed,
            "formula_total": self.formula_total,
            "oracle_total": self.oracle_total,
            "tally": list(self.tally) if self.tally else None,
            "checks": [c.to_dict() for c in self.checks],
            "oracle_error": self.oracle_error,
        }


def _match_moduli(oracle: list[float], formula: list[float], rel: float) -> bool:
    if len(oracle) != len(formula):
        return False
    return all(abs(x - y) <= rel * max(x, y) for x, y in zip(sorted(oracle), sorted(formula)))


def probe_radii(jump_radii: list[float], c_b: float, a_b: float, gap: float = 1e-6) -> list[float]:
    """Radii strictly between consecutive distinct jump radii, plus one below and one above."""
    distinct: list[float] = []
    for r in sorted(jump_radii):
        if not distinct or r - distinct[-1] > gap * r:
            distinct.append(r)
    probes = [0.5 * c_b, 1.5 * a_b]
    probes += [0.5 * (x + y) for x, y in zip(distinct, distinct[1:])]
    return sorted(probes)


def verify(T: HarmonicTrinomial, params: SearchParams = SearchParams()) -> VerificationReport:
    """Compare the crossing count with the oracle on every check we know how to make."""
    from .counting import all_jump_events, count_roots_in_disk, total_root_count

    try:
        rootset = find_all_roots(T, params)
        total = total_root_count(T)
        events = all_jump_events(T)
    except OracleError as exc:
        return VerificationReport(T, None, None, None, [], f"{type(exc).__name__}: {exc}")

    d = math.gcd(T.n, T.m)
    formula_moduli = [e.radius for e in events for _ in range(d)]
    pos, neg = rootset.tally
    checks = [
        Check("total", total == len(rootset), f"formula {total} vs oracle {len(rootset)}"),
        Check(
            "moduli",
            _match_moduli(rootset.moduli, formula_moduli, 1e-6),
            "oracle root moduli matched to jump radii within 1e-6 relative",
        ),
        Check("orientation", pos - neg == T.n, f"{pos} - {neg} = {pos - neg}, n = {T.n}"),
        Check("bound_n_plus_2m", total <= T.n + 2 * T.m, f"{total} <= {T.n + 2 * T.m}"),
        Check("parity", (total - T.n) % 2 == 0, f"{total} = n mod 2"),
    ]
    probes = probe_radii(formula_moduli, c_break(T), a_break(T))
    bad = []
    for r in probes:
        fc = count_roots_in_disk(T, r).count
        oc = oracle_count(T, r, rootset)
        if fc != oc:
            bad.append(f"r={r:.9g}: {fc} vs {oc}")
    checks.append(
        Check("probe_counts", not bad, "; ".join(bad) or f"{len(probes)} probe radii agree")
    )
    return VerificationReport(T, total, len(rootset), (pos, neg), checks)
