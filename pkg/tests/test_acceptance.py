"""Acceptance criteria; the terminal summary prints one PASS/FAIL line per criterion."""

import cmath
import math
import time

import numpy as np
import pytest

from conftest import SQRT2, SQRT5, SQRT7
from harmonic_trinomial.core import HarmonicTrinomial, normalize, rotated
from harmonic_trinomial.corpus import corpus
from harmonic_trinomial.counting import (
    OUTER_REGIME_FLAG,
    all_jump_events,
    count_roots_in_disk,
    total_root_count,
)
from harmonic_trinomial.oracle import find_all_roots, oracle_count, verify
from harmonic_trinomial.regions import Case, abc_values, breakpoints
from harmonic_trinomial.triangle import angles, omega_star, side_lengths

RADII_PER_INSTANCE = 12


def _radii(T):
    return [e.radius for e in all_jump_events(T)]


def _distinct(radii, rel=1e-9):
    out = []
    for r in sorted(radii):
        if not out or r - out[-1] > rel * r:
            out.append(r)
    return out


def _probe_set(T, size=RADII_PER_INSTANCE):
    """Midpoints between consecutive jump radii plus one radius below c and one above a.

    Short lists are padded with further interior points of the widest gaps; long
    ones keep the two outer radii and an even subsample of the midpoints.
    """
    prof = breakpoints(T)
    jumps = _distinct(_radii(T))
    outer = [0.5 * prof.c_break, 1.5 * prof.a_break]
    mids = [0.5 * (x + y) for x, y in zip(jumps, jumps[1:])]
    want = size - len(outer)
    if len(mids) > want:
        idx = np.linspace(0, len(mids) - 1, want).round().astype(int)
        mids = [mids[i] for i in idx]
    knots = [prof.c_break, *jumps, prof.a_break]
    gaps = sorted(zip(knots, knots[1:]), key=lambda g: g[0] - g[1])
    fractions = [0.25, 0.75, 0.125, 0.375, 0.625, 0.875]
    extra = []
    for f in fractions:
        for lo, hi in gaps:
            if len(mids) + len(extra) >= want:
                break
            if hi - lo > 1e-6 * hi:
                extra.append(lo + f * (hi - lo))
    return sorted(outer + mids + extra)


def test_criterion_01_hand_solved_e1(e1, cold_caches):
    t0 = time.perf_counter()
    total = total_root_count(e1)
    roots = sorted((r.z for r in find_all_roots(e1).roots), key=lambda z: z.imag)
    jumps = _distinct(_radii(e1))
    c10 = count_roots_in_disk(e1, 1.0).count
    c15 = count_roots_in_disk(e1, 1.5).count
    elapsed = time.perf_counter() - t0

    assert total == 2
    assert abs(roots[0] - complex(0.5, -SQRT7 / 2)) < 1e-9
    assert abs(roots[1] - complex(0.5, SQRT7 / 2)) < 1e-9
    assert len(jumps) == 1 and abs(jumps[0] - SQRT2) < 1e-10
    assert (c10, c15) == (0, 2)
    assert elapsed < 1.0


def test_criterion_02_hand_solved_e3(e3, cold_caches):
    t0 = time.perf_counter()
    total = total_root_count(e3)
    radii = sorted(_radii(e3))
    # no oracle arbitration: the perturbed count must stand on its own
    res = count_roots_in_disk(e3, 10.0, use_oracle=False)
    rep = verify(e3)
    elapsed = time.perf_counter() - t0

    n, m = e3.n, e3.m
    assert total == 4 == n + 2 * m
    want = [(3 - SQRT5) / 2, (3 + SQRT5) / 2, math.sqrt(10), math.sqrt(10)]
    assert len(radii) == 4
    assert all(abs(x - y) < 1e-6 for x, y in zip(radii, want))
    assert res.fallback_used and res.count == 4
    assert "fallback_disagreement_resolved_by_oracle" not in res.flags
    assert res.count == len(find_all_roots(e3))
    assert rep.passed
    assert elapsed < 2.0


def test_criterion_03_generic_case_iii(e10i, cold_caches):
    t0 = time.perf_counter()
    total = total_root_count(e10i)
    radii = _distinct(_radii(e10i))
    rep = verify(e10i)
    generic = count_roots_in_disk(e10i, 1.0).generic
    case = breakpoints(e10i).case
    elapsed = time.perf_counter() - t0

    assert generic and case is Case.III
    assert total == 5 == e10i.n + 2 * e10i.m
    assert len(radii) == 5
    assert rep.passed and rep.tally == (4, 1) and 4 - 1 == e10i.n
    assert elapsed < 2.0


def test_criterion_04_randomized_oracle_equivalence(cold_caches):
    t0 = time.perf_counter()
    mismatches, checked = [], 0
    for T in corpus(2024, 50):
        assert T.n <= 6 and T.m < T.n and math.gcd(T.n, T.m) == 1
        probes = _probe_set(T)
        assert len(probes) == RADII_PER_INSTANCE
        roots = find_all_roots(T)
        for r in probes:
            got, want = count_roots_in_disk(T, r).count, oracle_count(T, r, roots)
            checked += 1
            if got != want:
                mismatches.append((T, r, got, want))
    elapsed = time.perf_counter() - t0
    assert checked == 50 * RADII_PER_INSTANCE
    assert not mismatches
    assert elapsed < 60.0


def test_criterion_05_root_count_bounds(e3, e10i):
    for T in corpus(505, 200):
        total = total_root_count(T)
        n, m = T.n, T.m
        assert total <= n + 2 * m
        assert total <= 3 * n - 2
        assert (total - n) % 2 == 0
    assert total_root_count(e10i) == e10i.n + 2 * e10i.m
    assert e3.m == e3.n - 1 and total_root_count(e3) == 3 * e3.n - 2


@pytest.mark.parametrize("d", [2, 3])
def test_criterion_06_gcd_reduction(d):
    f = HarmonicTrinomial(1, 1, 1, 2 * d, d)
    h = HarmonicTrinomial(1, 1, 1, 2, 1)
    assert normalize(f)[1] == d
    roots = find_all_roots(f)
    for r in np.linspace(0.05, 3.0, 50):
        r = float(r)
        cf = count_roots_in_disk(f, r).count
        assert cf == d * count_roots_in_disk(h, r**d).count
        assert cf == oracle_count(f, r, roots)


def test_criterion_07_phase_invariance():
    rng = np.random.default_rng(77)
    for T in corpus(707, 100):
        unit = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        U = rotated(T, unit)
        ra, rb = sorted(_radii(T)), sorted(_radii(U))
        assert len(ra) == len(rb)
        assert all(abs(x - y) <= 1e-10 * x for x, y in zip(ra, rb))
        for r in _probe_set(T):
            assert count_roots_in_disk(T, r).count == count_roots_in_disk(U, r).count


def test_criterion_08_triangle_identities():
    rng = np.random.default_rng(808)
    pool = list(corpus(808, 200))
    done = 0
    while done < 1000:
        T = pool[int(rng.integers(len(pool)))]
        prof = breakpoints(T)
        r = float(np.exp(rng.uniform(math.log(prof.c_break), math.log(prof.a_break))))
        if not prof.contains(r):
            continue
        l1, l2, l3 = side_lengths(T, r)
        tri = angles(T, r)
        res = abs(l1 * cmath.exp(-1j * tri.omega2) + l2 * cmath.exp(1j * tri.omega1) - l3)
        assert res < 1e-10 * max(l1, l2, l3)
        assert abs(tri.omega1 + tri.omega2 + tri.omega3 - math.pi) < 1e-12
        done += 1


def test_criterion_09_region_correctness(e3, e10i):
    seen_iii = 0
    for T in [e3, e10i, *corpus(909, 300)]:
        prof = breakpoints(T)
        assert abs(abc_values(T, prof.a_break)[0]) < 1e-11 * T.scale(prof.a_break)
        assert abs(abc_values(T, prof.c_break)[2]) < 1e-11 * T.scale(prof.c_break)
        for b in prof.b_breaks:
            assert abs(abc_values(T, b)[1]) < 1e-11 * T.scale(b)
        for r in np.geomspace(prof.c_break / 50, prof.c_break * (1 - 1e-6), 4):
            assert omega_star(T, float(r)) == 0.0
        for r in np.geomspace(prof.a_break * (1 + 1e-6), prof.a_break * 50, 4):
            assert omega_star(T, float(r)) == T.n / 2
        if prof.case is Case.III:
            seen_iii += 1
            b1, b2 = prof.b_breaks
            assert prof.c_break < b1 < prof.r0 < b2 < prof.a_break
            for r in np.linspace(b1, b2, 6)[1:-1]:
                assert omega_star(T, float(r)) == -T.m / 2
    assert seen_iii >= 2


def test_criterion_10_documented_outer_regime_discrepancy(e1):
    res = count_roots_in_disk(e1, 2.0)
    assert res.count == 2
    assert res.outer_regime_claim == 4 == e1.n + 2 * e1.m
    assert OUTER_REGIME_FLAG == "paper_eq_1_10_case3_mismatch"
    assert res.flags == [OUTER_REGIME_FLAG]
    assert res.to_dict()["paper_eq_1_10_case3"] == 4
    assert oracle_count(e1, 2.0) == 2
