import math

import numpy as np
import pytest

from conftest import SQRT5, SQRT7, singular_instance
from harmonic_trinomial.core import HarmonicTrinomial, evaluate
from harmonic_trinomial.corpus import corpus
from harmonic_trinomial.errors import SingularRoot
from harmonic_trinomial.oracle import (
    SearchParams,
    eliminant_coefficients,
    find_all_roots,
    oracle_count,
    probe_radii,
    verify,
)
from harmonic_trinomial.regions import a_break, c_break


def test_e1_roots(e1):
    rs = find_all_roots(e1)
    got = sorted((r.z for r in rs.roots), key=lambda z: z.imag)
    want = [complex(0.5, -SQRT7 / 2), complex(0.5, SQRT7 / 2)]
    for z, w in zip(got, want):
        assert abs(z - w) < 1e-12
    assert rs.tally == (2, 0)


def test_e3_roots(e3):
    rs = find_all_roots(e3)
    assert len(rs) == 4
    want = [(3 - SQRT5) / 2, (3 + SQRT5) / 2, math.sqrt(10), math.sqrt(10)]
    assert rs.moduli == pytest.approx(want, rel=1e-9)
    assert rs.tally == (3, 1)
    # real roots solve z**2 + 3 z + 1 = 0
    reals = sorted(r.z.real for r in rs.roots if abs(r.z.imag) < 1e-12)
    assert reals == pytest.approx([(-3 - SQRT5) / 2, (-3 + SQRT5) / 2], rel=1e-12)


def test_e10i_roots(e10i):
    rs = find_all_roots(e10i)
    assert len(rs) == 5
    assert rs.tally == (4, 1)
    mods = rs.moduli
    assert all(y - x > 1e-3 for x, y in zip(mods, mods[1:]))


def test_oracle_counts(e1, e3):
    assert oracle_count(e1, 1.5) == 2
    assert oracle_count(e1, 1.0) == 0
    assert oracle_count(e3, 1.0) == 1
    assert oracle_count(e3, 3.0) == 2
    assert oracle_count(e3, 4.0) == 4


def test_boundary_warning(e1, caplog):
    with caplog.at_level("WARNING", logger="harmonic_trinomial.oracle"):
        oracle_count(e1, math.sqrt(2.0))
    assert "within 1e-6" in caplog.text


@pytest.mark.parametrize("fixture", ["e1", "e3", "e10i"])
def test_verify_examples(fixture, request):
    rep = verify(request.getfixturevalue(fixture))
    assert rep.passed, rep.to_dict()
    names = [c.name for c in rep.checks]
    assert names == ["total", "moduli", "orientation", "bound_n_plus_2m", "parity", "probe_counts"]


def test_deterministic(e10i):
    first = find_all_roots(e10i).to_list()
    find_all_roots.cache_clear()
    assert find_all_roots(e10i).to_list() == first


def test_invariants_on_corpus():
    params = SearchParams()
    for T in corpus(31, 40):
        rs = find_all_roots(T)
        c_b, a_b = c_break(T), a_break(T)
        zs = [r.z for r in rs.roots]
        for r in rs.roots:
            assert r.residual < params.accept_tol * T.scale(abs(r.z))
            assert abs(r.residual - abs(evaluate(T, r.z))) < 1e-14 * T.scale(abs(r.z))
            assert c_b * (1 - 1e-9) <= abs(r.z) <= a_b * (1 + 1e-9)
        for i, z in enumerate(zs):
            for w in zs[i + 1 :]:
                assert abs(z - w) > params.dedup_rel * a_b
        pos, neg = rs.tally
        assert pos - neg == T.n
        assert len(rs) <= T.n + 2 * T.m


def test_grid_only_seeds_agree():
    grid_only = SearchParams(eliminant_seeds=False)
    for T in corpus(32, 25):
        a = sorted(find_all_roots(T).moduli)
        b = sorted(find_all_roots(T, grid_only).moduli)
        assert a == pytest.approx(b, rel=1e-8)


def test_eliminant_vanishes_at_roots(e10i):
    coef = eliminant_coefficients(e10i)
    for r in find_all_roots(e10i).roots:
        val = np.polynomial.polynomial.polyval(r.z, coef)
        assert abs(val) < 1e-6 * np.abs(coef).max() * max(1.0, abs(r.z)) ** (len(coef) - 1)


def test_singular_root_detected():
    with pytest.raises(SingularRoot):
        find_all_roots(singular_instance())


def test_verify_reports_oracle_error():
    rep = verify(singular_instance())
    assert not rep.passed
    assert rep.oracle_error.startswith("SingularRoot")


def test_probe_radii():
    probes = probe_radii([1.0, 1.0 + 1e-9, 2.0], 0.5, 3.0)
    assert probes == pytest.approx([0.25, 1.5, 4.5])


def test_densified():
    p = SearchParams().densified()
    assert (p.angular_factor, p.radial_nodes) == (16, 128)
