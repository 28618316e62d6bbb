import pytest

from dimerlab import corpus
from dimerlab.cy3 import build_complex_component, check_exactness, check_model
from dimerlab.jacobi import EquivalenceOracle

from helpers import CONSISTENT_TORI
import oracles


def _failures(reports):
    return sorted((rep.first_failure[0], rep.first_failure[1], v) for v, rep in reports.items() if not rep.exact)


@pytest.mark.parametrize("name", CONSISTENT_TORI)
def test_consistent_tori_are_exact(name):
    m = corpus.load(name)
    reports = check_model(m, 8, 8 - m.max_face)
    assert all(rep.exact for rep in reports.values())
    for rep in reports.values():
        assert rep.ranks[0] == (1, 0, 0, 0)  # H0 is the simple itself


def test_f0_exact_in_window_five():
    reports = check_model(corpus.load("f0"), 8, 5)
    assert all(rep.exact for rep in reports.values())
    assert all(max(rep.ranks) == 5 for rep in reports.values())


def test_octahedron_has_h2_in_degree_three():
    reports = check_model(corpus.load("octahedron"), 8, 5)
    deg, pos, _ = min(rep.first_failure for rep in reports.values() if not rep.exact)
    assert (deg, pos) == (3, 2)


def test_triangle_torus_fails_at_degree_six():
    m = corpus.load("triangle_torus")
    assert all(rep.exact for rep in check_model(m, 8, 5).values())
    fails = _failures(check_model(m, 9, 6))
    assert fails and fails[0][:2] == (6, 2)


def test_double_torus_is_exact_in_window():
    m = corpus.load("pentagon_double_torus")
    assert all(rep.exact for rep in check_model(m, 8, 3).values())


@pytest.mark.parametrize("name", ["f0", "triangle_torus", "octahedron"])
def test_window_monotonicity(name):
    m = corpus.load(name)
    safe = 5
    small = check_model(m, 8, safe)
    large = check_model(m, 9, safe)
    for v in small:
        assert small[v].ranks == large[v].ranks


@pytest.mark.parametrize("name", ["f0", "triangle_torus", "spp"])
def test_euler_characteristic_of_pieces(name):
    m = corpus.load(name)
    cx = build_complex_component(m, 0, 7, upto=5)
    for comp in cx.components:
        dims = [len(t) for t in comp.terms]
        h = comp.homology()
        assert dims[0] - dims[1] + dims[2] - dims[3] == h[0] - h[1] + h[2] - h[3]


def test_ranks_match_fraction_oracle():
    cx = build_complex_component(corpus.load("triangle_torus"), 0, 9, upto=6)
    for comp in cx.components:
        assert comp.ranks() == tuple(oracles.rank_fraction(D) if D and D[0] else 0
                                     for D in (comp.D1, comp.D2, comp.D3))


def test_safe_window_guard():
    m = corpus.load("f0")
    cx = build_complex_component(m, 0, 8, upto=8)
    with pytest.raises(ValueError):
        check_exactness(cx, 9)
    with pytest.raises(ValueError):
        build_complex_component(m, 0, 5)


def test_shared_oracle():
    m = corpus.load("conifold")
    o = EquivalenceOracle(m, 8)
    a = check_model(m, 8, 4, oracle=o)
    b = check_model(m, 8, 4)
    assert {v: r.ranks for v, r in a.items()} == {v: r.ranks for v, r in b.items()}
