import random

import pytest
from hypothesis import given, settings, strategies as st

from dimerlab import corpus
from dimerlab.jacobi import (BudgetExceeded, EquivalenceOracle, PathWord, all_words, cancellation_witness,
                             face_cycle_at, homogeneous_weights, paths_equal_fast, rewrite_neighbors)
from dimerlab.matchings import enumerate_matchings
from dimerlab.topology import homology_labeling, path_class

from helpers import CONSISTENT_TORI, TORI, relabel


def test_triangle_torus_witness():
    m = corpus.load("triangle_torus")
    w = cancellation_witness(m, 8)
    assert w is not None and w.certified and w.side == "right" and w.bound == 3
    assert m.ids(w.p) == ["a", "b"] and m.ids(w.q) == ["b", "a"]
    assert m.arrows[w.arrow].id == "f"
    pa, qa = w.words()
    oracle = EquivalenceOracle(m, 8)
    assert oracle.same(pa, qa) and not oracle.same(w.p, w.q)
    assert w.trace[0] == pa and w.trace[-1] == qa
    for x, y in zip(w.trace, w.trace[1:]):
        assert y in rewrite_neighbors(m, x)


@pytest.mark.parametrize("name", CONSISTENT_TORI + ["octahedron"])
def test_no_witness_on_cancellative_models(name):
    assert cancellation_witness(corpus.load(name), 8) is None


def test_no_witness_on_double_torus_at_small_bound():
    assert cancellation_witness(corpus.load("pentagon_double_torus"), 6) is None


def test_length_truncation_is_too_fine_with_mixed_faces():
    # spp has triangles and squares: plain length truncation cuts classes and
    # suggests a false witness, which is never certified
    m = corpus.load("spp")
    flat = EquivalenceOracle(m, 8, graded=False)
    assert not flat.exact
    loose = cancellation_witness(m, 8, oracle=flat, certified_only=False)
    assert loose is not None and not loose.certified
    assert cancellation_witness(m, 8, oracle=flat) is None
    assert cancellation_witness(m, 8) is None


@pytest.mark.parametrize("name", corpus.names())
def test_homogeneous_weights(name):
    m = corpus.load(name)
    w = homogeneous_weights(m)
    assert w is not None and min(w) > 0
    assert len({sum(w[a] for a in cyc) for cyc in m.cycles}) == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        EquivalenceOracle(corpus.load("f0"), 8, budget=100)


@pytest.mark.parametrize("name", TORI)
def test_swaps_preserve_path_class(name):
    m = corpus.load(name)
    lab = homology_labeling(m)
    P = enumerate_matchings(m)[0]
    rng = random.Random(7)
    for _ in range(200):
        v = rng.randrange(len(m.vertices))
        w = []
        for _ in range(rng.randint(1, 9)):
            a = rng.choice(m.out_arrows[v])
            w.append(a)
            v = m.head[a]
        pc = path_class(w, lab, P)
        for nb in rewrite_neighbors(m, w):
            assert path_class(nb, lab, P) == pc


@pytest.mark.parametrize("name", ["f0", "spp", "triangle_torus", "octahedron"])
def test_classes_are_closed_under_swaps(name):
    m = corpus.load(name)
    o = EquivalenceOracle(m, 5)
    for w in o.words:
        for nb in rewrite_neighbors(m, w):
            if nb in o:
                assert o.same(w, nb)
            elif o.exact:
                pytest.fail(f"graded universe is not closed: {w} -> {nb}")


@pytest.mark.parametrize("name", corpus.names())
def test_face_cycles_at_a_vertex_agree_and_are_central(name):
    m = corpus.load(name)
    # the weight bound must cover a face cycle followed by one arrow
    o = EquivalenceOracle(m, m.max_face + 1 if m.uniform_faces else 2 * m.max_face)
    ell = {}
    for v in range(len(m.vertices)):
        cycles = [face_cycle_at(m, f, v) for f, cyc in enumerate(m.cycles) if any(m.tail[a] == v for a in cyc)]
        assert all(o.same(cycles[0], c) for c in cycles)
        ell[v] = cycles[0]
    for a in range(len(m.arrows)):
        assert o.same((a,) + ell[m.head[a]], ell[m.tail[a]] + (a,))


def test_rewriting_classes_equal_path_classes_on_f0():
    m = corpus.load("f0")
    lab = homology_labeling(m)
    P = enumerate_matchings(m)[0]
    o = EquivalenceOracle(m, 6)
    by_class = {}
    for rep, members in o.classes().items():
        keys = {path_class(w, lab, P) for w in members}
        assert len(keys) == 1
        k = keys.pop()
        assert k not in by_class
        by_class[k] = rep
    for p in o.words[:300]:
        for q in o.words[:300]:
            assert o.same(p, q) == paths_equal_fast(m, lab, P, p, q, consistent=True)


def test_fast_equality_refuses_without_consistency():
    m = corpus.load("f0")
    lab = homology_labeling(m)
    with pytest.raises(ValueError):
        paths_equal_fast(m, lab, enumerate_matchings(m)[0], (0,), (1,))


def test_pathword():
    m = corpus.load("f0")
    pw = PathWord.of(m, (0, 2))
    assert (pw.tail, pw.head, len(pw)) == (m.tail[0], m.head[2], 2)
    with pytest.raises(ValueError):
        PathWord.of(m, (0, 0))
    with pytest.raises(ValueError):
        PathWord.of(m, ())


def test_all_words_counts():
    m = corpus.load("c3")
    assert sum(1 for _ in all_words(m, 4)) == 3 + 9 + 27 + 81


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["f0", "triangle_torus", "spp", "octahedron"]), st.integers(0, 10 ** 6))
def test_class_count_and_witness_survive_relabeling(name, seed):
    m = corpus.load(name)
    r = relabel(m, seed)
    assert len(EquivalenceOracle(m, 5).classes()) == len(EquivalenceOracle(r, 5).classes())
    a, b = cancellation_witness(m, 6), cancellation_witness(r, 6)
    assert (a is None) == (b is None)
    if a is not None:
        assert (a.bound, a.side, len(a.p)) == (b.bound, b.side, len(b.p))
