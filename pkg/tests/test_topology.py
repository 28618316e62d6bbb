import pytest
from hypothesis import given, settings, strategies as st

from dimerlab import corpus
from dimerlab.topology import (UnsupportedSurface, basis_certificate, cohomology_class, homology_labeling,
                               path_class, translation_of_path)
from dimerlab.matchings import enumerate_matchings

from helpers import TORI, relabel

GL2Z = [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((2, 1), (1, 1)), ((0, -1), (1, 0)), ((-1, 0), (0, 1))]


@pytest.mark.parametrize("name", TORI)
def test_labels_close_every_face(name):
    m = corpus.load(name)
    lab = homology_labeling(m)
    for cyc in m.cycles:
        assert translation_of_path(cyc, lab) == (0, 0)
    assert all(lab.omega[a] == (0, 0) for a in lab.tree)
    assert len(lab.tree) == len(m.vertices) - 1
    assert basis_certificate(lab)["ok"]


@pytest.mark.parametrize("name", ["octahedron", "pentagon_double_torus"])
def test_labels_refused_off_the_torus(name):
    with pytest.raises(UnsupportedSurface):
        homology_labeling(corpus.load(name))


@pytest.mark.parametrize("g", GL2Z)
def test_certificate_survives_change_of_basis(g):
    lab = homology_labeling(corpus.load("spp")).transformed(g)
    assert basis_certificate(lab)["ok"]


def test_degenerate_basis_is_rejected():
    lab = homology_labeling(corpus.load("f0")).transformed(((2, 0), (0, 1)))
    assert not basis_certificate(lab)["ok"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(TORI), st.integers(0, 10 ** 6))
def test_certificate_survives_relabeling(name, seed):
    assert basis_certificate(homology_labeling(relabel(corpus.load(name), seed)))["ok"]


def test_cohomology_class_of_matching_differences():
    m = corpus.load("f0")
    lab = homology_labeling(m)
    ms = enumerate_matchings(m)
    for P in ms:
        for Q in ms:
            vals = [int(a in P) - int(a in Q) for a in range(len(m.arrows))]
            s, t = cohomology_class(vals, lab)
            # antisymmetric in the pair
            back = [-v for v in vals]
            assert cohomology_class(back, lab) == (-s, -t)


def test_cohomology_class_rejects_non_cocycle():
    m = corpus.load("f0")
    lab = homology_labeling(m)
    with pytest.raises(ValueError):
        cohomology_class([1] + [0] * (len(m.arrows) - 1), lab)


def test_path_class_of_face_cycle():
    m = corpus.load("f0")
    lab = homology_labeling(m)
    P = enumerate_matchings(m)[0]
    for cyc in m.cycles:
        pc = path_class(cyc, lab, P)
        assert pc.translation == (0, 0) and pc.degree == 1 and pc.head == pc.tail
    assert path_class([], lab, P, start=0).degree == 0
    with pytest.raises(ValueError):
        path_class([], lab, P)
