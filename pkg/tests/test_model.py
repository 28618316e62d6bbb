import json

import pytest
from hypothesis import given, settings, strategies as st

from dimerlab import corpus
from dimerlab.model import (ModelError, dumps, euler_characteristic, genus, load_model, model_from_dict,
                            model_to_dict, successor_maps, validate)

from helpers import relabel
import oracles


def test_corpus_loads_and_validates(models):
    for name, m in models.items():
        assert validate(m).ok, name


def test_euler_characteristics_match_manifest(models, manifest):
    for name, m in models.items():
        assert euler_characteristic(m) == manifest[name]["chi"] == oracles.euler_characteristic(m)


def test_genus():
    assert genus(corpus.load("octahedron")) == 0
    assert genus(corpus.load("f0")) == 1
    assert genus(corpus.load("pentagon_double_torus")) == 2


@pytest.mark.parametrize("name", corpus.names())
def test_round_trip(name):
    m = corpus.load(name)
    again = load_model(dumps(m))
    assert again == m
    assert again.meta == m.meta


def test_successor_maps_are_permutations(models):
    for m in models.values():
        rot = successor_maps(m)
        ids = sorted(a.id for a in m.arrows)
        assert sorted(rot.sigma_plus.values()) == ids
        assert sorted(rot.sigma_minus.values()) == ids


def _f0_dict():
    return model_to_dict(corpus.load("f0"))


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.pop("faces"), "missing key"),
    (lambda d: d["arrows"].append({"id": "a", "tail": "1", "head": "2"}), "duplicate arrow"),
    (lambda d: d["arrows"].append({"id": "z", "tail": "1", "head": "9"}), "dangling vertex"),
    (lambda d: d["faces"][0].update(sign="*"), "sign"),
    (lambda d: d["faces"][0].update(cycle=["a", "e"]), "face length"),
    (lambda d: d["faces"][0].update(cycle=["a", "e", "q"]), "dangling arrow"),
    (lambda d: d["vertices"].append("1"), "duplicate vertex"),
])
def test_malformed_input(mutate, message):
    d = _f0_dict()
    mutate(d)
    with pytest.raises(ModelError, match=message):
        model_from_dict(d)


def test_bad_json_reports_position():
    with pytest.raises(ModelError, match="line 1"):
        load_model('{"vertices": [')


def test_missing_face_breaks_do():
    d = _f0_dict()
    d["faces"].pop()
    rep = validate(model_from_dict(d))
    assert not rep["DO"].ok
    assert rep["DO"].witness


def test_swapped_sign_breaks_do():
    d = _f0_dict()
    d["faces"][0]["sign"] = "-"
    rep = validate(model_from_dict(d))
    assert not rep.ok


def test_unchained_face_fails():
    d = _f0_dict()
    d["faces"][0]["cycle"] = ["a", "g", "e", "c"]
    rep = validate(model_from_dict(d))
    assert not rep["chaining"].ok


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(corpus.names()), st.integers(0, 10 ** 6))
def test_validation_and_chi_survive_relabeling(name, seed):
    m = corpus.load(name)
    r = relabel(m, seed)
    assert validate(r).ok
    assert euler_characteristic(r) == euler_characteristic(m)
    assert json.loads(dumps(r))["faces"]
