import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowsum.checks import three_loops_doc, nested_doc, genus1_doc, random_forest_doc
from shadowsum.errors import (
    ColorNotInAlcove,
    DuplicateId,
    EulerMismatch,
    ForestGenusMismatch,
    ParseError,
    SideInconsistent,
)
from shadowsum.modular import build_modular_data
from shadowsum.shadowlink import (
    delete_loop,
    derive_shadow,
    empty_shadow,
    empty_state_sum,
    parse_link,
    shadow_state_sum,
    wlo_shadow,
)


def shadow_of(doc):
    return derive_shadow(parse_link(doc))


def test_parse_three_loops():
    link = parse_link(json.dumps(three_loops_doc([1], [1], [2])))
    assert len(link.loops) == 3 and link.genus == 0
    assert all(lp.winding == 1 for lp in link.loops)
    assert parse_link({}).loops == ()


def test_parse_errors():
    with pytest.raises(ForestGenusMismatch):
        parse_link({"surface": {"genus": 1}, "loops": []})
    with pytest.raises(DuplicateId):
        parse_link({"loops": [{"id": "a", "color": [1]}, {"id": "a", "color": [1]}]})
    with pytest.raises(ParseError):
        parse_link("{not json")
    with pytest.raises(ParseError):
        parse_link({"loops": [{"id": "a", "color": [1], "parent": "zz"}]})
    with pytest.raises(ParseError):
        parse_link({"loops": [{"id": "a", "color": "x"}]})
    with pytest.raises(ParseError):
        parse_link({"vertical": [{"at": "Y0", "color": [1], "winding": 2}]})
    cyclic = {"loops": [{"id": "a", "color": [1], "parent": "b"}, {"id": "b", "color": [1], "parent": "a"}]}
    with pytest.raises(ParseError):
        shadow_of(cyclic)


def test_small_shadows():
    sh = shadow_of(three_loops_doc([1], [1], [1]))
    assert [sh.euler[f] for f in sh.faces] == [-1, 1, 1, 1]
    assert [sh.gleam[f] for f in sh.faces] == [-3, 1, 1, 1]
    sh = shadow_of(nested_doc([1], [1], [1]))
    assert {f: sh.euler[f] for f in sh.faces} == {"Y0": 0, "lam": 0, "nu": 1, "mu": 1}
    assert {f: sh.gleam[f] for f in sh.faces} == {"Y0": -2, "lam": 0, "nu": 1, "mu": 1}


@pytest.mark.parametrize("g", [0, 1, 2])
def test_empty_shadow(g):
    sh = empty_shadow(g)
    assert sh.euler == {"Y0": 2 - 2 * g} and sh.gleam == {"Y0": 0}


def test_explicit_model_validation():
    doc = genus1_doc([1])
    sh = shadow_of(doc)
    assert sh.euler == {"D": 1, "R": -1}
    bad = dict(doc, faces=[{"id": "D", "euler": 1}, {"id": "R", "euler": 0}])
    with pytest.raises(EulerMismatch):
        shadow_of(bad)
    bad = dict(doc, sides={"a": {"D": -1, "R": 1}})
    with pytest.raises(SideInconsistent):
        shadow_of(bad)
    bad = dict(doc, sides={"a": {"D": 1}})
    with pytest.raises(SideInconsistent):
        shadow_of(bad)


@given(seed=st.integers(0, 10**6))
def test_forest_invariants(seed):
    rng = random.Random(seed)
    sh = shadow_of(random_forest_doc(rng, [(0,), (1,), (2,)]))
    assert sum(sh.euler.values()) == 2
    assert sum(sh.gleam.values()) == 0
    assert len(sh.faces) == len(sh.loops) + 1
    for j in sh.loops:
        assert sh.side[(sh.plus_face[j], j)] == 1 and sh.side[(sh.minus_face[j], j)] == -1


@pytest.mark.parametrize("name, k", [("A1", 4), ("A2", 2)])
def test_closed_forms(name, k):
    md = build_modular_data(name, k)
    T, S = md.v, md.s
    for lam, mu, nu in itertools.product(md.alcove, repeat=3):
        a, b, c = md.index(lam), md.index(mu), md.index(nu)
        N = md.fusion_integers[a, b, c]
        v1 = shadow_state_sum(md, shadow_of(three_loops_doc(lam, mu, nu)))
        assert abs(v1 - T[a] * T[b] * T[c] / (T[0] ** 3 * S[0, 0] ** 2) * N) < 1e-9 * max(1, abs(v1))
        v2 = shadow_state_sum(md, shadow_of(nested_doc(lam, mu, nu)))
        assert abs(v2 - T[b] ** 2 / (T[0] ** 2 * S[0, 0] ** 2) * N) < 1e-9 * max(1, abs(v2))


@pytest.mark.parametrize("name, k, g", [("A1", 3, 0), ("A1", 3, 1), ("A2", 2, 2), ("G2", 2, 0)])
def test_empty_state_sum(name, k, g):
    md = build_modular_data(name, k)
    assert abs(empty_state_sum(md, g) - np.sum(md.qdims ** (2 - 2 * g))) < 1e-10
    assert abs(wlo_shadow(md, empty_shadow(g)) - 1) < 1e-12


@pytest.mark.parametrize("w", [-2, 0, 1, 3])
def test_unknot_colored_zero(w):
    md = build_modular_data("A2", 2)
    sh = shadow_of({"loops": [{"id": "u", "color": [0, 0], "winding": w}]})
    assert abs(shadow_state_sum(md, sh) - empty_state_sum(md, 0)) < 1e-10


@given(seed=st.integers(0, 10**6))
def test_color_zero_deletion(seed):
    md = build_modular_data("A1", 3)
    rng = random.Random(seed)
    doc = random_forest_doc(rng, md.alcove, max_loops=3)
    zero = rng.randrange(len(doc["loops"]))
    doc["loops"][zero]["color"] = [0]
    sh = shadow_of(doc)
    smaller = delete_loop(sh, doc["loops"][zero]["id"])
    assert sum(smaller.euler.values()) == 2 and sum(smaller.gleam.values()) == 0
    assert abs(shadow_state_sum(md, sh) - shadow_state_sum(md, smaller)) < 1e-10


@pytest.mark.parametrize("name, k", [("A1", 3), ("A2", 2), ("B2", 1)])
def test_three_vertical_points(name, k):
    md = build_modular_data(name, k)
    for lam, mu, nu in itertools.product(md.alcove, repeat=3):
        N = md.fusion_integers[md.index(lam), md.index(mu), md.index(nu)]
        assert abs(wlo_shadow(md, empty_shadow(0, [lam, mu, nu])) - N) < 1e-8


def test_verlinde_valued_sum_agrees():
    md = build_modular_data("A2", 2)
    sh = shadow_of(nested_doc((1, 0), (1, 1), (0, 1)))
    assert abs(shadow_state_sum(md, sh) - shadow_state_sum(md, sh, "verlinde")) < 1e-9


def test_color_not_in_alcove():
    md = build_modular_data("A1", 1)
    with pytest.raises(ColorNotInAlcove):
        shadow_state_sum(md, shadow_of({"loops": [{"id": "a", "color": [2]}]}))
