import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char3curves.autoverify import (
    CoordinateMap,
    NonInvertibleMap,
    PointAction,
    generated_group,
    invariant_sextic_classifier,
    orbit_analysis,
    tower_maps,
    verify_automorphism,
)
from char3curves.claims import _named_map
from char3curves.grp import group_closure
from char3curves.grp.elements import Affine
from char3curves.mpoly import MPoly


def images(t, table, name="phi"):
    return _named_map(t, {"images": table, "map": name})


@pytest.mark.parametrize("name", ["g", "h"])
def test_genus10_generators(genus10, name):
    phi = tower_maps(genus10)[name]
    assert verify_automorphism(genus10, phi).verified
    assert verify_automorphism(genus10, phi.inverse()).verified


def test_genus10_plain_swap_fails(genus10):
    cert = verify_automorphism(genus10, tower_maps(genus10)["r"])
    assert not cert.verified
    # the first relation is symmetric in X, Y; the second picks up a sign
    assert cert.reductions[0]["normal_form"] == "0"
    assert cert.reductions[1]["normal_form"] != "0"


def test_genus10_signed_swap(genus10):
    assert verify_automorphism(genus10, images(genus10, {"X": "Y", "Y": "X", "Z": "-Z"})).verified


def test_swap_on_points_agrees_with_algebra(genus10):
    # brute force over GF(81): the plain swap moves points off the curve
    act = PointAction(genus10, 4)
    F = act.F
    rels = [r.map_coeffs(F, genus10.constant_field.embedding(F)) for r in genus10.relations()]
    pts = [pt for kind, pt in act.points if kind == "good"]
    assert len(pts) == 54

    def on_curve(p):
        return all(r(*p) == 0 for r in rels)

    assert all(on_curve((y, x, F.neg(z))) for x, y, z in pts)
    assert sum(on_curve((y, x, z)) for x, y, z in pts) == 18


def test_translation_is_not_automorphism(genus10):
    assert not verify_automorphism(genus10, images(genus10, {"X": "X + 1", "Y": "Y", "Z": "Z"})).verified


@pytest.mark.parametrize("name", ["g1", "g2", "g3", "g4"])
def test_genus28_generators(genus28, name):
    assert verify_automorphism(genus28, tower_maps(genus28)[name]).verified


def test_singular_map_rejected(genus10):
    phi = images(genus10, {"X": "X", "Y": "X", "Z": "Z"})
    with pytest.raises(NonInvertibleMap):
        phi.check_invertible()
    assert not verify_automorphism(genus10, phi).verified


def test_generated_group_ut33(genus10):
    m = tower_maps(genus10)
    gg = generated_group([m["g"], m["h"]])
    assert gg.group.order == 27 and gg.exponent == 3
    assert "UT33" in gg.identified_as


def test_generated_group_genus28(genus28):
    m = tower_maps(genus28)
    gg = generated_group([m[k] for k in ("g1", "g2", "g3", "g4")])
    assert gg.group.order == 81 and gg.exponent == 9
    assert "C3wrC3" in gg.identified_as


@given(st.integers(0, 10_000))
@settings(max_examples=10, deadline=None)
def test_generated_group_invariant_under_words(genus10, seed):
    m = tower_maps(genus10)
    gg = generated_group([m["g"], m["h"]])
    rng = random.Random(seed)
    G = gg.group
    while True:
        words = [G.elements[rng.randrange(G.order)] for _ in range(3)]
        H = group_closure(words, identity=G.elements[0])
        if H.order == G.order:
            break
    assert H.fingerprint == G.fingerprint


@pytest.fixture(scope="module")
def ut33_orbits(genus10):
    m = tower_maps(genus10)
    G = generated_group([m["g"], m["h"]]).group
    return orbit_analysis(genus10, G, 6)


def test_orbit_stabilizer(ut33_orbits):
    tab = ut33_orbits
    assert sum(o.length for o in tab.orbits) == tab.npoints
    assert all(o.length * o.stabilizer_order == tab.group_order for o in tab.orbits)


def test_short_orbits_genus10(ut33_orbits):
    short = ut33_orbits.short_orbits()
    assert sorted((o.length, o.stabilizer_order, o.jumps) for o in short) == [(9, 3, (3, 3))] * 2
    assert all(o.length == 27 for o in ut33_orbits.orbits if o not in short)


def test_trivial_group_orbits(genus10):
    G = group_closure([Affine.identity(3, 3)], identity=Affine.identity(3, 3))
    tab = orbit_analysis(genus10, G, 2, jumps=False)
    assert all(o.length == 1 for o in tab.orbits)
    assert len(tab.orbits) == tab.npoints


def test_invariant_sextics_shape():
    cls = invariant_sextic_classifier()
    assert cls.dimension == 2
    assert cls.formatted() == ["X^3*Y^3 + 2*X^3*Y + 2*X*Y^3 + X*Y", "1"]


def test_invariant_sextics_without_shape():
    cls = invariant_sextic_classifier(shape=False)
    F3 = cls.basis[0].field
    for b in cls.basis:
        X, Y = MPoly.var(F3, 2, 0), MPoly.var(F3, 2, 1)
        assert b.substitute([X + 1, Y]) == b
        assert b.substitute([X, Y + 1]) == b
    assert cls.dimension == 6
