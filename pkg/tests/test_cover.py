import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from char3curves.cover import (
    CoverData,
    InconsistentCoverData,
    ShortOrbit,
    bound_report,
    dsh_prank,
    hurwitz_genus,
    lower_filtration,
    short_orbit_numerology,
)

UT33_COVER = CoverData(27, 0, 0, (ShortOrbit(9, (3, 3)), ShortOrbit(9, (3, 3))))


def test_ut33_example():
    assert hurwitz_genus(UT33_COVER) == 10
    assert dsh_prank(UT33_COVER) == 10


def test_unramified_cover_of_elliptic_curve():
    c = CoverData(9, 1, 1)
    assert hurwitz_genus(c) == 1 and dsh_prank(c) == 1


def test_json_roundtrip(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(UT33_COVER.to_json()))
    assert CoverData.load(path) == UT33_COVER


@pytest.mark.parametrize(
    "bad",
    [
        lambda: ShortOrbit(9, (3,)),  # |S^(0)| must equal |S^(1)|
        lambda: ShortOrbit(9, (3, 9)),  # increasing
        lambda: ShortOrbit(9, (3, 3, 1)),  # terminal 1 listed
        lambda: CoverData(27, 0, 0, (ShortOrbit(9, (9, 9)),)),  # 9 * 9 != 27
        lambda: CoverData(27, 1, 2),  # p-rank above genus
    ],
)
def test_inconsistent_data_rejected(bad):
    with pytest.raises(InconsistentCoverData):
        bad()


def test_negative_genus_rejected():
    # an unramified Z/3 cover of P^1 does not exist
    with pytest.raises(InconsistentCoverData):
        hurwitz_genus(CoverData(3, 0, 0))


@pytest.mark.parametrize("h", range(2, 21))
def test_numerology_unique(h):
    n = short_orbit_numerology(h)
    assert n.unique and (n.m, n.r) == (h - 1, h - 1)


def test_numerology_range():
    with pytest.raises(ValueError):
        short_orbit_numerology(21)


@pytest.mark.parametrize("order,gamma", [(27, 10), (243, 82)])
def test_nakajima_attained(order, gamma):
    rep = bound_report(gamma, gamma, 3, group_order=order)
    assert rep.nakajima_bound == order == 3 * (gamma - 1)
    assert rep.attains_nakajima and rep.exceeds_threshold


def test_prank_one_bound():
    rep = bound_report(5, 1, 3)
    assert rep.nakajima_bound == 4


def test_lower_filtration_cyclic():
    # a single Z/3 character with conductor m = 1 and the trivial character
    assert lower_filtration(3, [0, 1, 1]) == (3, 3)
    assert lower_filtration(3, [0, 2, 2]) == (3, 3, 3)
    assert lower_filtration(3, [0, 0, 0]) == ()


@given(st.integers(1, 30).filter(lambda m: m % 3))
def test_lower_filtration_cyclic_conductor(m):
    # Z/3 with conductor m: lower jumps at m, d = 2(m + 1)
    jumps = lower_filtration(3, [0, m, m])
    assert jumps == (3,) * (m + 1)
    assert sum(j - 1 for j in jumps) == 2 * (m + 1)
