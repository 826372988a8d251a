import pytest
from hypothesis import given
from hypothesis import strategies as st

from char3curves.oracles import hyperelliptic_count
from char3curves.cartier import parse_hyperelliptic
from char3curves.zeta import (
    InconsistentCounts,
    LPolynomial,
    lpoly_from_counts,
    point_counts,
    prank_from_lpoly,
    read_golden,
    weil_bound_holds,
    write_golden,
)


def test_genus2_first_count():
    from char3curves.astower.tower import load_curve
    from conftest import CURVES

    assert point_counts(load_curve(CURVES / "genus2.curve", {"c": 1}), 1) == [8]


def test_genus2_overdetermined(genus2):
    counts = point_counts(genus2, 6)
    L = lpoly_from_counts(counts[:2], 2, 3)
    assert L.functional_equation_holds()
    assert L.predicted_counts(6) == counts
    assert prank_from_lpoly(L, 3) == 2
    assert L.riemann_hypothesis_holds()


def test_genus2_matches_hyperelliptic_model(genus2):
    c = genus2.params["c"]
    f = parse_hyperelliptic("c*X^6+X^4+X^2+1", c)
    assert point_counts(genus2, 4) == [hyperelliptic_count(f, k) for k in range(1, 5)]


def test_genus10_lpolynomial(genus10):
    counts = point_counts(genus10, 10)
    L = lpoly_from_counts(counts, 10, 3)
    assert len(L.coeffs) == 21
    assert L.functional_equation_holds()
    assert prank_from_lpoly(L, 3) == 10
    assert L.riemann_hypothesis_holds()
    # the 11th count is forced by the first ten
    assert L.predicted_counts(11)[-1] == point_counts(genus10, 11)[-1]


@pytest.mark.parametrize("k", range(1, 9))
def test_weil_bound_on_every_count(genus10, k):
    assert weil_bound_holds(point_counts(genus10, k)[-1], k, 3, 10)


def test_weil_bound_genus28(genus28):
    for i, n in enumerate(point_counts(genus28, 4), start=1):
        assert weil_bound_holds(n, i, 3, 28)


def test_nonintegral_coefficients_detected():
    with pytest.raises(InconsistentCounts):
        lpoly_from_counts([5, 10], 2, 3)  # a_2 = 1/2


def test_prank_above_genus_detected():
    L = LPolynomial((1, 0, 0, 0, 1), 3, 2)
    with pytest.raises(InconsistentCounts):
        prank_from_lpoly(L, 3)


@given(st.integers(-6, 6), st.integers(-20, 20))
def test_newton_roundtrip(a1, a2):
    q, g = 3, 2
    L = LPolynomial((1, a1, a2, q * a1, q * q), q, g)
    again = lpoly_from_counts(L.predicted_counts(2), g, q)
    assert again.coeffs == L.coeffs


def test_golden_roundtrip(tmp_path):
    path = tmp_path / "g.txt"
    write_golden(path, [1, 2, 3], "a header")
    assert read_golden(path) == [1, 2, 3]
    path.write_text("N_1 = 1\nN_3 = 3\n")
    with pytest.raises(ValueError):
        read_golden(path)
