import pytest
from hypothesis import given
from hypothesis import strategies as st

from char3curves.gf import GF
from char3curves.mpoly import MPoly, monomials
from char3curves.series import LaurentSeries, PrecisionError

F9 = GF(3, 2)

coeff_lists = st.lists(st.integers(0, 8), min_size=1, max_size=8).filter(lambda c: c[0] != 0)


def series(coeffs, val=0, prec=12):
    return LaurentSeries(F9, val, coeffs, prec)


@given(coeff_lists, st.integers(-3, 3))
def test_inverse(coeffs, val):
    f = series(coeffs, val)
    one = f * f.inverse()
    assert one.valuation == 0 and one.terms() == {0: 1}


@given(coeff_lists, coeff_lists)
def test_product_commutes(a, b):
    assert (series(a) * series(b)).terms() == (series(b) * series(a)).terms()


@given(coeff_lists)
def test_frobenius_is_a_ring_map(coeffs):
    f = series(coeffs)
    assert (f * f).frobenius().terms() == (f.frobenius() * f.frobenius()).terms()
    # f^3 = frob(f) in characteristic 3; frobenius triples the precision
    cube = f**3
    assert cube.terms() == f.frobenius().truncate(cube.prec).terms()


@given(coeff_lists, coeff_lists)
def test_compose_with_t_plus_higher(outer, inner):
    f = series(outer)
    g = series([0, 1] + inner[1:4], 0)  # t + O(t^2)
    h = f.compose(g)
    assert h[0] == f[0]


def test_precision_is_tracked():
    f = LaurentSeries.monomial(F9, 1, -2, 5)
    g = LaurentSeries.monomial(F9, 1, 3, 10)
    assert (f * g).prec == 8
    assert (f + g).prec == 5


def test_zero_to_precision_has_no_valuation():
    z = LaurentSeries.zero(F9, 4)
    with pytest.raises(PrecisionError):
        z.inverse()


def test_mpoly_substitute_and_format():
    X, Y = MPoly.var(F9, 2, 0), MPoly.var(F9, 2, 1)
    f = X * Y - X**3
    assert f.substitute([X + 1, Y]).format(["X", "Y"]) == (((X + 1) * Y) - (X + 1) ** 3).format(["X", "Y"])
    assert f.degree_in(0) == 3 and f.total_degree() == 3
    assert f(1, 1) == 0


def test_mpoly_eval_series_matches_scalar():
    X, Y = MPoly.var(F9, 2, 0), MPoly.var(F9, 2, 1)
    f = X**2 * Y + 2
    vals = [LaurentSeries.const(F9, 4, 6), LaurentSeries.const(F9, 7, 6)]
    assert f.eval_series(vals, 6)[0] == f(4, 7)


def test_monomial_count():
    assert len(list(monomials(2, 6))) == 28
