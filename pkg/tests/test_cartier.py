import pytest

from char3curves.cartier import SingularModel, cartier_manin_matrix, hyperelliptic_genus, parse_hyperelliptic, prank_hyperelliptic
from char3curves.gf import GF, Polynomial


@pytest.mark.parametrize("c", [1, 2])
def test_identity_matrix_over_prime_field(c):
    hw = cartier_manin_matrix(parse_hyperelliptic("c*X^6+X^4+X^2+1", c))
    assert hw.g == 2
    assert hw.rows() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sweep_all_nonzero_c(k):
    F = GF(3, k)
    for c in F.elements():
        if c:
            assert prank_hyperelliptic(parse_hyperelliptic("c*X^6+X^4+X^2+1", c, k)) == 2


def test_p5_quintic_against_expansion():
    # A[i][j] = coefficient of x^(p i - j) in f^((p-1)/2), i, j = 1..g
    F = GF(5)
    f = Polynomial.from_ints(F, [1, 2, 0, 0, 0, 1])  # x^5 + 2x + 1
    assert f.is_squarefree()
    sq = f * f
    expected = [[sq.coeffs[5 * i - j] if 5 * i - j < len(sq.coeffs) else 0 for j in (1, 2)] for i in (1, 2)]
    hw = cartier_manin_matrix(f, 5)
    assert hw.g == 2
    assert hw.rows() == expected
    assert 0 <= prank_hyperelliptic(f, 5) <= 2


def test_singular_model_rejected():
    F = GF(3)
    f = Polynomial.from_ints(F, [0, 0, 1, 1])  # x^2 (x + 1) has a double root
    with pytest.raises(SingularModel):
        cartier_manin_matrix(f)
