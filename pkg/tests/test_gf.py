import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char3curves.gf import GF, FieldDescriptor, FieldElement, FieldError, Polynomial, as_solve, is_irreducible, poly_roots, smallest_irreducible


def elements(k):
    return st.integers(min_value=0, max_value=3**k - 1)


@pytest.mark.parametrize("k", range(1, 7))
def test_as_solvability_law_exhaustive(k):
    F = GF(3, k)
    for a in F.elements():
        sols = F.as_solve(a)
        assert len(sols) in (0, 3)
        assert (len(sols) == 3) == (F.trace(a) == 0)
        for z in sols:
            assert F.sub(F.pow(z, 3), z) == a


@pytest.mark.parametrize("k", range(1, 7))
def test_vectorized_particular_solution(k):
    F = GF(3, k)
    a = np.arange(F.q, dtype=np.int64)
    a = a[F.vtrace(a) == 0]
    z = F.vas_particular(a)
    assert np.array_equal(F.vsub(F.vpow(z, 3), z), a)


@given(k=st.integers(1, 6), data=st.data())
def test_field_axioms(k, data):
    F = GF(3, k)
    a, b, c = (data.draw(elements(k)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(k=st.integers(1, 6), data=st.data())
def test_frobenius_is_additive_and_multiplicative(k, data):
    F = GF(3, k)
    a, b = data.draw(elements(k)), data.draw(elements(k))
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.frob(a, k) == a
    assert F.frob(F.pth_root(a)) == a


@given(k=st.integers(1, 6), data=st.data())
def test_trace_is_linear_and_frobenius_invariant(k, data):
    F = GF(3, k)
    a, b = data.draw(elements(k)), data.draw(elements(k))
    c = data.draw(st.integers(0, 2))
    assert F.trace(F.add(a, F.scale(c, b))) == (F.trace(a) + c * F.trace(b)) % 3
    assert F.trace(F.frob(a)) == F.trace(a)


@given(k=st.integers(2, 5), data=st.data())
@settings(max_examples=50)
def test_vector_ops_match_scalar(k, data):
    F = GF(3, k)
    xs = data.draw(st.lists(elements(k), min_size=1, max_size=20))
    ys = data.draw(st.lists(elements(k), min_size=len(xs), max_size=len(xs)))
    a, b = np.array(xs), np.array(ys)
    assert F.vmul(a, b).tolist() == [F.mul(x, y) for x, y in zip(xs, ys)]
    assert F.vadd(a, b).tolist() == [F.add(x, y) for x, y in zip(xs, ys)]
    assert F.vpow(a, 5).tolist() == [F.pow(x, 5) for x in xs]
    assert F.vtrace(a).tolist() == [F.trace(x) for x in xs]


@pytest.mark.parametrize("small_k,big_k", [(1, 2), (2, 4), (2, 6), (3, 6)])
def test_embedding_is_a_ring_map(small_k, big_k):
    small, big = GF(3, small_k), GF(3, big_k)
    emb = small.embedding(big)
    for a in small.elements():
        for b in small.elements():
            assert emb(small.mul(a, b)) == big.mul(emb(a), emb(b))
            assert emb(small.add(a, b)) == big.add(emb(a), emb(b))


def test_smallest_irreducible_is_irreducible():
    for k in range(2, 9):
        assert is_irreducible(smallest_irreducible(3, k), 3)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldDescriptor(3, 2, (2, 0, 1))  # X^2 - 1
    with pytest.raises(FieldError):
        FieldDescriptor(4, 1)


def test_field_element_wrapper():
    F = GF(3, 2)
    a = FieldElement(F, 5)
    assert a + 0 == a
    assert (a * a) / a == a
    assert len(as_solve(FieldElement(F, 0))) == 3


@given(roots=st.sets(st.integers(0, 8), min_size=1, max_size=5))
def test_poly_roots_recovers_product_roots(roots):
    F = GF(3, 2)
    f = Polynomial(F, [1])
    for r in roots:
        f = f * Polynomial(F, [F.neg(r), 1])
    assert poly_roots(f) == roots


def test_poly_roots_in_extension():
    F = GF(3)
    f = Polynomial.from_ints(F, [1, 0, 1])  # X^2 + 1 irreducible over GF(3)
    assert poly_roots(f) == set()
    assert len(poly_roots(f, GF(3, 2))) == 2
