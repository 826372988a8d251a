import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char3curves.grp import (
    PRESET_NAMES,
    Affine,
    GroupTooLarge,
    Perm,
    are_isomorphic,
    characteristic_subgroups,
    group_closure,
    identify,
    is_maximal_class,
    order_statistics,
    parse_presentation,
    preset_group,
    todd_coxeter,
)
from char3curves.grp.group import NotAPGroup
from char3curves.grp.presentation import CosetLimitExceeded, PresentationSyntaxError

P_GROUPS = ["UT33", "C3wrC3", "S81_8", "S81_9", "C9semiC3", "C3cubed", "C9xC3"]


def test_trivial_closure():
    e = Perm.identity(4)
    assert group_closure([e]).order == 1


def test_cyclic_three_by_presentation():
    G = todd_coxeter(parse_presentation("gens: a\na^3"))
    assert G.order == 3


def test_c9_order_statistics():
    G = todd_coxeter(parse_presentation("gens: a\na^9"))
    assert order_statistics(G) == {1: 1, 3: 2, 9: 6}


@pytest.mark.parametrize("name,order", [("UT33", 27), ("C3wrC3", 81), ("S81_8", 81), ("S81_9", 81), ("C9semiC3", 27), ("C3cubed", 27), ("C9xC3", 27), ("D12", 12), ("GL23", 48)])
def test_preset_orders(name, order):
    assert preset_group(name).order == order


def test_ut33_exponent():
    assert preset_group("UT33").exponent == 3


def test_order3_counts():
    assert order_statistics(preset_group("S81_9"))[3] == 62
    assert order_statistics(preset_group("S81_8"))[3] == 26


@pytest.mark.parametrize("name", P_GROUPS)
def test_frattini_routes_agree(name):
    cs = characteristic_subgroups(preset_group(name))
    assert cs.frattini_routes_agree


@pytest.mark.parametrize("name", ["UT33", "C3wrC3"])
def test_frattini_is_derived_of_index_9(name):
    G = preset_group(name)
    cs = characteristic_subgroups(G)
    assert set(cs.frattini.parent_indices) == set(cs.derived.parent_indices)
    assert cs.frattini.order * 9 == G.order
    assert len(cs.maximal_subgroups) == 4


def test_ut33_center():
    assert characteristic_subgroups(preset_group("UT33")).center.order == 3


def test_elementary_abelian_rank_two():
    G = group_closure([Perm.from_cycles(6, [(0, 1, 2)]), Perm.from_cycles(6, [(3, 4, 5)])])
    cs = characteristic_subgroups(G)
    assert cs.frattini.order == 1 and len(cs.maximal_subgroups) == 4


def test_maximal_types():
    def types(name):
        return sorted(identify(M)[0] if identify(M) else M.abelian_label() for M in preset_group(name).maximal_subgroups())

    assert types("C3wrC3") == ["C3cubed", "C9semiC3", "C9semiC3", "UT33"]
    assert types("S81_9") == ["C9xC3", "UT33", "UT33", "UT33"]


def test_c9semic3_one_noncyclic_maximal():
    maxs = preset_group("C9semiC3").maximal_subgroups()
    assert sorted(M.abelian_label() for M in maxs) == ["C3xC3", "C9", "C9", "C9"]


def test_maximal_class():
    assert is_maximal_class(preset_group("UT33"))
    assert not is_maximal_class(preset_group("C3cubed"))
    assert is_maximal_class(preset_group("S81_9"))


def test_non_p_group_rejected():
    with pytest.raises(NotAPGroup):
        characteristic_subgroups(preset_group("D12"))


def test_isomorphism_distinguishes_order_27():
    assert not are_isomorphic(preset_group("UT33"), preset_group("C9semiC3"))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_isomorphism_reflexive(name):
    G = preset_group(name)
    res = are_isomorphic(G, G)
    assert res.isomorphic


def test_isomorphism_symmetric():
    names = [n for n in P_GROUPS if preset_group(n).order == 27]
    for a in names:
        for b in names:
            assert bool(are_isomorphic(preset_group(a), preset_group(b))) == bool(are_isomorphic(preset_group(b), preset_group(a)))


@given(st.permutations(range(2)), st.integers(0, 1000))
@settings(max_examples=10, deadline=None)
def test_fingerprint_independent_of_generators(order, seed):
    G = preset_group("C3wrC3")
    rng = random.Random(seed)
    # replace the generators by random words that still generate
    while True:
        words = [G.elements[rng.randrange(1, G.order)] for _ in range(3)]
        H = group_closure(words)
        if H.order == G.order:
            break
    assert H.fingerprint == G.fingerprint
    assert are_isomorphic(G, H)


def test_affine_elements():
    a = Affine(((1, 1), (0, 1)), (0, 0))
    b = Affine(((1, 0), (0, 1)), (1, 0))
    assert a((0, 1)) == (1, 1)
    assert (a * a.inverse()) == Affine.identity(2)
    assert group_closure([a, b]).order == 9
    with pytest.raises(ValueError):
        Affine(((1, 1), (1, 1)), (0, 0))


def test_size_guard():
    n = 12
    gens = [Perm(tuple((i + 1) % n for i in range(n))), Perm.from_cycles(n, [(0, 1)])]
    with pytest.raises(GroupTooLarge):
        group_closure(gens, guard=5000)


def test_coset_ceiling():
    from char3curves.grp import todd_coxeter as tc

    with pytest.raises(CosetLimitExceeded):
        tc(parse_presentation("gens: a b\n[a,b]"), ceiling=50)


def test_presentation_syntax():
    p = parse_presentation("gens: a b\na^3\nb^3\n[a,b] = 1\na*b = b*a")
    assert p.generators == ("a", "b") or list(p.generators) == ["a", "b"]
    assert todd_coxeter(p).order == 9
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\na^x")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nb^2")
