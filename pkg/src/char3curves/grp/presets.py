"""Concrete realizations of the small groups that appear in the claims."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import product

from .elements import Perm
from .group import Group
from .iso import are_isomorphic
from .presentation import parse_presentation, todd_coxeter

PRESET_NAMES = ("UT33", "C3wrC3", "S81_8", "S81_9", "C9semiC3", "C3cubed", "C9xC3", "D12", "GL23")


def matrix_perm(mats, p: int, d: int) -> list[Perm]:
    """Matrices over GF(p) as permutations of the nonzero vectors of GF(p)^d."""
    vecs = [v for v in product(range(p), repeat=d) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    out = []
    for M in mats:
        img = [index[tuple(sum(M[r][c] * v[c] for c in range(d)) % p for r in range(d))] for v in vecs]
        out.append(Perm(tuple(img)))
    return out


def _presentation(name: str) -> str:
    return resources.files("char3curves.data.presentations").joinpath(f"{name}.txt").read_text()


def _build(name: str) -> Group:
    if name == "UT33":
        gens = matrix_perm([((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((1, 0, 0), (0, 1, 1), (0, 0, 1))], 3, 3)
    elif name == "C3wrC3":
        gens = [Perm.from_cycles(9, [(0, 1, 2)]), Perm.from_cycles(9, [(0, 3, 6), (1, 4, 7), (2, 5, 8)])]
    elif name in ("S81_8", "S81_9"):
        return todd_coxeter(parse_presentation(_presentation(name.lower())), name=name)
    elif name == "C9semiC3":
        # x -> x + 1 and x -> 4x on Z/9
        gens = [Perm(tuple((i + 1) % 9 for i in range(9))), Perm(tuple(4 * i % 9 for i in range(9)))]
    elif name == "C3cubed":
        gens = [Perm.from_cycles(9, [c]) for c in ((0, 1, 2), (3, 4, 5), (6, 7, 8))]
    elif name == "C9xC3":
        gens = [Perm.from_cycles(12, [tuple(range(9))]), Perm.from_cycles(12, [(9, 10, 11)])]
    elif name == "D12":
        gens = [Perm(tuple((i + 1) % 6 for i in range(6))), Perm(tuple(-i % 6 for i in range(6)))]
    elif name == "GL23":
        gens = matrix_perm([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))], 3, 2)
    else:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return Group.closure(gens, name=name)


@lru_cache(maxsize=None)
def preset_group(name: str) -> Group:
    return _build(name)


def identify(G: Group, names=PRESET_NAMES) -> list[str]:
    """Preset names isomorphic to G."""
    out = []
    for n in names:
        H = preset_group(n)
        if H.order == G.order and are_isomorphic(G, H):
            out.append(n)
    return out
