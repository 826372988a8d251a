"""Isomorphism testing by invariant screening and generator backtracking."""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import Group, prime_power

ISO_GUARD = 3**5


class InconclusiveIsomorphism(RuntimeError):
    pass


@dataclass
class IsoResult:
    isomorphic: bool
    reason: str
    witness: dict[int, int] = field(default_factory=dict)  # generator index in G -> element index in H

    def __bool__(self) -> bool:
        return self.isomorphic


def minimal_generators(G: Group) -> list[int]:
    """A Burnside basis for p-groups (lifts of a basis of G/Phi); a greedy
    generating set otherwise."""
    if prime_power(G.order) is not None:
        phi = G.frattini_indices_by_words()
        basis: list[int] = []
        span = set(phi)
        for i in sorted(range(G.order), key=lambda i: (-G.orders[i], i)):
            if i not in span:
                basis.append(i)
                span = G.generated(phi | set(basis))
        return basis
    return G._small_generating_set(list(range(G.order)))


def extend_homomorphism(G: Group, H: Group, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Injective homomorphism on <gens> with gens -> images, or None."""
    image_of = {0: 0}
    used = {0}
    queue = [0]
    for x in queue:
        for g, h in zip(gens, images):
            y = G.mul(x, g)
            img = H.mul(image_of[x], h)
            if y in image_of:
                if image_of[y] != img:
                    return None
            else:
                if img in used:
                    return None
                image_of[y] = img
                used.add(img)
                queue.append(y)
    return image_of


def are_isomorphic(G: Group, H: Group, guard: int = ISO_GUARD) -> IsoResult:
    if G.order != H.order:
        return IsoResult(False, f"orders {G.order} != {H.order}")
    if G.order > guard:
        raise InconclusiveIsomorphism(f"order {G.order} exceeds the isomorphism guard {guard}")
    if G.fingerprint != H.fingerprint:
        return IsoResult(False, "invariant fingerprints differ")
    gens = minimal_generators(G)
    if not gens:
        return IsoResult(True, "trivial groups", {})
    key = lambda i: (G.orders[i], G.centralizer_orders[i])  # noqa: E731
    cands = []
    for g in gens:
        want = key(g)
        cands.append(sorted((h for h in range(H.order) if (H.orders[h], H.centralizer_orders[h]) == want),
                            key=lambda h: (H.orders[h], h)))

    def search(k: int, chosen: list[int]) -> dict[int, int] | None:
        if k == len(gens):
            m = extend_homomorphism(G, H, gens, chosen)
            return m if m is not None and len(m) == G.order else None
        for h in cands[k]:
            trial = chosen + [h]
            if extend_homomorphism(G, H, gens[: k + 1], trial) is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    found = search(0, [])
    if found is None:
        return IsoResult(False, "no generator assignment extends to an isomorphism")
    return IsoResult(True, "explicit isomorphism", {g: found[g] for g in gens})
