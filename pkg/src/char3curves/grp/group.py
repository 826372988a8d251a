"""Finite groups by exhaustive enumeration, with structure computations.

A :class:`Group` holds its elements in breadth-first closure order (identity
first) and a Cayley table over element indices.  Subgroups are Groups in
their own right; :meth:`Group.subgroup` keeps the parent's element objects.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import lcm
from typing import Hashable, Iterable, Sequence

import numpy as np

SIZE_GUARD = 3**6


class GroupTooLarge(RuntimeError):
    """Closure exceeded the size guard; the result would be inconclusive."""


class NotAPGroup(ValueError):
    pass


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, e) with n = p^e, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


class Group:
    def __init__(self, elements: list, table: np.ndarray, gens: Sequence[int], name: str = ""):
        self.elements = elements
        self.table = table
        self.gens = list(gens)
        self.name = name
        self.index = {e: i for i, e in enumerate(elements)}

    # -- construction

    @classmethod
    def closure(cls, generators: Sequence[Hashable], identity=None, guard: int = SIZE_GUARD, name: str = "") -> "Group":
        gens = list(generators)
        if identity is None:
            if not gens:
                raise ValueError("need an identity for the empty generating set")
            identity = gens[0] * gens[0].inverse()
        elements = [identity]
        index = {identity: 0}
        # right[x][k] = index of elements[x] * gens[k]; tree[j] = (parent, k)
        right: list[list[int]] = []
        tree: list[tuple[int, int]] = [(-1, -1)]
        x = 0
        while x < len(elements):
            row = []
            for k, g in enumerate(gens):
                y = elements[x] * g
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    tree.append((x, k))
                    if len(elements) > guard:
                        raise GroupTooLarge(f"closure exceeds {guard} elements")
                row.append(index[y])
            right.append(row)
            x += 1
        n = len(elements)
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        rmat = np.array(right, dtype=np.int32).reshape(n, len(gens))
        for j in range(1, n):
            par, k = tree[j]
            # a * e_j = (a * e_par) * g_k
            table[:, j] = rmat[table[:, par], k]
        return cls(elements, table, [index[g] for g in gens], name)

    def subgroup(self, members: Iterable[int], name: str = "") -> "Group":
        idx = sorted(set(members))
        if 0 not in idx:
            raise ValueError("subgroup must contain the identity")
        renum = {j: i for i, j in enumerate(idx)}
        sub = self.table[np.ix_(idx, idx)]
        table = np.vectorize(renum.__getitem__, otypes=[np.int32])(sub) if len(idx) > 1 else np.zeros((1, 1), np.int32)
        gens = [renum[g] for g in self._small_generating_set(idx)]
        g = Group([self.elements[i] for i in idx], table, gens, name)
        g.parent_indices = idx
        return g

    def _small_generating_set(self, idx: list[int]) -> list[int]:
        """Greedy generators for the subgroup with element indices ``idx``."""
        gens: list[int] = []
        span = {0}
        for i in sorted(idx, key=lambda i: (-self.element_order(i), i)):
            if i not in span:
                gens.append(i)
                span = self.generated(gens)
        return gens

    # -- basics

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 0
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    @cached_property
    def orders(self) -> list[int]:
        out = [0] * self.order
        for i in range(self.order):
            x, n = i, 1
            while x != 0:
                x = self.mul(x, i)
                n += 1
            out[i] = n
        return out

    def element_order(self, a: int) -> int:
        return self.orders[a]

    def generated(self, members: Iterable[int]) -> set[int]:
        gens = [g for g in set(members) if g != 0]
        span = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in span:
                    span.add(y)
                    queue.append(y)
        return span

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @property
    def exponent(self) -> int:
        return lcm(*self.orders)

    # -- invariants

    def order_statistics(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orders).items()))

    def center(self) -> "Group":
        members = [i for i in range(self.order) if np.array_equal(self.table[i], self.table[:, i])]
        return self.subgroup(members, "Z")

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """C[a, b] = [a, b]."""
        t, inv = self.table, self.inverses
        return t[t[np.ix_(inv, inv)], t]

    def derived_indices(self) -> set[int]:
        return self.generated(np.unique(self.commutator_table).tolist())

    def derived(self) -> "Group":
        return self.subgroup(self.derived_indices(), "G'")

    def lower_central_series(self) -> list[set[int]]:
        series = [set(range(self.order))]
        while True:
            cur = series[-1]
            nxt = self.generated(np.unique(self.commutator_table[sorted(cur)]).tolist())
            if nxt == cur:
                return series
            series.append(nxt)
            if len(nxt) == 1:
                return series

    def nilpotency_class(self) -> int | None:
        series = self.lower_central_series()
        return len(series) - 1 if len(series[-1]) == 1 else None

    def _p(self) -> tuple[int, int]:
        pe = prime_power(self.order)
        if pe is None:
            raise NotAPGroup(f"order {self.order} is not a prime power")
        return pe

    def is_maximal_class(self) -> bool:
        p, n = self._p()
        if n < 2:
            return False
        return self.nilpotency_class() == n - 1

    def frattini_indices_by_words(self) -> set[int]:
        """G' G^p as the closure of commutators and p-th powers."""
        p, _ = self._p()
        return self.generated(self.derived_indices() | {self.power(a, p) for a in range(self.order)})

    def hom_kernels_to_cp(self) -> list[frozenset[int]]:
        """Kernels of the surjections G -> Z/p, by propagating generator
        images along the Cayley graph and checking consistency."""
        p, _ = self._p()
        gens = self.gens or [1]
        kernels = set()
        for imgs in product(range(p), repeat=len(gens)):
            if not any(imgs):
                continue
            val = {0: 0}
            queue = deque([0])
            ok = True
            while queue and ok:
                x = queue.popleft()
                for g, c in zip(gens, imgs):
                    y = self.mul(x, g)
                    v = (val[x] + c) % p
                    if y in val:
                        if val[y] != v:
                            ok = False
                            break
                    else:
                        val[y] = v
                        queue.append(y)
            if ok and len(val) == self.order:
                kernels.add(frozenset(i for i, v in val.items() if v == 0))
        return sorted(kernels, key=lambda k: sorted(k))

    def maximal_subgroups(self) -> list["Group"]:
        """Preimages of the hyperplanes of G / G'G^p."""
        p, _ = self._p()
        phi = self.frattini_indices_by_words()
        # Burnside basis: lifts of a basis of G / Phi
        basis: list[int] = []
        span = set(phi)
        for i in range(self.order):
            if i not in span:
                basis.append(i)
                span = self.generated(phi | set(basis))
        d = len(basis)
        out = []
        seen = set()
        for func in product(range(p), repeat=d):
            if not any(func):
                continue
            lead = next(c for c in func if c)
            if lead != 1:
                continue  # one functional per hyperplane
            # kernel of the functional: vectors v with sum func_i v_i = 0
            gens = set(phi)
            for v in product(range(p), repeat=d):
                if sum(f * x for f, x in zip(func, v)) % p == 0 and any(v):
                    w = 0
                    for b, e in zip(basis, v):
                        w = self.mul(w, self.power(b, e))
                    gens.add(w)
            members = frozenset(self.generated(gens))
            if members not in seen:
                seen.add(members)
                out.append(self.subgroup(members, "M"))
        return out

    def frattini(self) -> "Group":
        maxs = self.maximal_subgroups()
        common = set(range(self.order))
        for m in maxs:
            common &= set(m.parent_indices)
        return self.subgroup(common, "Phi")

    def abelian_invariants(self) -> tuple[int, ...] | None:
        """Orders of the cyclic prime-power factors (descending), or None
        if G is not abelian."""
        if not self.is_abelian():
            return None
        out: list[int] = []
        n = self.order
        for q in range(2, n + 1):
            if n % q or prime_power(q) != (q, 1):
                continue
            # #{x : x^(q^i) = 1} = q^s_i with s_i = sum_j min(e_j, i)
            s = [0]
            while True:
                size = sum(1 for o in self.orders if (q ** len(s)) % o == 0)
                e = 0
                while size > 1:
                    size //= q
                    e += 1
                s.append(e)
                if s[-1] == s[-2]:
                    break
            at_least = [s[i] - s[i - 1] for i in range(1, len(s))] + [0]
            for i in range(1, len(at_least)):
                out.extend([q**i] * (at_least[i - 1] - at_least[i]))
        return tuple(sorted(out, reverse=True))

    def abelian_label(self) -> str | None:
        inv = self.abelian_invariants()
        if inv is None:
            return None
        return "x".join(f"C{n}" for n in inv) if inv else "C1"

    def abelianization_order(self) -> int:
        return self.order // len(self.derived_indices())

    @cached_property
    def centralizer_orders(self) -> list[int]:
        t = self.table
        return [int(np.sum(t[i] == t[:, i])) for i in range(self.order)]

    @cached_property
    def fingerprint(self) -> tuple:
        """Isomorphism-invariant summary used to screen candidates."""
        pe = prime_power(self.order)
        cls = self.nilpotency_class()
        fp = (
            self.order,
            tuple(self.order_statistics().items()),
            len(self.center()),
            len(self.derived_indices()),
            cls,
            tuple(sorted(Counter(zip(self.orders, self.centralizer_orders)).items())),
        )
        if pe is not None:
            fp += (len(self.frattini_indices_by_words()),)
        return fp

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Group{tag} of order {self.order}>"


@dataclass(frozen=True)
class CharacteristicSubgroups:
    center: Group
    derived: Group
    frattini: Group
    maximal_subgroups: tuple[Group, ...]
    frattini_by_words: frozenset[int]
    frattini_by_kernels: frozenset[int]

    @property
    def frattini_routes_agree(self) -> bool:
        return self.frattini_by_words == self.frattini_by_kernels == frozenset(self.frattini.parent_indices)


def characteristic_subgroups(G: Group) -> CharacteristicSubgroups:
    maxs = tuple(G.maximal_subgroups())
    phi = G.frattini()
    kernels = G.hom_kernels_to_cp()
    by_kernels = set(range(G.order))
    for k in kernels:
        by_kernels &= k
    if sorted(sorted(k) for k in kernels) != sorted(m.parent_indices for m in maxs):
        raise AssertionError("maximal subgroups from hyperplanes and from kernels differ")
    return CharacteristicSubgroups(
        center=G.center(),
        derived=G.derived(),
        frattini=phi,
        maximal_subgroups=maxs,
        frattini_by_words=frozenset(G.frattini_indices_by_words()),
        frattini_by_kernels=frozenset(by_kernels),
    )


def order_statistics(G: Group) -> dict[int, int]:
    return G.order_statistics()


def is_maximal_class(G: Group) -> bool:
    return G.is_maximal_class()


def group_closure(gens: Sequence[Hashable], identity=None, guard: int = SIZE_GUARD) -> Group:
    return Group.closure(gens, identity, guard)
