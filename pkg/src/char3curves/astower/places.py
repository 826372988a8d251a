"""Places of an AS tower: rational-point counts, ramification tables, genus.

A *point* below means a degree-1 place over the counting field GF(q0^k),
where GF(q0) is the tower's constant field.  Good points (x finite, off the
roots of the step denominators) are identified by their coordinate tuple;
points in bad fibers by (x-value or None, branch data) as produced by
:mod:`.local`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..cover import CoverData, ShortOrbit, dsh_prank, hurwitz_genus, lower_filtration
from ..gf import GF, FieldDescriptor, Polynomial, poly_roots
from ..series import LaurentSeries
from .local import MAX_TERMS, Node, as_reduce, base_node, build_fiber
from .tower import ASTower

INFINITY = None
MAX_SPLITTING_DEGREE = 12
CHUNK = 1 << 18


def counting_field(t: ASTower, k: int) -> FieldDescriptor:
    F0 = t.constant_field
    return GF(F0.p, F0.k * k)


def bad_roots(t: ASTower, F: FieldDescriptor) -> list[int]:
    return sorted(poly_roots(t.bad_denominator, F))


# --- good fibers, vectorized ---------------------------------------------------


def _good_points(t: ASTower, F: FieldDescriptor, xs: np.ndarray) -> list[np.ndarray]:
    """Coordinate arrays (x, v_1, ..., v_n) of all points over the given
    good x-values."""
    tb = t.over(F)
    cols = [xs]
    p = F.p
    for step in tb.steps:
        x = cols[0]
        vals = cols + [np.zeros_like(x)] * (tb.nvars - len(cols))
        f = F.vmul(step.num.veval(vals), F.vinv(step.den.veval(x, F)))
        keep = F.vtrace(f) == 0
        z0 = F.vas_particular(f[keep])
        cols = [np.repeat(c[keep], p) for c in cols]
        shifts = np.tile(np.arange(p, dtype=np.int64), len(z0))
        cols.append(F.vadd(np.repeat(z0, p), shifts))
    return cols


def _good_x(t: ASTower, F: FieldDescriptor):
    bad = np.array(bad_roots(t, F), dtype=np.int64)
    for lo in range(0, F.q, CHUNK):
        xs = np.arange(lo, min(F.q, lo + CHUNK), dtype=np.int64)
        if len(bad):
            xs = xs[~np.isin(xs, bad)]
        yield xs


def good_point_count(t: ASTower, k: int) -> int:
    F = counting_field(t, k)
    return sum(len(_good_points(t, F, xs)[0]) for xs in _good_x(t, F))


# --- bad fibers ------------------------------------------------------------------


def fiber(t: ASTower, F: FieldDescriptor, a) -> Node:
    cache = t.__dict__.setdefault("_fibers", {})
    if (F.k, a) not in cache:
        cache[(F.k, a)] = build_fiber(t.over(F), F, a)
    return cache[(F.k, a)]


def bad_fibers(t: ASTower, F: FieldDescriptor) -> dict:
    return {a: fiber(t, F, a) for a in [INFINITY] + bad_roots(t, F)}


def bad_point_count(t: ASTower, k: int) -> int:
    F = counting_field(t, k)
    return sum(len(root.leaves(t.height)) for root in bad_fibers(t, F).values())


def count_rational_places(t: ASTower, k: int) -> int:
    """N_k = number of degree-1 places over GF(q0^k)."""
    return good_point_count(t, k) + bad_point_count(t, k)


# --- explicit point sets and closed points ---------------------------------------


def rational_points(t: ASTower, k: int) -> list[tuple]:
    """Every point over GF(q0^k): ("good", coords) or ("bad", key)."""
    F = counting_field(t, k)
    out = []
    for xs in _good_x(t, F):
        cols = _good_points(t, F, xs)
        out.extend(("good", tuple(int(c) for c in row)) for row in zip(*cols))
    for root in bad_fibers(t, F).values():
        out.extend(("bad", leaf.key) for leaf in root.leaves(t.height))
    return out


def frobenius_point(t: ASTower, F: FieldDescriptor, pt: tuple) -> tuple:
    """Image under the q0-power Frobenius."""
    e = t.constant_field.k
    kind, data = pt
    if kind == "good":
        return kind, tuple(F.frob(c, e) for c in data)
    a, branch = data
    a2 = None if a is None else F.frob(a, e)
    br = tuple((tag, F.frob(r, e)) if tag == "split" else (tag, r) for tag, r in branch)
    return kind, (a2, br)


@dataclass(frozen=True)
class Place:
    base_locus: Polynomial | None  # minimal polynomial of x over GF(q0); None = infinity
    branches: tuple
    degree: int
    representative: tuple = field(compare=False, default=())

    @property
    def at_infinity(self) -> bool:
        return self.base_locus is None


def _minimal_polynomial(F0: FieldDescriptor, F: FieldDescriptor, orbit: list[int]) -> Polynomial:
    emb = F0.embedding(F)
    back = {emb(c): c for c in F0.elements()}
    poly = Polynomial(F, [1])
    for a in orbit:
        poly = poly * Polynomial(F, [F.neg(a), 1])
    return Polynomial(F0, [back[c] for c in poly.coeffs])


def places_deg1(t: ASTower, k: int) -> list[Place]:
    """Closed points of degree dividing k, from Frobenius orbits on the
    GF(q0^k)-points."""
    F = counting_field(t, k)
    pts = rational_points(t, k)
    seen: set = set()
    out = []
    for pt in pts:
        if pt in seen:
            continue
        orbit = [pt]
        nxt = frobenius_point(t, F, pt)
        while nxt != pt:
            orbit.append(nxt)
            nxt = frobenius_point(t, F, nxt)
        seen.update(orbit)
        kind, data = pt
        x = data[0]
        if x is None:
            locus = None
        else:
            xorb = []
            for o in orbit:
                xv = o[1][0]
                if xv not in xorb:
                    xorb.append(xv)
            locus = _minimal_polynomial(t.constant_field, F, xorb)
        branches = data[1:] if kind == "good" else data[1]
        out.append(Place(locus, tuple(branches), len(orbit), pt))
    return out


# --- ramification ------------------------------------------------------------------


def splitting_degree(t: ASTower, limit: int = MAX_SPLITTING_DEGREE) -> int:
    """Smallest K such that over GF(q0^K) every bad base point is rational
    and no bad-fiber node is inert."""
    sqf = t.bad_denominator // t.bad_denominator.gcd(t.bad_denominator.derivative())
    need = sqf.degree if sqf.degree > 0 else 0
    for K in range(1, limit + 1):
        F = counting_field(t, K)
        if len(bad_roots(t, F)) != need:
            continue
        if all(not n.inert for root in bad_fibers(t, F).values() for n in root.walk()):
            return K
    raise ValueError(f"bad fibers do not split over any GF(q0^K) with K <= {limit}")


@dataclass(frozen=True)
class StepRamification:
    step: int  # 1-based
    place: tuple  # key of the place of the level-(step-1) curve
    m: int


@dataclass
class RamificationTable:
    p: int
    height: int
    splitting_degree: int
    steps: list[list[StepRamification]]  # per step: ramified places below it
    galois: CoverData | None = None

    def ramified(self, step: int) -> list[StepRamification]:
        return self.steps[step - 1]


def ramification_data(t: ASTower) -> RamificationTable:
    K = splitting_degree(t)
    F = counting_field(t, K)
    fibers = bad_fibers(t, F)
    steps: list[list[StepRamification]] = [[] for _ in range(t.height)]
    for root in fibers.values():
        for node in root.walk():
            if node.level < t.height and node.step_m:
                steps[node.level].append(StepRamification(node.level + 1, node.key, node.step_m))
    galois = galois_cover_data(t, F, fibers) if t.is_compositum() else None
    return RamificationTable(t.p, t.height, K, steps, galois)


def galois_cover_data(t: ASTower, F: FieldDescriptor, fibers: dict) -> CoverData:
    """(Z/p)^n cover of the x-line: inertia filtration at each bad base point
    from the conductors of all characters sum c_i f_i."""
    p, n = t.p, t.height
    tb = t.over(F)
    orbits = []
    for a, root in fibers.items():
        base = root.coords
        prec = max(c.prec for c in base)
        while True:
            try:
                fs = [tb.rhs_series(j, base, prec) for j in range(1, n + 1)]
                ms = []
                for cs in product(range(p), repeat=n):
                    f = LaurentSeries.zero(F, min(s.prec for s in fs))
                    for c, s in zip(cs, fs):
                        if c:
                            f = f + s.scale(F.from_int(c))
                    ms.append(as_reduce(f).m)
                break
            except ArithmeticError:
                prec *= 2
                if prec > MAX_TERMS:
                    raise
                base = base_node(F, a, prec).coords
        jumps = lower_filtration(p**n, ms)
        if jumps:
            orbits.append(ShortOrbit(p**n // jumps[0], jumps))
    return CoverData(p**n, 0, 0, tuple(orbits))


@dataclass(frozen=True)
class GenusPrank:
    g: int
    gamma: int
    stepwise: tuple[tuple[int, int], ...]  # (g_j, gamma_j) for j = 0..n
    galois: tuple[int, int] | None = None

    @property
    def consistent(self) -> bool:
        return self.galois is None or self.galois == (self.g, self.gamma)


def tower_genus_prank(t: ASTower) -> GenusPrank:
    """Riemann-Hurwitz and Deuring-Shafarevich chained step by step, plus the
    one-shot Galois computation for compositum towers."""
    table = ramification_data(t)
    p = t.p
    g, gamma = 0, 0
    chain = [(g, gamma)]
    for j in range(1, t.height + 1):
        ram = table.ramified(j)
        two_g = p * (2 * g - 2) + sum((p - 1) * (r.m + 1) for r in ram) + 2
        if two_g % 2:
            raise ArithmeticError(f"odd 2g at step {j}")
        g = two_g // 2
        gamma = p * (gamma - 1) + len(ram) * (p - 1) + 1
        chain.append((g, gamma))
    galois = None
    if table.galois is not None:
        galois = (hurwitz_genus(table.galois), dsh_prank(table.galois))
    return GenusPrank(g, gamma, tuple(chain), galois)
