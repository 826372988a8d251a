"""Explicit automorphisms of AS towers: verification, generated groups,
orbits on rational points, and the invariant-sextic linear system."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .astower.local import Node, locate
from .astower.places import bad_roots, counting_field, fiber, rational_points
from .astower.tower import ASTower
from .gf import GF, FieldDescriptor
from .grp import Affine, Group, group_closure
from .grp.presets import identify
from .linalg import det, nullspace, rank, rref
from .mpoly import MPoly, monomials
from .series import LaurentSeries, PrecisionError


class NonInvertibleMap(ValueError):
    pass


class ActionError(RuntimeError):
    """A map failed to permute the point set."""


# --- coordinate maps -----------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateMap:
    name: str
    images: tuple[MPoly, ...]

    @property
    def field(self) -> FieldDescriptor:
        return self.images[0].field

    @property
    def nvars(self) -> int:
        return len(self.images)

    def is_affine(self) -> bool:
        return all(img.total_degree() <= 1 for img in self.images)

    def linear_part(self) -> tuple[list[list[int]], list[int]]:
        rows, consts = [], []
        for img in self.images:
            lin, c = img.linear_part()
            rows.append(lin)
            consts.append(c)
        return rows, consts

    def check_invertible(self) -> None:
        if not self.is_affine():
            raise NonInvertibleMap(f"{self.name}: only affine maps carry an invertibility witness")
        A, _ = self.linear_part()
        if det(self.field, A) == 0:
            raise NonInvertibleMap(f"{self.name}: linear part is singular")

    def inverse(self) -> "CoordinateMap":
        self.check_invertible()
        F, n = self.field, self.nvars
        A, b = self.linear_part()
        aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
        red, _ = rref(F, aug)
        Ainv = [r[n:] for r in red]
        images = []
        for i in range(n):
            img = MPoly.const(F, n, 0)
            for j in range(n):
                # x = A^-1 (y - b)
                coef = Ainv[i][j]
                if coef:
                    img = img + (MPoly.var(F, n, j) - b[j]).scale(coef)
            images.append(img)
        return CoordinateMap(self.name + "^-1", tuple(images))

    def __call__(self, point: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(img(*point) for img in self.images)

    def on_series(self, coords: list[LaurentSeries]) -> list[LaurentSeries]:
        prec = min(c.prec for c in coords)
        return [img.eval_series(coords, prec) for img in self.images]

    def to_affine(self) -> Affine:
        if self.field.k != 1:
            raise NotImplementedError("affine group elements need prime-field coefficients")
        if not self.is_affine():
            raise NotImplementedError(f"{self.name} is not affine")
        A, b = self.linear_part()
        return Affine(tuple(tuple(r) for r in A), tuple(b), self.field.p)

    def over(self, big: FieldDescriptor) -> "CoordinateMap":
        emb = self.field.embedding(big)
        return CoordinateMap(self.name, tuple(img.map_coeffs(big, emb) for img in self.images))


def tower_maps(t: ASTower) -> dict[str, CoordinateMap]:
    return {name: CoordinateMap(name, tuple(imgs)) for name, imgs in t.maps.items()}


# --- rewriting modulo the tower relations --------------------------------------------


@dataclass
class RewriteSystem:
    """Rules den_j(x) v_j^p -> den_j(x) v_j + num_j, applied from the top
    step down.  Reducing P gives D * P = NF modulo the relations, with D a
    nonzero polynomial in x; since x is transcendental, D is a unit of the
    function field, and NF is unique because the monomials v^e with all
    e_j < p form a basis over F(x)."""

    tower: ASTower

    def reduce(self, P: MPoly) -> tuple[MPoly, MPoly, int]:
        t = self.tower
        F, n, p = t.constant_field, t.nvars, t.p
        D = MPoly.const(F, n, 1)
        steps = 0
        for j in range(t.height, 0, -1):
            step = t.steps[j - 1]
            den = MPoly(F, n, {(i,) + (0,) * (n - 1): c for i, c in enumerate(step.den.coeffs)})
            v = MPoly.var(F, n, j)
            while P.degree_in(j) >= p:
                high, low = {}, {}
                for e, c in P.terms.items():
                    if e[j] >= p:
                        high[e[:j] + (e[j] - p,) + e[j + 1:]] = c
                    else:
                        low[e] = c
                A, B = MPoly(F, n, high), MPoly(F, n, low)
                P = A * (den * v + step.num) + den * B
                D = D * den
                steps += 1
        return P, D, steps


@dataclass
class AutomorphismCertificate:
    map_name: str
    verified: bool
    reason: str
    reductions: list[dict] = field(default_factory=list)


def verify_automorphism(t: ASTower, phi: CoordinateMap) -> AutomorphismCertificate:
    try:
        phi.check_invertible()
    except NonInvertibleMap as exc:
        return AutomorphismCertificate(phi.name, False, str(exc))
    rs = RewriteSystem(t)
    trace = []
    ok = True
    for j, rel in enumerate(t.relations(), start=1):
        composed = rel.substitute(list(phi.images))
        nf, D, steps = rs.reduce(composed)
        trace.append(
            {
                "relation": j,
                "multiplier_degree_in_x": D.degree_in(0),
                "rewrite_steps": steps,
                "normal_form": nf.format(t.names),
            }
        )
        ok = ok and nf.is_zero()
    reason = "every relation reduces to 0" if ok else "some relation has a nonzero normal form"
    return AutomorphismCertificate(phi.name, ok, reason, trace)


@dataclass
class GeneratedGroup:
    group: Group
    exponent: int
    identified_as: list[str]


def generated_group(maps: list[CoordinateMap], identify_presets: bool = True) -> GeneratedGroup:
    if not maps:
        raise ValueError("need at least one map")
    elems = [m.to_affine() for m in maps]
    ident = Affine.identity(elems[0].dim, elems[0].p)
    G = group_closure(elems, identity=ident)
    ids = identify(G) if identify_presets and G.order > 1 else []
    return GeneratedGroup(G, G.exponent, ids)


# --- action on rational points ---------------------------------------------------------


class PointAction:
    """Action of coordinate maps on the points of t over GF(q0^k)."""

    def __init__(self, t: ASTower, k: int):
        self.t = t
        self.F = counting_field(t, k)
        self.tb = t.over(self.F)
        self.points = rational_points(t, k)
        self.index = {pt: i for i, pt in enumerate(self.points)}
        self.bad = set(bad_roots(t, self.F))

    def _fiber(self, a) -> Node:
        return fiber(self.t, self.F, a)

    def key_of(self, node: Node) -> tuple:
        if node.base is not None and node.base not in self.bad:
            return ("good", (node.base,) + tuple(r for _, r in node.branch))
        return ("bad", node.key)

    def expansion(self, pt: tuple) -> tuple[Node, list[LaurentSeries]]:
        kind, data = pt
        if kind == "good":
            root = self._fiber(data[0])
            for leaf in root.leaves(self.t.height):
                if tuple(r for _, r in leaf.branch) == data[1:]:
                    return leaf, leaf.coords
            raise ActionError(f"no expansion for {pt}")
        a, branch = data
        for leaf in self._fiber(a).leaves(self.t.height):
            if leaf.branch == branch:
                if leaf.coords is None:
                    raise NotImplementedError("no series expansion at a wildly ramified place with m > 1")
                return leaf, leaf.coords
        raise ActionError(f"no place with key {data}")

    def image(self, phi: CoordinateMap, pt: tuple) -> tuple:
        kind, data = pt
        if kind == "good":
            img = phi(data)
            if img[0] not in self.bad:
                out = ("good", img)
                if out not in self.index:
                    raise ActionError(f"{phi.name} maps {data} to {img}, not a point of the curve")
                return out
        _, coords = self.expansion(pt)
        moved = phi.on_series(coords)
        key = locate(self.tb, self._fiber, moved)
        node = self._node_by_key(key)
        out = self.key_of(node)
        if out not in self.index:
            raise ActionError(f"{phi.name} maps {pt} outside the point set")
        return out

    def _node_by_key(self, key) -> Node:
        a, branch = key
        for leaf in self._fiber(a).leaves(self.t.height):
            if leaf.branch == branch:
                return leaf
        raise ActionError(f"no place with key {key}")

    def permutation(self, phi: CoordinateMap) -> list[int]:
        perm = [self.index[self.image(phi, pt)] for pt in self.points]
        if len(set(perm)) != len(perm):
            raise ActionError(f"{phi.name} is not injective on the points")
        return perm

    def different_index(self, sigma: CoordinateMap, pt: tuple) -> int:
        """i_P(sigma) = v_P(sigma^*(u) - u) for a uniformizer u at a fixed point P."""
        node, coords = self.expansion(pt)
        u = node.param.evaluate(coords)
        u2 = node.param.evaluate(sigma.on_series(coords))
        diff = u2 - u
        if diff.is_zero():
            raise PrecisionError(f"sigma^*(u) - u vanishes to O(t^{diff.prec})")
        return diff.valuation


@dataclass
class OrbitRecord:
    length: int
    stabilizer_order: int
    representative: tuple
    kinds: tuple[str, ...]
    jumps: tuple[int, ...] | None = None


@dataclass
class OrbitTable:
    group_order: int
    npoints: int
    orbits: list[OrbitRecord]

    def histogram(self) -> dict[tuple[int, int], int]:
        return dict(sorted(Counter((o.length, o.stabilizer_order) for o in self.orbits).items()))

    def short_orbits(self) -> list[OrbitRecord]:
        return [o for o in self.orbits if o.length < self.group_order]


def group_maps(t: ASTower, G: Group) -> list[CoordinateMap]:
    """Group elements (Affine) back to coordinate maps on the tower variables."""
    F, n = t.constant_field, t.nvars
    out = []
    for idx, g in enumerate(G.elements):
        imgs = []
        for i in range(n):
            img = MPoly.const(F, n, g.b[i])
            for j in range(n):
                if g.A[i][j]:
                    img = img + MPoly.var(F, n, j).scale(g.A[i][j])
            imgs.append(img)
        out.append(CoordinateMap(f"s{idx}", tuple(imgs)))
    return out


def orbit_analysis(t: ASTower, G: Group, k: int, jumps: bool = True) -> OrbitTable:
    """Partition the GF(q0^k)-points into G-orbits.  Stabilizers are computed
    by applying every element to a representative; for short orbits the
    lower ramification filtration is read off from i_P(sigma)."""
    act = PointAction(t, k)
    F = act.F
    elems = [m.over(F) for m in group_maps(t, G)]
    gens = [elems[i] for i in G.gens]
    perms = [act.permutation(phi) for phi in gens]
    n = len(act.points)
    seen = [False] * n
    orbits = []
    for s in range(n):
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        for x in orb:
            for perm in perms:
                y = perm[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        rep = act.points[s]
        stab = [phi for phi in elems if act.image(phi, rep) == rep]
        if len(stab) * len(orb) != G.order:
            raise ActionError(f"orbit {len(orb)} x stabilizer {len(stab)} != |G| = {G.order}")
        filt = None
        if jumps and len(stab) > 1:
            filt = _lower_jumps(act, stab, rep)
        kinds = tuple(sorted({act.points[i][0] for i in orb}))
        orbits.append(OrbitRecord(len(orb), len(stab), rep, kinds, filt))
    return OrbitTable(G.order, n, orbits)


def _lower_jumps(act: PointAction, stab: list[CoordinateMap], pt: tuple) -> tuple[int, ...]:
    """(|S_P^(0)|, |S_P^(1)|, ...) up to, not including, the trivial group."""
    idx = []
    for sigma in stab:
        if all(img == MPoly.var(img.field, img.nvars, i) for i, img in enumerate(sigma.images)):
            continue
        idx.append(act.different_index(sigma, pt))
    out = []
    i = 0
    while True:
        size = 1 + sum(1 for v in idx if v >= i + 1)
        if size == 1:
            return tuple(out)
        out.append(size)
        i += 1


# --- invariant sextics ------------------------------------------------------------------


@dataclass
class SexticClassification:
    max_degree: int
    shape: bool
    monomials: list[tuple[int, int]]
    basis: list[MPoly]
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def formatted(self) -> list[str]:
        return [b.format(["X", "Y"]) for b in self.basis]


def invariant_sextic_classifier(max_degree: int = 6, shape: bool = True, p: int = 3) -> SexticClassification:
    """Polynomials f(X, Y) over GF(p) of total degree <= max_degree with
    f(X+1, Y) = f(X, Y) = f(X, Y+1).  With ``shape``: X- and Y-degree at
    most 3, the X^0 coefficient of degree <= 2 in Y and the Y^0 coefficient
    of degree <= 2 in X (the two triple points)."""
    F = GF(p)
    mons = sorted(monomials(2, max_degree), key=lambda e: (sum(e), e))
    if shape:
        mons = [e for e in mons if e[0] <= 3 and e[1] <= 3 and e not in ((0, 3), (3, 0))]
    X, Y = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
    shifted = []
    for e in mons:
        m = MPoly(F, 2, {e: 1})
        dx = m.substitute([X + 1, Y]) - m
        dy = m.substitute([X, Y + 1]) - m
        shifted.append((dx, dy))
    keys = sorted({e for dx, dy in shifted for e in list(dx.terms) + list(dy.terms)})
    rows = []
    for which in (0, 1):
        for key in keys:
            rows.append([shifted[c][which].terms.get(key, 0) for c in range(len(mons))])
    ns = nullspace(F, rows, len(mons)) if rows else nullspace(F, [], len(mons))
    basis = [MPoly(F, 2, {mons[i]: c for i, c in enumerate(v) if c}) for v in ns]
    # normalize: leading coefficient 1, highest degree first
    basis = [b.scale(F.inv(b.terms[max(b.terms, key=lambda e: (sum(e), e))])) for b in basis]
    basis.sort(key=lambda b: -b.total_degree())
    return SexticClassification(max_degree, shape, mons, basis, rank(F, rows) if rows else 0)
