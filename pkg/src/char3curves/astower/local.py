"""Local analysis of an AS tower at the places over one base point.

For a base point (x = a or x = infinity) over a field F, :func:`build_fiber`
walks the tower step by step.  Each node carries Laurent expansions of the
coordinates x, v_1, ... in a canonical uniformizer, which is itself a function
on the curve (see :class:`Param`).  That is what lets us recognise the image
of a place under an automorphism: canonical data are evaluated on the
transported expansions, whatever uniformizer those happen to use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..gf import FieldDescriptor
from ..series import LaurentSeries, PrecisionError
from .tower import ASTower

INITIAL_TERMS = 12
MAX_TERMS = 512


class UnsupportedLocalStructure(NotImplementedError):
    pass


@dataclass(frozen=True)
class ASReduction:
    m: int  # reduced pole order, 0 when unramified
    shift: dict[int, int]  # w = sum b_n t^n (n < 0) with f - (w^p - w) reduced
    reduced: LaurentSeries

    @property
    def ramified(self) -> bool:
        return self.m > 0


def as_reduce(f: LaurentSeries) -> ASReduction:
    """Remove pole terms t^(-pn) by subtracting w^p - w."""
    F = f.field
    p = F.p
    shift: dict[int, int] = {}
    while True:
        if f.is_zero():
            if f.prec <= 0:
                raise PrecisionError("cannot decide regularity of a series known only to O(t^%d)" % f.prec)
            return ASReduction(0, shift, f)
        v = f.valuation
        if v >= 0:
            return ASReduction(0, shift, f)
        if v % p:
            return ASReduction(-v, shift, f)
        c = f.leading()
        b = F.pth_root(c)
        n = v // p
        shift[n] = F.add(shift.get(n, 0), b)
        # f - (b^p t^v - b t^n)
        f = f - LaurentSeries.monomial(F, c, v, f.prec) + LaurentSeries.monomial(F, b, n, f.prec)


def eval_shift(shift: dict[int, int], u: LaurentSeries) -> LaurentSeries:
    F = u.field
    out = None
    for n, b in shift.items():
        term = (u**n).scale(b)
        out = term if out is None else out + term
    return out if out is not None else LaurentSeries.zero(F, 10**6)


def solve_as_regular(h: LaurentSeries) -> LaurentSeries:
    """The unique delta with positive valuation and delta^p - delta = h
    (h of positive valuation): delta = -(h + h^p + h^(p^2) + ...)."""
    acc = h
    term = h
    while not term.is_zero() and term.valuation < h.prec:
        term = term.frobenius()
        acc = acc + term.truncate(h.prec)
    return -acc


# --- canonical uniformizers -----------------------------------------------------


@dataclass(frozen=True)
class Param:
    """A local parameter given as a function on the curve.

    ``kind == "base"``: x - a (``a`` set) or 1/x (``a is None``).
    ``kind == "ram"``: 1 / (v_level - w(lower)) with w = sum shift[n] lower^n.
    """

    kind: str
    a: int | None = None
    level: int = 0
    lower: "Param | None" = None
    shift: tuple[tuple[int, int], ...] = ()

    def evaluate(self, coords: list[LaurentSeries]) -> LaurentSeries:
        if self.kind == "base":
            x = coords[0]
            return x.inverse() if self.a is None else x - LaurentSeries.const(x.field, self.a, x.prec)
        u = self.lower.evaluate(coords)
        w = eval_shift(dict(self.shift), u)
        return (coords[self.level] - w).inverse()


@dataclass
class Node:
    """A place of the sub-tower of height ``level`` over one base point."""

    level: int
    base: int | None
    branch: tuple  # per step: ("split", residue) or ("ram", m)
    param: Param
    coords: list[LaurentSeries] | None
    children: list["Node"] = field(default_factory=list)
    # data for the step above this node, once expanded
    step_shift: dict[int, int] | None = None
    step_m: int | None = None
    step_residue: int | None = None
    inert: bool = False

    @property
    def key(self) -> tuple:
        return (self.base, self.branch)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self, height: int):
        return [n for n in self.walk() if n.level == height]


def base_node(F: FieldDescriptor, a: int | None, terms: int) -> Node:
    if a is None:
        x = LaurentSeries.monomial(F, 1, -1, terms)
    else:
        x = LaurentSeries(F, 0, [a, 1], terms)
    return Node(0, a, (), Param("base", a), [x])


def expand_step(tower: ASTower, node: Node, terms: int) -> None:
    """Attach the children of ``node`` for step node.level + 1."""
    F = node.coords[0].field
    j = node.level + 1
    f = tower.rhs_series(j, node.coords, terms)
    red = as_reduce(f)
    node.step_shift = red.shift
    node.step_m = red.m
    t_prec = max(c.prec for c in node.coords)
    t = LaurentSeries.monomial(F, 1, 1, t_prec)
    w = eval_shift(red.shift, t) if red.shift else None
    if red.m == 0:
        r = red.reduced[0]
        node.step_residue = r
        h = red.reduced - LaurentSeries.const(F, r, red.reduced.prec)
        delta = solve_as_regular(h) if not h.is_zero() else h
        roots = F.as_solve(r)
        node.inert = not roots
        for z0 in roots:
            # z0 is a packed field element; a bare int would be read mod p
            v = delta + LaurentSeries.const(F, z0, delta.prec)
            if w is not None:
                v = v + w
            child = Node(j, node.base, node.branch + (("split", z0),), node.param, node.coords + [v])
            node.children.append(child)
        return
    child_param = Param("ram", level=j, lower=node.param, shift=tuple(sorted(red.shift.items())))
    if red.m != 1:
        node.children.append(Node(j, node.base, node.branch + (("ram", red.m),), child_param, None))
        return
    # m = 1: new uniformizer s = 1/v' with v' = v - w, v'^p - v' = f' = c t^-1 U(t)
    fr = red.reduced
    c = fr.leading()
    U = fr.shift(1).scale(F.inv(c))
    p = F.p
    s_prec = p * U.prec
    y = (LaurentSeries.const(F, 1, s_prec) - LaurentSeries.monomial(F, 1, p - 1, s_prec)).inverse()
    y = y.shift(p).scale(c).truncate(s_prec)
    ts = y
    for _ in range(s_prec // p + 2):
        nxt = y * U.compose(ts)
        if nxt.prec == ts.prec and nxt.terms() == ts.terms():
            break
        ts = nxt
    coords = [cs.compose(ts) for cs in node.coords]
    s = LaurentSeries.monomial(F, 1, 1, max(cs.prec for cs in coords))
    v = s.inverse()
    if red.shift:
        v = v + eval_shift(red.shift, ts)
    node.children.append(Node(j, node.base, node.branch + (("ram", 1),), child_param, coords + [v]))


def build_fiber(tower: ASTower, F: FieldDescriptor, a: int | None) -> Node:
    """Fiber tree over base point a (None = infinity), retrying with more
    series terms on precision failure."""
    terms = INITIAL_TERMS
    while True:
        try:
            root = base_node(F, a, terms)
            frontier = [root]
            for _ in range(tower.height):
                nxt = []
                for node in frontier:
                    if node.coords is None:
                        raise UnsupportedLocalStructure(
                            f"ramified step with reduced pole order {node.branch[-1][1]} > 1 below another step"
                        )
                    expand_step(tower, node, terms)
                    nxt.extend(node.children)
                frontier = nxt
            return root
        except PrecisionError:
            terms *= 2
            if terms > MAX_TERMS:
                raise


def locate(tower: ASTower, fibers, coords: list[LaurentSeries]) -> tuple:
    """Key of the place through which the parametrized branch ``coords``
    passes.  ``fibers(a)`` returns the fiber tree over base point a."""
    x = coords[0]
    a = None if x.valuation < 0 else x[0]
    node = fibers(a)
    for j in range(1, tower.height + 1):
        if node.step_m:
            node = node.children[0]
            continue
        u = node.param.evaluate(coords)
        v = coords[j]
        if node.step_shift:
            v = v - eval_shift(node.step_shift, u)
        r = v[0]
        match = [c for c in node.children if c.branch[-1] == ("split", r)]
        if not match:
            raise ValueError(f"transported branch has residue {r} with no matching place")
        node = match[0]
    return node.key
