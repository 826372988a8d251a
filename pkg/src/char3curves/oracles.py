"""Brute-force point counts used to freeze and re-check golden values.

These deliberately avoid the trace filter and the pseudo-inverse solver of
the fast counter: Artin-Schreier fibers are read off an explicit preimage
table of z -> z^p - z, and each good x-value is walked one at a time.  The
hyperelliptic counter works on a different model altogether.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .astower.places import bad_point_count, counting_field
from .astower.tower import ASTower
from .gf import GF, FieldDescriptor, Polynomial


def as_preimages(F: FieldDescriptor) -> dict[int, list[int]]:
    table: dict[int, list[int]] = defaultdict(list)
    for z in F.elements():
        table[F.sub(F.pow(z, F.p), z)].append(z)
    return table


def affine_count(t: ASTower, k: int) -> int:
    """Points with x off the bad locus, found by table lookup."""
    F = counting_field(t, k)
    tb = t.over(F)
    pre = as_preimages(F)
    den_all = tb.bad_denominator
    total = 0
    for x in F.elements():
        if den_all.veval(np.array([x]), F)[0] == 0:
            continue
        partial = [[x]]
        for step in tb.steps:
            nxt = []
            for pt in partial:
                vals = [np.array([c]) for c in pt] + [np.array([0])] * (tb.nvars - len(pt))
                num = int(step.num.veval(vals)[0])
                den = int(step.den.veval(np.array([x]), F)[0])
                nxt.extend(pt + [z] for z in pre.get(F.div(num, den), ()))
            partial = nxt
        total += len(partial)
    return total


def tower_counts(t: ASTower, k_max: int) -> list[int]:
    """N_1..N_kmax as brute-force affine count plus the bad-fiber places."""
    return [affine_count(t, k) + bad_point_count(t, k) for k in range(1, k_max + 1)]


def hyperelliptic_count(f: Polynomial, k: int) -> int:
    """Rational points of the smooth model of y^2 = f(x), deg f even, over
    the degree-k extension of f's field (odd characteristic)."""
    F0 = f.field
    F = GF(F0.p, F0.k * k)
    emb = F0.embedding(F)
    fb = Polynomial(F, [emb(c) for c in f.coeffs])
    squares: dict[int, int] = defaultdict(int)
    for y in F.elements():
        squares[F.mul(y, y)] += 1
    affine = sum(squares.get(int(v), 0) for v in fb.veval(np.arange(F.q, dtype=np.int64), F))
    if fb.degree % 2:
        return affine + 1
    lead = fb.coeffs[-1]
    return affine + (2 if squares.get(lead, 0) else 0)
