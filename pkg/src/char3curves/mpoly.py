"""Sparse multivariate polynomials over a FieldDescriptor.

Terms are stored as {exponent tuple: nonzero coefficient}.  Evaluation works
on scalars, numpy arrays (vectorized field ops) and Laurent series alike.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from .gf import FieldDescriptor


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldDescriptor, nvars: int, terms: dict[tuple[int, ...], int] | None = None):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, field, nvars: int, c: int) -> "MPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    def extend(self, nvars: int) -> "MPoly":
        pad = (0,) * (nvars - self.nvars)
        return MPoly(self.field, nvars, {e + pad: c for e, c in self.terms.items()})

    # -- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.const(self.field, self.nvars, self.field.from_int(other))
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, d in enumerate(e) if d}

    def is_constant(self) -> bool:
        return not self.variables()

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def coeff_in(self, i: int, d: int) -> "MPoly":
        """Coefficient of v_i^d, as a polynomial free of v_i."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == d:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MPoly(self.field, self.nvars, out)

    def linear_part(self) -> tuple[list[int], int]:
        """(coefficients of each variable, constant) for a polynomial of degree <= 1."""
        if self.total_degree() > 1:
            raise ValueError("not affine")
        lin = [0] * self.nvars
        for e, c in self.terms.items():
            if sum(e) == 1:
                lin[e.index(1)] = c
        return lin, self.constant_term()

    # -- arithmetic

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.field, self.nvars, self.field.from_int(other))

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, 0), c)
        return MPoly(f, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.field, self.nvars, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        other = self._lift(other)
        f = self.field
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = f.add(out.get(e, 0), f.mul(c1, c2))
        return MPoly(f, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        result = MPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "MPoly":
        return MPoly(self.field, self.nvars, {e: self.field.mul(c, a) for e, a in self.terms.items()})

    def map_coeffs(self, field: FieldDescriptor, fn: Callable[[int], int]) -> "MPoly":
        return MPoly(field, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # -- substitution and evaluation

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable i by images[i] (all images share one ring)."""
        nv = images[0].nvars
        return self._evaluate(images, MPoly.const(self.field, nv, 0), lambda c: MPoly.const(self.field, nv, c))

    def __call__(self, *values: int) -> int:
        f = self.field
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, d in zip(values, e):
                if d:
                    term = f.mul(term, f.pow(v, d))
            acc = f.add(acc, term)
        return acc

    def eval_series(self, values: Sequence, prec: int):
        from .series import LaurentSeries

        f = self.field
        return self._evaluate(values, LaurentSeries.zero(f, prec), lambda c: LaurentSeries.const(f, c, prec))

    def veval(self, values: Sequence[np.ndarray]) -> np.ndarray:
        f = self.field
        shape = np.broadcast(*values).shape if values else ()
        acc = np.zeros(shape, dtype=np.int64)
        cache: dict[tuple[int, int], np.ndarray] = {}
        for e, c in self.terms.items():
            term = np.full(shape, c, dtype=np.int64)
            for i, d in enumerate(e):
                if d:
                    if (i, d) not in cache:
                        cache[(i, d)] = f.vpow(values[i], d)
                    term = f.vmul(term, cache[(i, d)])
            acc = f.vadd(acc, term)
        return acc

    def _evaluate(self, values, zero, const):
        powers: dict[tuple[int, int], object] = {}

        def power(i, d):
            if (i, d) not in powers:
                powers[(i, d)] = values[i] if d == 1 else power(i, d - 1) * values[i]
            return powers[(i, d)]

        acc = zero
        for e, c in sorted(self.terms.items()):
            term = const(c)
            for i, d in enumerate(e):
                if d:
                    term = term * power(i, d)
            acc = acc + term
        return acc

    # -- display

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"v{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0]))):
            mono = "*".join(n if d == 1 else f"{n}^{d}" for n, d in zip(names, e) if d)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.format()})"


def univariate_part(poly: MPoly, i: int) -> list[int]:
    """Coefficient list (low -> high) of a polynomial that only involves v_i."""
    if poly.variables() - {i}:
        raise ValueError("polynomial involves other variables")
    out = [0] * (poly.degree_in(i) + 1)
    for e, c in poly.terms.items():
        out[e[i]] = c
    return out


def monomials(nvars: int, max_degree: int) -> Iterable[tuple[int, ...]]:
    if nvars == 0:
        yield ()
        return
    for d in range(max_degree + 1):
        for rest in monomials(nvars - 1, max_degree - d):
            yield (d,) + rest
