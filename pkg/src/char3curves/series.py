"""Truncated Laurent series over a finite field with tracked absolute precision.

A series is known modulo t^prec.  Every operation propagates precision, and
reading a coefficient at or beyond ``prec`` raises :class:`PrecisionError`
instead of returning a silently wrong zero.
"""

from __future__ import annotations

from typing import Iterable

from .gf import FieldDescriptor


class PrecisionError(ArithmeticError):
    """A computation needed more series terms than were known."""


class LaurentSeries:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: FieldDescriptor, val: int, coeffs: Iterable[int], prec: int):
        self.field = field
        c = list(coeffs)[: max(0, prec - val)]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        val += i
        while c and c[-1] == 0:
            c.pop()
        if not c:
            val = prec
        self.val = val
        self.coeffs = c
        self.prec = prec

    # -- constructors

    @classmethod
    def zero(cls, field, prec: int) -> "LaurentSeries":
        return cls(field, prec, [], prec)

    @classmethod
    def const(cls, field, c: int, prec: int) -> "LaurentSeries":
        return cls(field, 0, [c], prec)

    @classmethod
    def monomial(cls, field, c: int, n: int, prec: int) -> "LaurentSeries":
        return cls(field, n, [c], prec)

    @classmethod
    def from_terms(cls, field, terms: dict[int, int], prec: int) -> "LaurentSeries":
        if not terms:
            return cls.zero(field, prec)
        lo = min(terms)
        hi = max(terms)
        return cls(field, lo, [terms.get(i, 0) for i in range(lo, hi + 1)], prec)

    # -- inspection

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes (zero to precision)."""
        return not self.coeffs

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise PrecisionError(f"valuation unknown: series is O(t^{self.prec})")
        return self.val

    def leading(self) -> int:
        if not self.coeffs:
            raise PrecisionError(f"leading term unknown: series is O(t^{self.prec})")
        return self.coeffs[0]

    def __getitem__(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionError(f"coefficient of t^{n} requested, series known to O(t^{self.prec})")
        i = n - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def relative_precision(self) -> int:
        return self.prec - self.valuation

    def terms(self) -> dict[int, int]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def __repr__(self) -> str:
        parts = [f"{c}*t^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts + [f"O(t^{self.prec})"])

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.val, self.coeffs, min(prec, self.prec))

    # -- arithmetic

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.const(self.field, self.field.from_int(other), self.prec)

    def __add__(self, other) -> "LaurentSeries":
        other = self._lift(other)
        f = self.field
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        n = max(0, prec - lo)
        out = [0] * n
        for s in (self, other):
            off = s.val - lo
            for i, c in enumerate(s.coeffs):
                j = off + i
                if j >= n:
                    break
                out[j] = f.add(out[j], c)
        return LaurentSeries(f, lo, out, prec)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        f = self.field
        return LaurentSeries(f, self.val, [f.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other) -> "LaurentSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentSeries":
        return self._lift(other) - self

    def scale(self, c: int) -> "LaurentSeries":
        f = self.field
        return LaurentSeries(f, self.val, [f.mul(c, a) for a in self.coeffs], self.prec)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by t^n."""
        return LaurentSeries(self.field, self.val + n, self.coeffs, self.prec + n)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(self.field.from_int(other))
        f = self.field
        # a zero-to-precision factor still bounds the product's precision
        v1 = self.val if self.coeffs else self.prec
        v2 = other.val if other.coeffs else other.prec
        prec = min(v1 + other.prec, v2 + self.prec)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(f, prec)
        val = v1 + v2
        n = max(0, prec - val)
        out = [0] * min(n, len(self.coeffs) + len(other.coeffs) - 1)
        a, b = self.coeffs, other.coeffs
        for i, x in enumerate(a):
            if i >= len(out):
                break
            if x:
                lim = min(len(b), len(out) - i)
                for j in range(lim):
                    y = b[j]
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return LaurentSeries(f, val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        f = self.field
        v = self.valuation
        rel = self.prec - v
        a = self.coeffs
        inv0 = f.inv(a[0])
        out = [inv0]
        for n in range(1, rel):
            acc = 0
            for i in range(1, min(n, len(a) - 1) + 1):
                acc = f.add(acc, f.mul(a[i], out[n - i]))
            out.append(f.neg(f.mul(acc, inv0)))
        return LaurentSeries(f, -v, out, -v + rel)

    def __truediv__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(self.field.inv(self.field.from_int(other)))
        return self * other.inverse()

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return LaurentSeries.const(self.field, 1, self.relative_precision())
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self) -> "LaurentSeries":
        """Coefficientwise p-th power composed with t -> t^p, i.e. self^p."""
        f = self.field
        p = f.p
        out = []
        for i, c in enumerate(self.coeffs):
            out.append(f.frob(c))
            if i < len(self.coeffs) - 1:
                out.extend([0] * (p - 1))
        return LaurentSeries(f, self.val * p, out, self.prec * p)

    def map_coeffs(self, field: FieldDescriptor, fn) -> "LaurentSeries":
        return LaurentSeries(field, self.val, [fn(c) for c in self.coeffs], self.prec)

    def compose(self, g: "LaurentSeries") -> "LaurentSeries":
        """self(g) for g of positive valuation."""
        e = g.valuation
        if e < 1:
            raise ValueError("can only substitute a series of positive valuation")
        f = self.field
        rel_g = g.prec - e
        v = self.val if self.coeffs else self.prec
        prec = min(e * self.prec, e * v + rel_g)
        if not self.coeffs:
            return LaurentSeries.zero(f, prec)
        # Horner in g on the power-series part, then multiply by g^v
        acc = LaurentSeries.zero(f, prec)
        for c in reversed(self.coeffs):
            acc = (acc * g).truncate(prec) + LaurentSeries.const(f, c, prec)
        gv = g ** v if v != 0 else LaurentSeries.const(f, 1, prec)
        return (acc * gv).truncate(prec)


def ones_geometric(field: FieldDescriptor, step: int, prec: int) -> LaurentSeries:
    """1 / (1 - t^step) to precision prec."""
    terms = {i: 1 for i in range(0, prec, step)}
    return LaurentSeries.from_terms(field, terms, prec)
