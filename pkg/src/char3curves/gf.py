"""Exact arithmetic in GF(p^k) and univariate polynomials over it.

Field elements are plain ints: the element sum(c_i * x^i) with c_i in [0, p)
is stored as sum(c_i * p^i).  A :class:`FieldDescriptor` interprets them; it
also offers numpy-vectorized versions of the hot operations (``v*`` methods)
used by the point counters.  Zero and one are always 0 and 1, and the prime
subfield is exactly ``range(p)``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class FieldError(ValueError):
    pass


# --- polynomial helpers over the prime field, coefficient lists low -> high --


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    sub = lambda f: _trim([(c - d) % p for c, d in itertools.zip_longest(f, x, fillvalue=0)])  # noqa: E731
    if sub(_ppowmod(x, p**k, modulus, p)):
        return False
    for r in _prime_factors(k):
        h = sub(_ppowmod(x, p ** (k // r), modulus, p))
        if len(_pgcd(list(modulus), h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k.

    Candidates are ordered by the integer sum(c_i p^i) of the non-leading
    coefficients, i.e. lexicographically on (c_{k-1}, ..., c_0).
    """
    for code in range(p**k):
        coeffs = [(code // p**i) % p for i in range(k)]
        if k > 1 and coeffs[0] == 0:
            continue
        cand = tuple(coeffs) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


# --- the field -----------------------------------------------------------------


class FieldDescriptor:
    """GF(p^k) with a fixed modulus.  Immutable after construction."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if p < 2 or _prime_factors(p) != [p]:
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise FieldError("GF(p) takes no modulus")
            self.modulus: tuple[int, ...] | None = None
        else:
            modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, k)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree k")
            if k <= 32 and not is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._pows = np.array([p**i for i in range(k)], dtype=np.int64)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p, self.k))

    # -- conversions

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def pack(self, digits: Iterable[int]) -> int:
        out, scale = 0, 1
        for d in digits:
            out += (d % self.p) * scale
            scale *= self.p
        return out

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def to_prime(self, a: int) -> int:
        if not 0 <= a < self.p:
            raise FieldError(f"{a} is not in the prime field")
        return a

    def elements(self) -> range:
        return range(self.q)

    # -- tables

    @functools.cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray, int]:
        q, k, p = self.q, self.k, self.p
        if k == 1:
            gen = next(g for g in range(1, p) if _mult_order_int(g, p) == p - 1) if p > 2 else 1
            exp = np.array([pow(gen, i, p) for i in range(p - 1)], dtype=np.int64)
        else:
            gen = self._find_primitive()
            mat = self._mult_matrix(gen)
            # exp table by block doubling: rows are digit vectors of gen^i
            rows = np.zeros((1, k), dtype=np.int64)
            rows[0, 0] = 1
            step = mat.copy()
            while rows.shape[0] < q - 1:
                nxt = rows @ step.T % p
                rows = np.vstack([rows, nxt])
                step = step @ step % p
            rows = rows[: q - 1]
            exp = rows @ self._pows
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if len(np.unique(exp)) != q - 1:
            raise FieldError("generator is not primitive")
        return exp, log, gen

    def _mult_matrix(self, a: int) -> np.ndarray:
        # column j = digits of a * x^j
        cols = []
        ad = _trim(self.digits(a))
        for j in range(self.k):
            prod = _pmod(_pmul(ad, [0] * j + [1], self.p), self.modulus, self.p)
            cols.append(prod + [0] * (self.k - len(prod)))
        return np.array(cols, dtype=np.int64).T

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _pmod(_pmul(_trim(self.digits(a)), _trim(self.digits(b)), self.p), self.modulus, self.p)
        return self.pack(prod)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_primitive(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in factors):
                return g
        raise FieldError("no primitive element")

    @functools.cached_property
    def generator(self) -> int:
        """Smallest primitive element (as packed int)."""
        return self._tables[2]

    @functools.cached_property
    def _exp_list(self) -> list[int]:
        return self._tables[0].tolist()

    @functools.cached_property
    def _log_list(self) -> list[int]:
        return self._tables[1].tolist()

    # -- scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        p, out, scale = self.p, 0, 1
        while a:
            out += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        exp, log = self._exp_list, self._log_list
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._exp_list, self._log_list
        return exp[-log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e % (self.p - 1), self.p)
        exp, log = self._exp_list, self._log_list
        return exp[log[a] * e % (self.q - 1)]

    def scale(self, n: int, a: int) -> int:
        return self.mul(self.from_int(n), a)

    def frob(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** (times % self.k))

    def pth_root(self, a: int) -> int:
        return self.frob(a, self.k - 1)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        return (self.q - 1) // np.gcd(self.log(a), self.q - 1) if self.k > 1 else _mult_order_int(a, self.p)

    def log(self, a: int) -> int:
        return self._log_list[a] if self.k > 1 else self._log_list[a]

    @functools.cached_property
    def _trace_vector(self) -> np.ndarray:
        out = []
        for i in range(self.k):
            a = self.pack([0] * i + [1])
            acc = 0
            for _ in range(self.k):
                acc = self.add(acc, a)
                a = self.frob(a)
            out.append(self.to_prime(acc))
        return np.array(out, dtype=np.int64)

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(k-1)), a prime-field int."""
        if self.k == 1:
            return a
        return int(np.dot(self.digits(a), self._trace_vector) % self.p)

    def norm(self, a: int) -> int:
        return self.pow(a, (self.q - 1) // (self.p - 1))

    @functools.cached_property
    def _as_data(self) -> tuple[np.ndarray, int]:
        """Matrix sending a trace-zero a to one solution of z^p - z = a."""
        p, k = self.p, self.k
        # columns: digits of (x^j)^p - x^j
        cols = []
        for j in range(k):
            e = self.pack([0] * j + [1])
            cols.append(self.digits(self.sub(self.frob(e), e)))
        lmat = np.array(cols, dtype=np.int64).T
        pinv = _pseudo_inverse_mod_p(lmat, p)
        return pinv, 0

    def as_solve(self, a: int) -> list[int]:
        """All z in the field with z^p - z = a (empty unless trace(a) = 0)."""
        if self.trace(a) != 0:
            return []
        if self.k == 1:
            return list(range(self.p))  # z^p - z vanishes on GF(p)
        pinv, _ = self._as_data
        z0 = self.pack((pinv @ np.array(self.digits(a), dtype=np.int64) % self.p).tolist())
        return sorted(self.add(z0, c) for c in range(self.p))

    def embedding(self, big: "FieldDescriptor"):
        """Map self -> big sending the generator x to the smallest root of
        self.modulus in big.  Returns a function on packed ints."""
        if big.p != self.p or big.k % self.k:
            raise FieldError(f"{self!r} does not embed in {big!r}")
        if self.k == 1:
            return lambda a: a
        root = None
        for r in big.elements():
            acc = 0
            for c in reversed(self.modulus):
                acc = big.add(big.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        powers = [1]
        for _ in range(self.k - 1):
            powers.append(big.mul(powers[-1], root))

        def embed(a: int) -> int:
            acc = 0
            for d, rp in zip(self.digits(a), powers):
                if d:
                    acc = big.add(acc, big.scale(d, rp))
            return acc

        return embed

    # -- vectorized arithmetic on int64 arrays

    def vdigits(self, a: np.ndarray) -> np.ndarray:
        return (np.asarray(a)[..., None] // self._pows) % self.p

    def vpack(self, d: np.ndarray) -> np.ndarray:
        return (d % self.p) @ self._pows

    def vadd(self, a, b) -> np.ndarray:
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        return self.vpack(self.vdigits(a) + self.vdigits(b))

    def vneg(self, a) -> np.ndarray:
        if self.k == 1:
            return -np.asarray(a) % self.p
        return self.vpack(-self.vdigits(a))

    def vsub(self, a, b) -> np.ndarray:
        if self.k == 1:
            return (np.asarray(a) - b) % self.p
        return self.vpack(self.vdigits(a) - self.vdigits(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.k == 1:
            return a * b % self.p
        exp, log, _ = self._tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        exp, log, _ = self._tables
        return exp[-log[a] % (self.q - 1)]

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.k == 1:
            return np.array([pow(int(x), e, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        exp, log, _ = self._tables
        out = exp[log[a] * e % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def vtrace(self, a) -> np.ndarray:
        if self.k == 1:
            return np.asarray(a) % self.p
        return self.vdigits(a) @ self._trace_vector % self.p

    def vas_particular(self, a) -> np.ndarray:
        """One solution of z^p - z = a per entry; only meaningful where the
        trace vanishes."""
        if self.k == 1:
            return np.zeros_like(np.asarray(a))
        pinv, _ = self._as_data
        return self.vpack(self.vdigits(a) @ pinv.T)


def _mult_order_int(a: int, p: int) -> int:
    n, x = 1, a % p
    while x != 1:
        x = x * a % p
        n += 1
    return n


def _pseudo_inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """A matrix P with M P b = b for every b in the column space of M."""
    n_rows, n_cols = mat.shape
    aug = np.concatenate([mat % p, np.eye(n_rows, dtype=np.int64)], axis=1)
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if aug[i, c] % p), None)
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        aug[r] = aug[r] * pow(int(aug[r, c]), p - 2, p) % p
        for i in range(n_rows):
            if i != r and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[r]) % p
        pivots.append(c)
        r += 1
    # row i < r of aug[:, n_cols:] expresses pivot variable i as combination of b
    out = np.zeros((n_cols, n_rows), dtype=np.int64)
    for i, c in enumerate(pivots):
        out[c] = aug[i, n_cols:]
    return out % p


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FieldDescriptor:
    """Cached canonical field descriptor for (p, k)."""
    return FieldDescriptor(p, k)


# --- user-facing element wrapper ----------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    owner: FieldDescriptor
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.owner is not self.owner:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.owner.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.owner, self.owner.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.owner, self.owner.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.owner, self.owner.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.owner, self.owner.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.owner, self.owner.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.owner, self.owner.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.owner.from_int(other)
        return isinstance(other, FieldElement) and other.owner is self.owner and other.value == self.value

    def __hash__(self):
        return hash((self.owner.p, self.owner.k, self.value))

    @property
    def coefficients(self) -> list[int]:
        return self.owner.digits(self.value)

    def trace(self) -> int:
        return self.owner.trace(self.value)

    def frobenius(self):
        return FieldElement(self.owner, self.owner.frob(self.value))

    def __repr__(self):
        return f"{self.owner!r}({self.value})"


def trace(a: FieldElement) -> FieldElement:
    """Absolute trace into the prime field, returned as an element of a's field."""
    return FieldElement(a.owner, a.owner.trace(a.value))


def as_solve(a: FieldElement) -> set[FieldElement]:
    return {FieldElement(a.owner, z) for z in a.owner.as_solve(a.value)}


# --- univariate polynomials ---------------------------------------------------


class Polynomial:
    """Dense univariate polynomial; coefficients low -> high, no trailing zeros.

    The zero polynomial has degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: Iterable[int] = ()):
        self.field = field
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_ints(cls, field: FieldDescriptor, ints: Iterable[int]) -> "Polynomial":
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def x(cls, field: FieldDescriptor) -> "Polynomial":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                cs = str(c) if (c != 1 or i == 0) else ""
                terms.append(cs + ("*" if cs and mono else "") + mono)
        return " + ".join(terms)

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, [self.field.from_int(other)])

    def __add__(self, other):
        other = self._lift(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(f, [f.add(self[i], other[i]) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        f = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = f.inv(other.coeffs[-1])
        quot = [0] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = f.mul(rem[i], inv_lead)
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = f.sub(rem[i - dq + j], f.mul(c, b))
        return Polynomial(f, quot), Polynomial(f, rem[:dq])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, [f.scale(i, c) for i, c in enumerate(self.coeffs)][1:])

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def __call__(self, a: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def veval(self, a: np.ndarray, field: FieldDescriptor | None = None) -> np.ndarray:
        f = field or self.field
        acc = np.zeros_like(np.asarray(a, dtype=np.int64))
        for c in reversed(self.coeffs):
            acc = f.vadd(f.vmul(acc, a), c)
        return acc

    def map_coeffs(self, field: FieldDescriptor, fn) -> "Polynomial":
        return Polynomial(field, [fn(c) for c in self.coeffs])


def poly_roots(f: Polynomial, within: FieldDescriptor | None = None) -> set[int]:
    """Distinct roots of f in ``within`` (default: f's own field).

    Exhaustive vectorized evaluation over the whole field; fine for q <= 3^14.
    """
    if f.is_zero():
        raise FieldError("the zero polynomial has every element as a root")
    big = within or f.field
    g = f if big is f.field else f.map_coeffs(big, f.field.embedding(big))
    if g.degree <= 0:
        return set()
    xs = np.arange(big.q, dtype=np.int64)
    vals = g.veval(xs, big)
    return set(np.nonzero(vals == 0)[0].tolist())
