"""Concrete group elements: permutations and affine maps over GF(p).

Products are function composition, (a * b)(x) = a(b(x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

MAX_POINTS = 729


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) > MAX_POINTS:
            raise ValueError(f"permutations on more than {MAX_POINTS} points are not supported")
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a bijection")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        a = self.images
        return Perm(tuple(a[i] for i in other.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(tuple(out))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(len(self.images)):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            x = self.images[s]
            while x != s:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        return "".join(str(c).replace(",)", ")").replace(", ", " ") for c in self.cycles()) or "()"


@dataclass(frozen=True)
class Affine:
    """x -> A x + b on GF(p)^d, p prime."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    p: int = 3

    def __post_init__(self):
        d = len(self.b)
        if len(self.A) != d or any(len(r) != d for r in self.A):
            raise ValueError("matrix and vector sizes differ")
        object.__setattr__(self, "A", tuple(tuple(x % self.p for x in r) for r in self.A))
        object.__setattr__(self, "b", tuple(x % self.p for x in self.b))
        if _det_mod(self.A, self.p) == 0:
            raise ValueError("affine map with singular linear part")

    @classmethod
    def identity(cls, d: int, p: int = 3) -> "Affine":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d, p)

    @property
    def dim(self) -> int:
        return len(self.b)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        return tuple((sum(a * v for a, v in zip(row, x)) + c) % p for row, c in zip(self.A, self.b))

    def __mul__(self, other: "Affine") -> "Affine":
        p, d = self.p, self.dim
        A = tuple(tuple(sum(self.A[i][k] * other.A[k][j] for k in range(d)) % p for j in range(d)) for i in range(d))
        b = self(other.b)
        return Affine(A, b, p)

    def inverse(self) -> "Affine":
        p, d = self.p, self.dim
        Ainv = _inv_mod(self.A, p)
        b = tuple(-sum(Ainv[i][k] * self.b[k] for k in range(d)) % p for i in range(d))
        return Affine(Ainv, b, p)

    def is_identity(self) -> bool:
        return self == Affine.identity(self.dim, self.p)


def _det_mod(A, p: int) -> int:
    m = [list(r) for r in A]
    n, out = len(m), 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return out % p


def _inv_mod(A, p: int) -> tuple[tuple[int, ...], ...]:
    n = len(A)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] % p)
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], p - 2, p)
        m[c] = [x * inv % p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return tuple(tuple(r[n:]) for r in m)
