"""Point counts -> L-polynomial -> p-rank.

Z(t) = L(t) / ((1 - t)(1 - qt)) with L(t) = 1 + a_1 t + ... + a_2g t^2g.
Writing S_i = N_i - (q^i + 1), Newton's identities read
i a_i = sum_{j=1..i} S_j a_{i-j}, and a_{2g-i} = q^(g-i) a_i fills the rest.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .astower.places import count_rational_places
from .astower.tower import ASTower


class InconsistentCounts(ValueError):
    pass


def point_counts(t: ASTower, i_max: int) -> list[int]:
    if not 1 <= i_max <= 14:
        raise ValueError("i_max must lie in [1, 14]")
    return [count_rational_places(t, i) for i in range(1, i_max + 1)]


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple[int, ...]  # a_0 .. a_2g
    q: int
    g: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError("need 2g + 1 coefficients")

    def functional_equation_holds(self) -> bool:
        a, q, g = self.coeffs, self.q, self.g
        return a[0] == 1 and all(a[2 * g - i] == q ** (g - i) * a[i] for i in range(g + 1))

    def predicted_counts(self, n: int) -> list[int]:
        """N_1..N_n from the coefficients (inverse Newton identities)."""
        a = list(self.coeffs) + [0] * max(0, n - 2 * self.g)
        S: list[int] = []
        for i in range(1, n + 1):
            # i a_i = sum_{j<i} S_j a_{i-j} + S_i a_0
            acc = i * a[i] - sum(S[j - 1] * a[i - j] for j in range(1, i))
            S.append(acc)
        return [s + self.q**i + 1 for i, s in enumerate(S, start=1)]

    def mod_p_degree(self, p: int) -> int:
        return max((i for i, a in enumerate(self.coeffs) if a % p), default=0)

    def reciprocal_root_moduli(self) -> np.ndarray:
        """Moduli of the distinct reciprocal roots.  Repeated factors are
        common (the genus-10 example has a factor of multiplicity 8) and
        wreck floating-point root finding, so roots of the exact squarefree
        part are used."""
        if self.g == 0:
            return np.array([])
        sqf = _squarefree_part([Fraction(a) for a in self.coeffs])
        # numpy wants the highest-degree coefficient first; the reciprocal
        # roots of L are the roots of its reversal
        return np.abs(np.roots(np.array([float(c) for c in sqf])))

    def riemann_hypothesis_holds(self, tol: float = 1e-6) -> bool:
        mods = self.reciprocal_root_moduli()
        return bool(np.all(np.abs(mods / math.sqrt(self.q) - 1) < tol))

    def __str__(self) -> str:
        return " + ".join(f"{a}*t^{i}" for i, a in enumerate(self.coeffs) if a)


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    quot = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        quot[d] = c
        for i, bc in enumerate(b):
            a[i + d] -= c * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return quot, a


def _squarefree_part(f: list[Fraction]) -> list[Fraction]:
    """f / gcd(f, f') over Q, coefficients low -> high."""
    df = [i * c for i, c in enumerate(f)][1:]
    a, b = f, df
    while b and any(b):
        a, b = b, _qpoly_divmod(a, b)[1]
    return _qpoly_divmod(f, a)[0]


def lpoly_from_counts(counts: Sequence[int], g: int, q: int) -> LPolynomial:
    if len(counts) < g:
        raise ValueError(f"need N_1..N_{g}, got {len(counts)} counts")
    S = [Fraction(n - (q**i + 1)) for i, n in enumerate(counts[:g], start=1)]
    a = [Fraction(1)]
    for i in range(1, g + 1):
        ai = sum(S[j - 1] * a[i - j] for j in range(1, i + 1)) / i
        if ai.denominator != 1:
            raise InconsistentCounts(f"a_{i} = {ai} is not an integer")
        a.append(ai)
    full = [int(x) for x in a] + [0] * g
    for i in range(g):
        full[2 * g - i] = q ** (g - i) * full[i]
    return LPolynomial(tuple(full), q, g)


def prank_from_lpoly(L: LPolynomial, p: int) -> int:
    """Degree of L(t) mod p, the number of unit-root reciprocal roots."""
    gamma = L.mod_p_degree(p)
    if gamma > L.g:
        raise InconsistentCounts(f"mod-{p} degree {gamma} exceeds the genus {L.g}")
    return gamma


def weil_bound_holds(n: int, i: int, q: int, g: int) -> bool:
    """|N_i - (q^i + 1)| <= 2 g q^(i/2), compared exactly via squares."""
    d = abs(n - (q**i + 1))
    return d * d <= 4 * g * g * q**i


# --- golden files: one "N_i = value" per line -------------------------------------

_LINE = re.compile(r"^\s*N_(\d+)\s*=\s*(-?\d+)\s*$")


def read_golden(path: str | Path) -> list[int]:
    found: dict[int, int] = {}
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"bad golden line {line!r}")
        found[int(m.group(1))] = int(m.group(2))
    if sorted(found) != list(range(1, len(found) + 1)):
        raise ValueError("golden file must list N_1..N_n without gaps")
    return [found[i] for i in range(1, len(found) + 1)]


def write_golden(path: str | Path, counts: Sequence[int], header: str = "") -> None:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"N_{i} = {n}" for i, n in enumerate(counts, start=1)]
    Path(path).write_text("\n".join(lines) + "\n")
