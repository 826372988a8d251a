"""Hasse-Witt (Cartier-Manin) matrices of hyperelliptic curves y^2 = f(x), p odd."""

from __future__ import annotations

from dataclasses import dataclass

from .astower.parse import evaluate, identifiers, parse_expression
from .gf import GF, FieldDescriptor, Polynomial
from .linalg import Matrix, matmul, rank
from .mpoly import MPoly, univariate_part


class SingularModel(ValueError):
    pass


@dataclass(frozen=True)
class HasseWittMatrix:
    field: FieldDescriptor
    f: Polynomial
    p: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def g(self) -> int:
        return len(self.entries)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def frobenius_twist(self, times: int = 1) -> Matrix:
        """Entries raised to the p^times power."""
        return [[self.field.frob(a, times) for a in r] for r in self.entries]


def hyperelliptic_genus(f: Polynomial) -> int:
    return max(0, (f.degree - 1) // 2)


def cartier_manin_matrix(f: Polynomial, p: int | None = None) -> HasseWittMatrix:
    """A_ij = coefficient of x^(ip - j) in f^((p-1)/2), 1 <= i, j <= g."""
    F = f.field
    p = p or F.p
    if p != F.p:
        raise ValueError(f"f is defined over {F!r}, not in characteristic {p}")
    if p == 2:
        raise ValueError("p must be odd")
    if f.degree < 1:
        raise SingularModel("f must be nonconstant")
    if not f.is_squarefree():
        raise SingularModel(f"{f!r} is not squarefree (gcd with its derivative is nontrivial)")
    g = hyperelliptic_genus(f)
    h = f ** ((p - 1) // 2)
    entries = tuple(tuple(h[i * p - j] for j in range(1, g + 1)) for i in range(1, g + 1))
    return HasseWittMatrix(F, f, p, entries)


def prank_hyperelliptic(f: Polynomial, p: int | None = None) -> int:
    """Rank of A A^(p) ... A^(p^(g-1))."""
    hw = cartier_manin_matrix(f, p)
    if hw.g == 0:
        return 0
    prod = hw.rows()
    for i in range(1, hw.g):
        prod = matmul(hw.field, prod, hw.frobenius_twist(i))
    return rank(hw.field, prod)


def parse_hyperelliptic(text: str, c: int, k: int = 1, p: int = 3) -> Polynomial:
    """Polynomial in X from an expression such as "c*X^6+X^4+X^2+1", with the
    parameter c given as a packed element of GF(p^k)."""
    F = GF(p, k)
    ast = parse_expression(text.replace("=0", "").strip())
    names = [n for n in identifiers(ast) if n != "c"]
    if len(names) > 1:
        raise ValueError(f"expected one variable, found {names}")

    def leaf(name: str) -> MPoly:
        return MPoly.const(F, 1, c) if name == "c" else MPoly.var(F, 1, 0)

    num, den = evaluate(ast, leaf, lambda n: MPoly.const(F, 1, F.from_int(n)))
    if not den.is_constant():
        raise ValueError("f must be a polynomial")
    num = num.scale(F.inv(den.constant_term()))
    coeffs = univariate_part(num, 0) if num.variables() else [num.constant_term()]
    return Polynomial(F, coeffs)
