"""Dense linear algebra over a FieldDescriptor (matrices as lists of int rows)."""

from __future__ import annotations

from .gf import FieldDescriptor

Matrix = list[list[int]]


def rref(F: FieldDescriptor, rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, a) for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(F: FieldDescriptor, rows: Matrix) -> int:
    return len(rref(F, rows)[1]) if rows else 0


def nullspace(F: FieldDescriptor, rows: Matrix, ncols: int) -> Matrix:
    """Basis of {v : rows * v = 0}, each vector normalized to have a 1 at
    its first free coordinate."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def matmul(F: FieldDescriptor, a: Matrix, b: Matrix) -> Matrix:
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = 0
            for k, x in enumerate(row):
                if x and b[k][j]:
                    acc = F.add(acc, F.mul(x, b[k][j]))
            new.append(acc)
        out.append(new)
    return out


def det(F: FieldDescriptor, a: Matrix) -> int:
    m = [list(r) for r in a]
    n = len(m)
    out = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = F.neg(out)
        out = F.mul(out, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return out
