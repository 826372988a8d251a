"""Finitely presented groups: a small word parser and HLT coset enumeration.

File format::

    gens: a b c
    a^9
    [a,b]
    c*a*c^-1 = a*b^-1

Words are lists of nonzero ints: generator i is i+1, its inverse -(i+1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .elements import Perm
from .group import Group

COSET_CEILING = 10**5


class PresentationSyntaxError(ValueError):
    pass


class CosetLimitExceeded(RuntimeError):
    """Enumeration hit the coset ceiling; the order is unknown."""


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]

    def word_str(self, w) -> str:
        return "*".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in w) or "1"

    def __str__(self) -> str:
        return "< " + " ".join(self.generators) + " | " + ", ".join(self.word_str(r) for r in self.relators) + " >"


def _free_reduce(w: list[int]) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _inverse(w: list[int]) -> list[int]:
    return [-x for x in reversed(w)]


_TOK = re.compile(r"\s*(?:([A-Za-z_]\w*)|(-?\d+)|(.))")


class _WordParser:
    def __init__(self, text: str, gens: dict[str, int]):
        self.toks = [m.group(0).strip() for m in _TOK.finditer(text) if m.group(0).strip()]
        self.i = 0
        self.gens = gens
        self.text = text

    def peek(self) -> str:
        return self.toks[self.i] if self.i < len(self.toks) else ""

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if want is not None and tok != want:
            raise PresentationSyntaxError(f"expected {want!r} in {self.text!r}, found {tok or 'end'!r}")
        self.i += 1
        return tok

    def word(self) -> list[int]:
        out = self.factor()
        while self.peek() == "*" or (self.peek() and (self.peek()[0].isalpha() or self.peek() in "[(")):
            if self.peek() == "*":
                self.take()
            out += self.factor()
        return out

    def factor(self) -> list[int]:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok == "-":
                tok = "-" + self.take()
            try:
                e = int(tok)
            except ValueError:
                raise PresentationSyntaxError(f"bad exponent {tok!r} in {self.text!r}") from None
            base = base * e if e >= 0 else _inverse(base) * (-e)
        return base

    def atom(self) -> list[int]:
        tok = self.peek()
        if tok == "[":
            self.take()
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            return _inverse(x) + _inverse(y) + x + y
        if tok == "(":
            self.take()
            w = self.word()
            self.take(")")
            return w
        if tok == "1":
            self.take()
            return []
        if tok in self.gens:
            self.take()
            return [self.gens[tok]]
        raise PresentationSyntaxError(f"unknown symbol {tok or 'end'!r} in {self.text!r}")


def parse_word(text: str, gens: dict[str, int]) -> list[int]:
    p = _WordParser(text, gens)
    w = p.word()
    if p.peek():
        raise PresentationSyntaxError(f"trailing {p.peek()!r} in {text!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    names: list[str] | None = None
    rels: list[tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            names = line[5:].split()
            if not names or len(set(names)) != len(names):
                raise PresentationSyntaxError("gens: needs distinct generator names")
            continue
        if names is None:
            raise PresentationSyntaxError("the first line must be 'gens: ...'")
        idx = {n: i + 1 for i, n in enumerate(names)}
        if line.count("=") > 1:
            raise PresentationSyntaxError(f"more than one '=' in {line!r}")
        if "=" in line:
            lhs, rhs = line.split("=")
            w = parse_word(lhs, idx) + _inverse(parse_word(rhs, idx))
        else:
            w = parse_word(line, idx)
        w = _free_reduce(w)
        if w:
            rels.append(tuple(w))
    if names is None:
        raise PresentationSyntaxError("missing 'gens:' line")
    return Presentation(tuple(names), tuple(rels))


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text())


# --- HLT coset enumeration over the trivial subgroup --------------------------------


class CosetTable:
    def __init__(self, ngens: int, ceiling: int):
        self.ncols = 2 * ngens
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.ceiling = ceiling

    @staticmethod
    def col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.rows) >= self.ceiling:
            raise CosetLimitExceeded(f"more than {self.ceiling} cosets defined")
        d = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(d)
        self.rows[c][self.col(x)] = d
        self.rows[d][self.col(-x)] = c

    def scan_and_fill(self, c: int, w: tuple[int, ...]) -> None:
        rows, col = self.rows, self.col
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and rows[f][col(w[i])] >= 0:
                f = rows[f][col(w[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][col(-w[j])] >= 0:
                b = rows[b][col(-w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][col(w[i])] = b
                rows[b][col(-w[i])] = f
                return
            self.define(f, w[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        rows = self.rows
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = rows[e][x]
                if f < 0:
                    continue
                xi = x ^ 1
                if rows[f][xi] == e:
                    rows[f][xi] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if rows[e1][x] >= 0:
                    self._merge(f1, rows[e1][x], queue)
                elif rows[f1][xi] >= 0:
                    self._merge(e1, rows[f1][xi], queue)
                else:
                    rows[e1][x] = f1
                    rows[f1][xi] = e1

    def compact(self) -> list[list[int]]:
        live = [c for c in range(len(self.rows)) if self.alive(c)]
        num = {c: i for i, c in enumerate(live)}
        return [[num[self.rep(self.rows[c][x])] for x in range(self.ncols)] for c in live]


def enumerate_cosets(pres: Presentation, ceiling: int = COSET_CEILING) -> list[list[int]]:
    """Coset table of the trivial subgroup (rows: cosets, columns: g1, g1^-1, ...)."""
    ngens = len(pres.generators)
    if ngens == 0:
        return [[]]
    T = CosetTable(ngens, ceiling)
    gens = range(1, ngens + 1)
    c = 0
    while c < len(T.rows):
        for rel in pres.relators:
            if not T.alive(c):
                break
            T.scan_and_fill(c, rel)
        if T.alive(c):
            for g in gens:
                for x in (g, -g):
                    if T.rows[c][T.col(x)] < 0:
                        T.define(c, x)
        c += 1
    return T.compact()


def todd_coxeter(pres: Presentation, ceiling: int = COSET_CEILING, name: str = "") -> Group:
    """The presented group, acting regularly on its cosets.  Generator g acts
    by c -> c.g^-1 so that words multiply as functions compose."""
    table = enumerate_cosets(pres, ceiling)
    n = len(table)
    perms = [Perm(tuple(row[2 * i + 1] for row in table)) for i in range(len(pres.generators))]
    if not perms:
        return Group.closure([], Perm.identity(1), name=name)
    return Group.closure(perms, Perm.identity(n), guard=max(n, 1), name=name)
