"""Artin-Schreier towers over GF(p^k)(x) and the curve file format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path

from ..gf import GF, FieldDescriptor, Polynomial
from ..mpoly import MPoly, univariate_part
from .parse import CurveSyntaxError, evaluate, identifiers, parse_expression

MAX_HEIGHT = 3


class NotArtinSchreier(ValueError):
    pass


@dataclass(frozen=True)
class ASStep:
    """v^p - v = num / den, with num in F[x, v_1..v_{j-1}] and den in F[x]."""

    name: str
    num: MPoly
    den: Polynomial

    def involves_tower_variables(self) -> bool:
        return bool(self.num.variables() - {0})


@dataclass
class ASTower:
    constant_field: FieldDescriptor
    names: list[str]
    steps: list[ASStep]
    expected: dict[str, int] = field(default_factory=dict)
    maps: dict[str, list[MPoly]] = field(default_factory=dict)
    params: dict[str, int] = field(default_factory=dict)
    source: str = ""

    def __post_init__(self):
        if len(self.steps) > MAX_HEIGHT:
            raise NotArtinSchreier(f"tower height {len(self.steps)} exceeds {MAX_HEIGHT}")
        if len(self.names) != len(self.steps) + 1:
            raise ValueError("need one name per variable")

    @property
    def p(self) -> int:
        return self.constant_field.p

    @property
    def height(self) -> int:
        return len(self.steps)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def bad_denominator(self) -> Polynomial:
        """Product of all step denominators: outside its roots and infinity
        every right-hand side is regular."""
        return reduce(lambda a, b: a * b, (s.den for s in self.steps), Polynomial(self.constant_field, [1]))

    def is_compositum(self) -> bool:
        """True when every right-hand side lies in F(x): the tower is then an
        elementary abelian (Z/p)^n cover of the x-line."""
        return not any(s.involves_tower_variables() for s in self.steps)

    def relations(self) -> list[MPoly]:
        """Cleared defining relations den(x) (v^p - v) - num."""
        out = []
        F, n = self.constant_field, self.nvars
        for j, s in enumerate(self.steps, start=1):
            v = MPoly.var(F, n, j)
            den = MPoly(F, n, {(i,) + (0,) * (n - 1): c for i, c in enumerate(s.den.coeffs)})
            out.append(den * (v ** self.p - v) - s.num)
        return out

    def rhs_series(self, j: int, coords: list, prec: int):
        """Right-hand side of step j (1-based) evaluated on coordinate series."""
        s = self.steps[j - 1]
        values = list(coords) + [None] * (self.nvars - len(coords))
        num = s.num.eval_series(values, prec)
        x = coords[0]
        den = None
        for i, c in enumerate(s.den.coeffs):
            if c:
                term = (x**i).scale(c)
                den = term if den is None else den + term
        return num / den

    def over(self, big: FieldDescriptor) -> "ASTower":
        """The same tower with coefficients embedded into ``big``."""
        if big is self.constant_field:
            return self
        cache = self.__dict__.setdefault("_base_changes", {})
        if big.k not in cache:
            emb = self.constant_field.embedding(big)
            steps = [ASStep(s.name, s.num.map_coeffs(big, emb), s.den.map_coeffs(big, emb)) for s in self.steps]
            maps = {n: [m.map_coeffs(big, emb) for m in imgs] for n, imgs in self.maps.items()}
            cache[big.k] = ASTower(big, self.names, steps, self.expected, maps, self.params, self.source)
        return cache[big.k]

    def describe(self) -> list[str]:
        out = []
        for j, s in enumerate(self.steps, start=1):
            den = "" if s.den.degree == 0 and s.den.coeffs == (1,) else f" / ({_upoly(s.den, self.names[0])})"
            out.append(f"{s.name}^{self.p} - {s.name} = ({s.num.format(self.names)}){den}")
        return out


def _upoly(f: Polynomial, var: str) -> str:
    return repr(f).replace("x", var)


# --- curve files ------------------------------------------------------------

_HEADER = re.compile(r"^(p|k)\s*=\s*(\d+)\s*$")
_PARAM = re.compile(r"^param\s+([A-Za-z_]\w*)\s*=\s*(-?\d+)\s*$")
_EXPECT = re.compile(r"^expect\s+(genus|prank)\s*=\s*(\d+)\s*$")
_MAP = re.compile(r"^map\s+([A-Za-z_]\w*)\s*:\s*(.*)$")


def parse_curve(text: str, params: dict[str, int] | None = None) -> ASTower:
    """Parse a curve file into a validated tower.

    ``params`` overrides ``param`` header lines.
    """
    p, k = 3, 1
    bound: dict[str, int] = {}
    expected: dict[str, int] = {}
    equations: list[tuple[int, str]] = []
    map_lines: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _HEADER.match(line):
            if m.group(1) == "p":
                p = int(m.group(2))
            else:
                k = int(m.group(2))
        elif m := _PARAM.match(line):
            bound[m.group(1)] = int(m.group(2))
        elif m := _EXPECT.match(line):
            expected[m.group(1)] = int(m.group(2))
        elif m := _MAP.match(line):
            map_lines.append((lineno, m.group(1), m.group(2)))
        elif line.startswith(("param", "expect", "map")):
            raise CurveSyntaxError(f"malformed header {line!r}", lineno, 1)
        else:
            equations.append((lineno, line))
    bound.update(params or {})
    F = GF(p, k)
    tower = build_tower(F, equations, bound)
    tower.expected = expected
    tower.params = bound
    tower.source = text
    for lineno, name, body in map_lines:
        tower.maps[name] = _parse_map(tower, body, lineno)
    return tower


def load_curve(path: str | Path, params: dict[str, int] | None = None) -> ASTower:
    return parse_curve(Path(path).read_text(), params)


def tower_from_equations(equations: list[str], p: int = 3, k: int = 1, params: dict[str, int] | None = None) -> ASTower:
    return build_tower(GF(p, k), list(enumerate(equations, start=1)), dict(params or {}))


def _split_equation(line: str, lineno: int) -> tuple:
    if line.count("=") > 1:
        raise CurveSyntaxError("more than one '='", lineno, line.index("=", line.index("=") + 1) + 1)
    if "=" in line:
        lhs, rhs = line.split("=")
        offset = len(lhs) + 1
        ln = parse_expression(lhs, lineno)
        try:
            rn = parse_expression(rhs, lineno)
        except CurveSyntaxError as exc:
            raise CurveSyntaxError(str(exc).split(": ", 1)[-1], lineno, exc.col + offset) from None
        return ("sub", ln, rn)
    return parse_expression(line, lineno)


def build_tower(F: FieldDescriptor, equations: list[tuple[int, str]], params: dict[str, int]) -> ASTower:
    if not equations:
        raise NotArtinSchreier("no equations")
    asts = [(lineno, _split_equation(line, lineno)) for lineno, line in equations]
    names: list[str] = []
    for lineno, ast in asts:
        new = [v for v in identifiers(ast) if v not in params and v not in names]
        expected_new = 2 if not names else 1
        if len(new) != expected_new:
            raise NotArtinSchreier(
                f"line {lineno}: equation introduces {len(new)} new variable(s) {new}, expected {expected_new}"
            )
        if len(new) == 2 and not _is_as_in(F, ast, new, params) and _is_as_in(F, ast, new[::-1], params):
            # "Y^3 - Y - X": the base variable is the one that appears second
            new.reverse()
        names.extend(new)
    if len(names) - 1 > MAX_HEIGHT:
        raise NotArtinSchreier(f"tower height {len(names) - 1} exceeds {MAX_HEIGHT}")
    n = len(names)
    index = {name: i for i, name in enumerate(names)}

    def leaf(name: str) -> MPoly:
        if name in params:
            return MPoly.const(F, n, F.from_int(params[name]))
        return MPoly.var(F, n, index[name])

    def const(c: int) -> MPoly:
        return MPoly.const(F, n, F.from_int(c))

    steps = []
    for j, (lineno, ast) in enumerate(asts, start=1):
        num, _den = evaluate(ast, leaf, const)
        steps.append(_normalize_step(F, names, j, num, lineno))
    return ASTower(F, names, steps)


def _is_as_in(F: FieldDescriptor, ast, order: list[str], params: dict[str, int]) -> bool:
    """Does the equation normalize as an AS step in order[1] over order[0]?"""
    index = {name: i for i, name in enumerate(order)}

    def leaf(name: str) -> MPoly:
        if name in params:
            return MPoly.const(F, 2, F.from_int(params[name]))
        return MPoly.var(F, 2, index[name])

    num, _ = evaluate(ast, leaf, lambda c: MPoly.const(F, 2, F.from_int(c)))
    try:
        _normalize_step(F, order, 1, num, 0)
    except NotArtinSchreier:
        return False
    return True


def _normalize_step(F: FieldDescriptor, names: list[str], j: int, poly: MPoly, lineno: int) -> ASStep:
    p = F.p
    if poly.variables() - set(range(j + 1)):
        raise NotArtinSchreier(f"line {lineno}: equation uses variables introduced later")
    if poly.degree_in(j) != p:
        raise NotArtinSchreier(
            f"line {lineno}: not Artin-Schreier in {names[j]} (degree {poly.degree_in(j)} instead of {p})"
        )
    lead = poly.coeff_in(j, p)
    if poly.coeff_in(j, 1) != -lead:
        raise NotArtinSchreier(f"line {lineno}: not of the form A*({names[j]}^{p} - {names[j]}) + B")
    for d in range(2, p):
        if not poly.coeff_in(j, d).is_zero():
            raise NotArtinSchreier(f"line {lineno}: {names[j]}^{d} term present")
    if lead.variables() - {0}:
        raise NotArtinSchreier(
            f"line {lineno}: coefficient of {names[j]}^{p} - {names[j]} involves tower variables; "
            "only denominators in the base variable are supported"
        )
    den = Polynomial(F, univariate_part(lead, 0) if lead.variables() else [lead.constant_term()])
    num = -poly.coeff_in(j, 0)
    inv = F.inv(den.coeffs[-1])
    return ASStep(names[j], num.scale(inv), den.monic())


def _parse_map(tower: ASTower, body: str, lineno: int) -> list[MPoly]:
    F, n = tower.constant_field, tower.nvars
    index = {name: i for i, name in enumerate(tower.names)}
    images: list[MPoly | None] = [None] * n
    for part in body.split(","):
        if "->" not in part:
            raise CurveSyntaxError(f"map component {part.strip()!r} lacks '->'", lineno, 1)
        var, expr = (s.strip() for s in part.split("->", 1))
        if var not in index:
            raise CurveSyntaxError(f"unknown variable {var!r} in map", lineno, 1)

        def leaf(name: str) -> MPoly:
            if name in tower.params:
                return MPoly.const(F, n, F.from_int(tower.params[name]))
            if name not in index:
                raise CurveSyntaxError(f"unknown identifier {name!r} in map", lineno, 1)
            return MPoly.var(F, n, index[name])

        num, den = evaluate(parse_expression(expr, lineno), leaf, lambda c: MPoly.const(F, n, F.from_int(c)))
        if not den.is_constant():
            raise CurveSyntaxError(f"map image of {var} must be a polynomial", lineno, 1)
        images[index[var]] = num.scale(F.inv(den.constant_term()))
    for i, img in enumerate(images):
        if img is None:
            images[i] = MPoly.var(F, n, i)
    return images
