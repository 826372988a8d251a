"""Ramification calculus for Galois p-covers.

Everything here works on abstract cover data (group order, quotient genus and
p-rank, short orbits with their ramification filtrations) and never looks at
a concrete curve.  All arithmetic is on Python ints and Fractions; parity or
sign violations raise :class:`InconsistentCoverData` instead of rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable


class InconsistentCoverData(ValueError):
    pass


@dataclass(frozen=True)
class ShortOrbit:
    """An orbit of length ``length`` whose points have ramification groups of
    orders ``jumps`` = (|S_P^(0)|, |S_P^(1)|, ...), the terminal 1 omitted."""

    length: int
    jumps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(self.jumps))
        if self.length < 1:
            raise InconsistentCoverData("orbit length must be positive")
        if len(self.jumps) < 2 or self.jumps[0] != self.jumps[1]:
            raise InconsistentCoverData(f"jumps {self.jumps}: need |S^(0)| = |S^(1)| for a p-group")
        for a, b in zip(self.jumps, self.jumps[1:]):
            if b > a or a % b:
                raise InconsistentCoverData(f"jumps {self.jumps} must be nonincreasing and each divide the previous")
        if self.jumps[-1] <= 1:
            raise InconsistentCoverData("list jumps up to, not including, the terminal 1")

    @property
    def stabilizer_order(self) -> int:
        return self.jumps[0]

    @property
    def different_exponent(self) -> int:
        """d_P = sum_i (|S_P^(i)| - 1)."""
        return sum(j - 1 for j in self.jumps)


@dataclass(frozen=True)
class CoverData:
    group_order: int
    base_genus: int
    base_prank: int
    orbits: tuple[ShortOrbit, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if self.group_order < 1:
            raise InconsistentCoverData("group order must be positive")
        if self.base_genus < 0 or not 0 <= self.base_prank <= self.base_genus:
            raise InconsistentCoverData("need 0 <= base p-rank <= base genus")
        for o in self.orbits:
            if self.group_order % o.length or o.length >= self.group_order:
                raise InconsistentCoverData(f"orbit length {o.length} must be a proper divisor of {self.group_order}")
            if o.length * o.stabilizer_order != self.group_order:
                raise InconsistentCoverData(
                    f"orbit length {o.length} times stabilizer {o.stabilizer_order} != {self.group_order}"
                )

    # -- JSON: jumps listed until (not including) the terminal 1

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "base_genus": self.base_genus,
            "base_prank": self.base_prank,
            "orbits": [{"length": o.length, "jumps": list(o.jumps)} for o in self.orbits],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoverData":
        try:
            return cls(
                group_order=int(data["group_order"]),
                base_genus=int(data["base_genus"]),
                base_prank=int(data.get("base_prank", 0)),
                orbits=tuple(ShortOrbit(int(o["length"]), tuple(int(j) for j in o["jumps"])) for o in data.get("orbits", [])),
            )
        except KeyError as exc:
            raise InconsistentCoverData(f"missing field {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "CoverData":
        return cls.from_json(json.loads(Path(path).read_text()))


def hurwitz_genus(c: CoverData) -> int:
    """Genus from 2g - 2 = |S|(2g_bar - 2) + sum over short orbits of l * d_P."""
    rhs = c.group_order * (2 * c.base_genus - 2) + sum(o.length * o.different_exponent for o in c.orbits)
    if rhs % 2:
        raise InconsistentCoverData(f"2g - 2 = {rhs} is odd")
    g = rhs // 2 + 1
    if g < 0:
        raise InconsistentCoverData(f"negative genus {g}")
    return g


def dsh_prank(c: CoverData) -> int:
    """p-rank from gamma - 1 = |S|(gamma_bar - 1) + sum (|S| - l_i)."""
    gamma = 1 + c.group_order * (c.base_prank - 1) + sum(c.group_order - o.length for o in c.orbits)
    if gamma < 0:
        raise InconsistentCoverData(f"negative p-rank {gamma}")
    return gamma


@dataclass(frozen=True)
class BoundReport:
    genus: int
    prank: int
    p: int
    fixes_point: bool
    hypothesis_threshold: int  # |S| > 2(g - 1)
    stichtenoth_point_bound: int | None  # |S| <= p/(p-1) g, S fixing a point
    stichtenoth_bound: int  # |S| <= 4p/(p-1) g^2
    nakajima_bound: int | None  # p/(p-2)(gamma - 1) for gamma > 1; g - 1 for gamma = 1
    nakajima_genus_bound: int | None  # p/(p-2)(g - 1) for gamma > 1
    nakajima_applicable: bool
    group_order: int | None = None
    attains_nakajima: bool | None = None
    exceeds_threshold: bool | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def bound_report(g: int, gamma: int, p: int, fixes_point: bool = False, group_order: int | None = None) -> BoundReport:
    if g < 2:
        raise ValueError("bounds need genus >= 2")
    if not 0 <= gamma <= g:
        raise ValueError(f"p-rank {gamma} outside [0, {g}]")
    point = int(Fraction(p, p - 1) * g) if fixes_point else None
    stich = int(Fraction(4 * p, p - 1) * g * g)
    naka = naka_g = None
    applicable = gamma >= 1
    if gamma > 1:
        if p == 2:
            applicable = False
        else:
            naka = int(Fraction(p, p - 2) * (gamma - 1))
            naka_g = int(Fraction(p, p - 2) * (g - 1))
    elif gamma == 1:
        # |S| divides g - 1
        naka = naka_g = g - 1
    attains = exceeds = None
    if group_order is not None:
        attains = naka is not None and group_order == naka
        exceeds = group_order > 2 * (g - 1)
    return BoundReport(
        genus=g,
        prank=gamma,
        p=p,
        fixes_point=fixes_point,
        hypothesis_threshold=2 * (g - 1),
        stichtenoth_point_bound=point,
        stichtenoth_bound=stich,
        nakajima_bound=naka,
        nakajima_genus_bound=naka_g,
        nakajima_applicable=applicable,
        group_order=group_order,
        attains_nakajima=attains,
        exceeds_threshold=exceeds,
    )


@dataclass(frozen=True)
class Numerology:
    h: int
    solutions: tuple[tuple[int, int], ...]

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1

    @property
    def m(self) -> int:
        return self.solutions[0][0]

    @property
    def r(self) -> int:
        return self.solutions[0][1]

    @property
    def lengths(self) -> tuple[int, int]:
        return 3**self.m, 3**self.r


def short_orbit_numerology(h: int) -> Numerology:
    """All h > m >= r > 0 with 3^m + 3^r < 3^h < 2(3^m + 3^r)."""
    if not 2 <= h <= 20:
        raise ValueError("h must lie in [2, 20]")
    sols = []
    for m in range(h - 1, 0, -1):
        for r in range(m, 0, -1):
            s = 3**m + 3**r
            if s < 3**h < 2 * s:
                sols.append((m, r))
    return Numerology(h, tuple(sols))


def lower_filtration(group_order: int, conductors: Iterable[int]) -> tuple[int, ...]:
    """Lower ramification group orders of an elementary abelian inertia group.

    ``conductors`` lists, for every character of the full decomposition group
    (the trivial one included), its reduced pole order m (0 if unramified).
    The upper filtration is G^u = common kernel of the characters with m < u;
    Herbrand's function converts it to lower numbering.  Returns
    (|G_0|, |G_1|, ...) with the terminal 1 omitted, or () if unramified.
    """
    ms = list(conductors)
    if len(ms) != group_order:
        raise ValueError("need one conductor per character")

    def upper_order(u: Fraction) -> int:
        # |G^(u+)| = |G| / #{chi : m_chi <= u}
        count = sum(1 for m in ms if m <= u)
        if group_order % count:
            raise InconsistentCoverData("characters with bounded conductor do not form a subgroup")
        return group_order // count

    g0 = upper_order(Fraction(0))
    if g0 == 1:
        return ()
    out = [g0]
    phi = Fraction(0)
    while True:
        gi = upper_order(phi)
        if gi == 1:
            break
        out.append(gi)
        phi += Fraction(gi, g0)
    return tuple(out)
