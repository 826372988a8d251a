"""The shipped claims catalog and the pipelines that check it.

Each catalog entry names a pipeline and its parameters.  A pipeline returns
a JSON-compatible value which is compared with the expected value verbatim;
guard overflows and missing constructions become INCONCLUSIVE, never
VERIFIED.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .astower.parse import evaluate, parse_expression
from .astower.places import tower_genus_prank
from .astower.tower import ASTower, load_curve
from .autoverify import (
    CoordinateMap,
    generated_group,
    invariant_sextic_classifier,
    orbit_analysis,
    tower_maps,
    verify_automorphism,
)
from .cartier import parse_hyperelliptic, prank_hyperelliptic
from .cover import CoverData, ShortOrbit, bound_report, dsh_prank, hurwitz_genus, short_orbit_numerology
from .gf import GF
from .grp import (
    GroupTooLarge,
    InconclusiveIsomorphism,
    characteristic_subgroups,
    identify,
    load_presentation,
    preset_group,
    todd_coxeter,
)
from .grp.group import Group
from .grp.presentation import CosetLimitExceeded
from .mpoly import MPoly
from .oracles import hyperelliptic_count, tower_counts
from .zeta import lpoly_from_counts, point_counts, prank_from_lpoly, read_golden, weil_bound_holds

STATUSES = ("VERIFIED", "MISMATCH", "INCONCLUSIVE", "OUT_OF_SCOPE")


class Inconclusive(RuntimeError):
    """The claim cannot be decided with the data at hand."""


class OutOfScope(RuntimeError):
    pass


@dataclass(frozen=True)
class Claim:
    id: str
    pipeline: str
    params: dict
    anchor: str
    expected: Any
    provenance: str
    criterion: int | None = None


@dataclass
class ClaimResult:
    id: str
    anchor: str
    computed: Any
    expected: Any
    provenance: str
    status: str
    millis: int
    note: str = ""

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RunConfig:
    workers: int = 1
    # group name (e.g. "S243_26") -> presentation file supplied by the user
    presentations: dict[str, str] = field(default_factory=dict)
    curve_dir: str | None = None
    golden_dir: str | None = None


# --- data access ------------------------------------------------------------------------


def _data(*parts: str):
    return resources.files("char3curves.data").joinpath(*parts)


def load_catalog(path: str | Path | None = None) -> list[Claim]:
    text = Path(path).read_text() if path else _data("claims.json").read_text()
    raw = json.loads(text)
    claims = [Claim(**c) for c in raw["claims"]]
    ids = [c.id for c in claims]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate claim ids in catalog")
    for c in claims:
        if c.pipeline not in PIPELINES:
            raise ValueError(f"claim {c.id}: unknown pipeline {c.pipeline!r}")
    return claims


def curve_path(name: str, config: RunConfig) -> Path:
    if config.curve_dir:
        return Path(config.curve_dir) / name
    with resources.as_file(_data("curves", name)) as p:
        return Path(p)


def golden_path(name: str, config: RunConfig) -> Path:
    if config.golden_dir:
        return Path(config.golden_dir) / name
    with resources.as_file(_data("golden", name)) as p:
        return Path(p)


def _curve(params: dict, config: RunConfig, c: int | None = None) -> ASTower:
    extra = {"c": c} if c is not None else None
    return load_curve(curve_path(params["curve"], config), extra)


def _per_c(params: dict, config: RunConfig, fn: Callable[[ASTower], Any]) -> Any:
    if "c_values" not in params:
        return fn(_curve(params, config))
    return {str(c): fn(_curve(params, config, c)) for c in params["c_values"]}


# --- pipelines --------------------------------------------------------------------------


def p_tower_genus_prank(params: dict, config: RunConfig):
    def run(t: ASTower):
        gp = tower_genus_prank(t)
        if "c_values" in params:
            if not gp.consistent:
                return {"stepwise": [gp.g, gp.gamma], "galois": list(gp.galois)}
            return [gp.g, gp.gamma]
        return {"stepwise": [gp.g, gp.gamma], "galois": list(gp.galois) if gp.galois else None}

    return _per_c(params, config, run)


def p_zeta_prank(params: dict, config: RunConfig):
    g = params["genus"]

    def run(t: ASTower):
        L = lpoly_from_counts(point_counts(t, params.get("imax", g)), g, t.constant_field.q)
        return {"degree": 2 * L.g, "functional_equation": L.functional_equation_holds(), "prank": prank_from_lpoly(L, t.p)}

    return _per_c(params, config, run)


def p_two_channels(params: dict, config: RunConfig):
    """Genus and p-rank from the ramification chain and, independently, from
    point counts (genus = half the L-degree, p-rank = its mod-p degree)."""
    t = _curve(params, config)
    gp = tower_genus_prank(t)
    L = lpoly_from_counts(point_counts(t, params["imax"]), gp.g, t.constant_field.q)
    if not L.functional_equation_holds():
        return {"astower": [gp.g, gp.gamma], "zeta": None}
    return {"astower": [gp.g, gp.gamma], "zeta": [L.g, prank_from_lpoly(L, t.p)]}


def p_cartier_sweep(params: dict, config: RunConfig):
    out = {}
    for k in range(1, params["k_max"] + 1):
        F = GF(3, k)
        ranks = {prank_hyperelliptic(parse_hyperelliptic(params["f"], c, k)) for c in F.elements() if c}
        out[str(k)] = sorted(ranks)
    return out


def p_golden_counts(params: dict, config: RunConfig):
    golden = read_golden(golden_path(params["golden"], config))
    t = _curve(params, config, params.get("c"))
    return point_counts(t, len(golden))


def p_overdetermination(params: dict, config: RunConfig):
    g, extra = params["genus"], params["extra"]

    def run(t: ASTower):
        counts = point_counts(t, g + extra)
        L = lpoly_from_counts(counts[:g], g, t.constant_field.q)
        return L.predicted_counts(g + extra) == counts

    return _per_c(params, config, run)


def p_weil_audit(params: dict, config: RunConfig):
    t = _curve(params, config)
    q = t.constant_field.q
    return [weil_bound_holds(n, i, q, params["genus"]) for i, n in enumerate(point_counts(t, params["imax"]), start=1)]


def _named_map(t: ASTower, params: dict) -> CoordinateMap:
    if "images" not in params:
        return tower_maps(t)[params["map"]]
    F, n = t.constant_field, t.nvars

    def leaf(name: str) -> MPoly:
        return MPoly.var(F, n, t.names.index(name))

    imgs = []
    for name in t.names:
        num, den = evaluate(parse_expression(params["images"][name]), leaf, lambda c: MPoly.const(F, n, F.from_int(c)))
        imgs.append(num.scale(F.inv(den.constant_term())))
    return CoordinateMap(params["map"], tuple(imgs))


def p_automorphism(params: dict, config: RunConfig):
    t = _curve(params, config)
    cert = verify_automorphism(t, _named_map(t, params))
    return cert.verified


def p_generated_group(params: dict, config: RunConfig):
    t = _curve(params, config)
    maps = tower_maps(t)
    gg = generated_group([maps[m] for m in params["maps"]])
    return {"order": gg.group.order, "exponent": gg.exponent, "abelian": gg.group.is_abelian(), "type": type_label(gg.group)}


def p_orbits(params: dict, config: RunConfig):
    t = _curve(params, config)
    maps = tower_maps(t)
    G = generated_group([maps[m] for m in params["maps"]], identify_presets=False).group
    table = orbit_analysis(t, G, params["k"])
    short = sorted([o.length, o.stabilizer_order, list(o.jumps or ())] for o in table.short_orbits())
    long_lengths = sorted({o.length for o in table.orbits if o.length == G.order})
    cover = cover_from_orbits(G.order, table, params.get("quotient_genus", 0), params.get("quotient_prank", 0))
    return {
        "short_orbits": short,
        "long_orbit_length": long_lengths[0] if long_lengths else None,
        "hurwitz_genus": hurwitz_genus(cover),
        "dsh_prank": dsh_prank(cover),
    }


def cover_from_orbits(order: int, table, base_genus: int = 0, base_prank: int = 0) -> CoverData:
    return CoverData(order, base_genus, base_prank, tuple(ShortOrbit(o.length, o.jumps) for o in table.short_orbits()))


def type_label(G: Group) -> str:
    """A preset name when one matches, else the abelian invariants, else
    the bare order."""
    names = identify(G)
    if names:
        return names[0]
    return G.abelian_label() or f"order-{G.order}"


def p_element_orders(params: dict, config: RunConfig):
    return preset_group(params["group"]).order_statistics().get(params["order"], 0)


def p_maximal_class(params: dict, config: RunConfig):
    return preset_group(params["group"]).is_maximal_class()


def p_frattini(params: dict, config: RunConfig):
    G = preset_group(params["group"])
    cs = characteristic_subgroups(G)
    return {
        "frattini_is_derived": set(cs.frattini.parent_indices) == set(cs.derived.parent_indices),
        "frattini_index": G.order // cs.frattini.order,
        "maximal_subgroups": len(cs.maximal_subgroups),
        "routes_agree": cs.frattini_routes_agree,
    }


def p_maximal_types(params: dict, config: RunConfig):
    G = preset_group(params["group"])
    return sorted(type_label(M) for M in G.maximal_subgroups())


def p_noncyclic_maximals(params: dict, config: RunConfig):
    G = preset_group(params["group"])
    return sum(1 for M in G.maximal_subgroups() if M.exponent != M.order)


def p_numerology(params: dict, config: RunConfig):
    bad = []
    for h in range(params["h_min"], params["h_max"] + 1):
        n = short_orbit_numerology(h)
        if n.solutions != ((h - 1, h - 1),):
            bad.append({"h": h, "solutions": [list(s) for s in n.solutions]})
    return "m=r=h-1" if not bad else bad


def p_bound(params: dict, config: RunConfig):
    rep = bound_report(params["genus"], params["prank"], 3, group_order=params["order"])
    return {"nakajima_bound": rep.nakajima_bound, "attains_nakajima": rep.attains_nakajima}


def p_sextic(params: dict, config: RunConfig):
    return invariant_sextic_classifier(params["max_degree"], params["shape"]).formatted()


def p_user_group(params: dict, config: RunConfig):
    name = params["group"]
    path = config.presentations.get(name)
    if path is None:
        raise Inconclusive(
            f"no presentation of {name} ships with the package; supply one with "
            f"--presentation {name}=FILE to decide this claim"
        )
    G = todd_coxeter(load_presentation(path), name=name)
    if G.order != params["order"]:
        raise Inconclusive(f"supplied presentation defines a group of order {G.order}, not {params['order']}")
    out: dict[str, Any] = {"order3": G.order_statistics().get(3, 0)}
    if G.order == 243:
        types = sorted(type_label(M) for M in G.maximal_subgroups())
        out["maximal_types"] = types
        out["s81_9_maximals"] = types.count("S81_9")
    return out


def p_out_of_scope(params: dict, config: RunConfig):
    raise OutOfScope(params["reason"])


PIPELINES: dict[str, Callable[[dict, RunConfig], Any]] = {
    "tower_genus_prank": p_tower_genus_prank,
    "zeta_prank": p_zeta_prank,
    "two_channels": p_two_channels,
    "cartier_sweep": p_cartier_sweep,
    "golden_counts": p_golden_counts,
    "overdetermination": p_overdetermination,
    "weil_audit": p_weil_audit,
    "automorphism": p_automorphism,
    "generated_group": p_generated_group,
    "orbits": p_orbits,
    "element_orders": p_element_orders,
    "maximal_class": p_maximal_class,
    "frattini": p_frattini,
    "maximal_types": p_maximal_types,
    "noncyclic_maximals": p_noncyclic_maximals,
    "numerology": p_numerology,
    "bound": p_bound,
    "sextic": p_sextic,
    "user_group": p_user_group,
    "out_of_scope": p_out_of_scope,
}


# --- running ----------------------------------------------------------------------------


def _normalize(v: Any) -> Any:
    return json.loads(json.dumps(v))


def _expected(claim: Claim, config: RunConfig) -> Any:
    if claim.expected == "golden":
        return read_golden(golden_path(claim.params["golden"], config))
    return claim.expected


def _subset_matches(computed: Any, expected: Any) -> bool:
    """Expected dicts may list only some keys of the computed record."""
    if isinstance(expected, dict) and isinstance(computed, dict):
        return all(k in computed and _subset_matches(computed[k], v) for k, v in expected.items())
    return computed == expected


def run_claim(claim: Claim, config: RunConfig = RunConfig()) -> ClaimResult:
    start = time.perf_counter()
    computed: Any = None
    note = ""
    expected = claim.expected
    try:
        expected = _expected(claim, config)
        computed = _normalize(PIPELINES[claim.pipeline](claim.params, config))
        status = "VERIFIED" if _subset_matches(computed, _normalize(expected)) else "MISMATCH"
    except OutOfScope as exc:
        status, note = "OUT_OF_SCOPE", str(exc)
    except (Inconclusive, GroupTooLarge, CosetLimitExceeded, InconclusiveIsomorphism) as exc:
        status, note = "INCONCLUSIVE", str(exc)
    millis = round((time.perf_counter() - start) * 1000)
    return ClaimResult(claim.id, claim.anchor, computed, expected, claim.provenance, status, millis, note)


def select(claims: list[Claim], selection: str | list[str] = "all") -> list[Claim]:
    if selection == "all":
        return claims
    wanted = [selection] if isinstance(selection, str) else list(selection)
    known = {c.id for c in claims}
    unknown = [w for w in wanted if w not in known]
    if unknown:
        raise KeyError(f"unknown claim ids: {', '.join(unknown)}")
    return [c for c in claims if c.id in wanted]


def run_claims(selection: str | list[str] = "all", config: RunConfig = RunConfig(), catalog: list[Claim] | None = None) -> list[ClaimResult]:
    claims = select(catalog if catalog is not None else load_catalog(), selection)
    if config.workers <= 1:
        return [run_claim(c, config) for c in claims]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        # map keeps catalog order, so assembly stays deterministic
        return list(pool.map(run_claim, claims, [config] * len(claims)))


def exit_code(results: list[ClaimResult]) -> int:
    return 1 if any(r.status == "MISMATCH" for r in results) else 0


# --- oracle mode --------------------------------------------------------------------------


@dataclass
class OracleDiff:
    golden: str
    stored: list[int]
    rederived: list[int]
    method: str

    @property
    def agrees(self) -> bool:
        return self.stored == self.rederived


def oracle_check(config: RunConfig = RunConfig(), catalog: list[Claim] | None = None) -> list[OracleDiff]:
    """Re-derive every golden count list by brute force and diff it against
    the stored file.  The genus-2 curve is also counted on its hyperelliptic
    model."""
    out = []
    for claim in catalog if catalog is not None else load_catalog():
        if claim.expected != "golden":
            continue
        stored = read_golden(golden_path(claim.params["golden"], config))
        t = _curve(claim.params, config, claim.params.get("c"))
        out.append(OracleDiff(claim.params["golden"], stored, tower_counts(t, len(stored)), "table lookup + fiber places"))
        if claim.params["curve"] == "genus2.curve":
            f = parse_hyperelliptic("c*X^6+X^4+X^2+1", claim.params.get("c", 1))
            rederived = [hyperelliptic_count(f, k) for k in range(1, len(stored) + 1)]
            out.append(OracleDiff(claim.params["golden"], stored, rederived, "hyperelliptic model"))
    return out
