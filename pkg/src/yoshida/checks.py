"""Verification harness: runs every named check on one groupoid and collects
a deterministic report.

Each check returns a status (``pass``, ``fail`` or ``skipped``) and a dict of
witnesses.  A skipped check always names the bound that stopped it.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from functools import cached_property

import jsonschema

from . import groupoid as gpd
from .action import BoundExceeded, gset_product, omega, orbit_count_at_bases
from .algebra import (
    NAIVE_BOUND,
    BadPrime,
    center,
    center_transport_iso,
    centralizer_algebra,
    decompose_by_components,
    dimension_via_orbits,
    fingerprint,
    groupoid_algebra,
    naive_intertwiners,
    yoshida_algebra,
)
from .burnside import component_decompose_burnside, crossed_burnside, rho
from .linalg import next_primes

CHECK_NAMES = (
    "burnside-decomposition",
    "burnside-mult-oracle",
    "center-decomposition",
    "center-transport",
    "product-decomposition",
    "rho-onto-yoshida-center",
    "rho-ring-hom",
    "rho-surjective",
    "structure-iso",
    "transversal-independence",
    "yoshida-center-iso",
    "yoshida-dim-oracle",
)

MORPHISM_BOUND = 200
YOSHIDA_CENTER_BOUND = 1000
DEEP_YOSHIDA_CENTER_BOUND = 5000
DEEP_NAIVE_BOUND = 20000


@dataclass(frozen=True)
class Options:
    seed: int | None = None
    primes: tuple | None = None
    deep: bool = False
    strict: bool = False
    timings: bool = False
    morphism_bound: int = MORPHISM_BOUND
    yoshida_center_bound: int = YOSHIDA_CENTER_BOUND
    naive_bound: int = NAIVE_BOUND

    def effective(self) -> "Options":
        """Bounds after applying ``deep``."""
        if not self.deep:
            return self
        return replace(self,
                       yoshida_center_bound=max(self.yoshida_center_bound, DEEP_YOSHIDA_CENTER_BOUND),
                       naive_bound=max(self.naive_bound, DEEP_NAIVE_BOUND))

    def to_dict(self):
        return {
            "seed": self.seed,
            "primes": list(self.primes) if self.primes is not None else None,
            "deep": self.deep,
            "morphism_bound": self.morphism_bound,
            "yoshida_center_bound": self.yoshida_center_bound,
            "naive_bound": self.naive_bound,
        }


@dataclass
class CheckResult:
    name: str
    status: str
    witnesses: dict
    wall_time: float = 0.0

    def to_dict(self, timings=False):
        d = {"name": self.name, "status": self.status, "witnesses": self.witnesses}
        if timings:
            d["wall_time"] = round(self.wall_time, 6)
        return d


@dataclass
class VerificationReport:
    groupoid: str
    summary: dict
    options: dict
    checks: list = field(default_factory=list)
    timings: bool = False

    @property
    def status(self):
        st = {c.status for c in self.checks}
        return "fail" if "fail" in st else "skipped" if "skipped" in st else "pass"

    def exit_code(self, strict=False):
        if self.status == "fail":
            return 1
        if strict and self.status == "skipped":
            return 3
        return 0

    def to_dict(self):
        return {
            "groupoid": self.groupoid,
            "summary": self.summary,
            "options": self.options,
            "status": self.status,
            "checks": [c.to_dict(self.timings) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        s = self.summary
        lines = [f"groupoid {self.groupoid}: {s['objects']} objects, "
                 f"{s['morphisms']} morphisms, {s['components']} components"]
        for c in self.checks:
            wit = ", ".join(f"{k}={_short(v)}" for k, v in sorted(c.witnesses.items()))
            lines.append(f"  {c.status.upper():7} {c.name:26} {c.wall_time:7.2f}s  {wit}")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, d):
        validate_report(d)
        timings = any("wall_time" in c for c in d["checks"])
        checks = [CheckResult(c["name"], c["status"], c["witnesses"], c.get("wall_time", 0.0))
                  for c in d["checks"]]
        return cls(d["groupoid"], d["summary"], d["options"], checks, timings)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _short(v, limit=60):
    s = json.dumps(v, sort_keys=True)
    return s if len(s) <= limit else s[:limit - 3] + "..."


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["groupoid", "summary", "options", "status", "checks"],
    "additionalProperties": False,
    "properties": {
        "groupoid": {"type": "string"},
        "status": {"enum": ["pass", "fail", "skipped"]},
        "summary": {
            "type": "object",
            "required": ["objects", "morphisms", "components"],
            "properties": {k: {"type": "integer", "minimum": 0}
                           for k in ("objects", "morphisms", "components")},
        },
        "options": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "witnesses"],
                "additionalProperties": False,
                "properties": {
                    "name": {"enum": list(CHECK_NAMES)},
                    "status": {"enum": ["pass", "fail", "skipped"]},
                    "witnesses": {"type": "object"},
                    "wall_time": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}


def validate_report(doc: dict):
    jsonschema.validate(doc, REPORT_SCHEMA)
    for c in doc["checks"]:
        if c["status"] == "skipped" and "bound" not in c["witnesses"]:
            raise jsonschema.ValidationError(f"skipped check {c['name']} names no bound")


class _Skip(Exception):
    pass


class _Context:
    """Lazily computed objects shared between checks."""

    def __init__(self, G: gpd.FiniteGroupoid, opts: Options):
        self.G = G
        self.opts = opts
        self.T = gpd.transversal(G, opts.seed)

    @cached_property
    def seeds(self):
        s0 = self.opts.seed if self.opts.seed is not None else 0
        return [s0, s0 + 1, s0 + 2]

    @cached_property
    def primes(self):
        if self.opts.primes is not None:
            return list(self.opts.primes)
        return next_primes(self.G.n_morphisms, 3)

    @cached_property
    def kG(self):
        return groupoid_algebra(self.G)

    @cached_property
    def Zk(self):
        return center(self.kG)[1]

    @cached_property
    def omega(self):
        return omega(self.G, self.T)

    @cached_property
    def omega2(self):
        return gset_product(self.omega, self.omega)

    @cached_property
    def dim_y(self):
        return dimension_via_orbits(self.G, self.omega2)

    def yoshida_within_bound(self, dim_y=None):
        d = self.dim_y if dim_y is None else dim_y
        bound = self.opts.yoshida_center_bound
        if d > bound:
            raise BoundExceeded(f"dim Y = {d} exceeds the yoshida-center bound {bound}")

    @cached_property
    def Y(self):
        self.yoshida_within_bound()
        return yoshida_algebra(self.G, self.T)

    @cached_property
    def ZY(self):
        return center(self.Y)[1]

    @cached_property
    def ring(self):
        return crossed_burnside(self.G)

    @cached_property
    def rho(self):
        return rho(self.G, self.T)


def _unknowns(X):
    return sum(X.size(x) ** 2 for x in X.base.objects)


def _aggregate(items):
    """Status for a check made of sub-verifications."""
    if any(not it.get("ok", True) for it in items):
        return "fail"
    if not items:
        return "skipped"
    return "pass"


def _map_ok(rep):
    return bool(rep["ok"] and rep["injective"] and rep["surjective"])


# ---------------------------------------------------------------------------
# the checks


def check_structure_iso(ctx):
    G = ctx.G
    dec = gpd.connected_components(G)
    bad = None
    for s in ctx.seeds:
        T = gpd.transversal(G, s)
        for i in range(dec.n_components):
            if not gpd.structure_iso_check(G, T, component=i):
                bad = bad or {"seed": s, "component": i}
    formula = gpd.morphism_count_formula(G)
    w = {"components": dec.n_components, "seeds": ctx.seeds,
         "morphisms": G.n_morphisms, "morphism_count_formula": formula}
    if bad:
        w["counterexample"] = bad
    return ("pass" if bad is None and formula == G.n_morphisms else "fail"), w


def check_center_decomposition(ctx):
    G = ctx.G
    dec = gpd.connected_components(G)
    classes = [len(gpd.isotropy(G, b).conjugacy_classes()) for b in dec.representatives]
    _, rep = decompose_by_components(G, groupoid_algebra)
    w = {"dim_center": ctx.Zk.dim, "class_counts": classes, "map": rep}
    ok = _map_ok(rep) and ctx.Zk.dim == sum(classes)
    return ("pass" if ok else "fail"), w


def check_center_transport(ctx):
    G = ctx.G
    dec = gpd.connected_components(G)
    items, skipped = [], []
    for i in range(dec.n_components):
        H = gpd.component_subgroupoid(G, i)
        TH = ctx.T.restrict(H)
        Om = omega(H, TH)
        for gname, X in (("omega", Om), ("omega^2", gset_product(Om, Om))):
            try:
                _, rep = center_transport_iso(H, TH, X, ctx.opts.naive_bound)
            except BoundExceeded as exc:
                skipped.append({"component": i, "gset": gname, "bound": str(exc)})
                continue
            items.append({"component": i, "gset": gname, "dim": rep["source_dim"],
                          "rank": rep["rank"], "ok": _map_ok(rep),
                          **({"counterexample": rep["counterexample"]}
                             if "counterexample" in rep else {})})
    w = {"verified": items}
    if skipped:
        w["partial_skips"] = skipped
        if not items:
            w["bound"] = skipped[0]["bound"]
    return _aggregate(items), w


def check_product_decomposition(ctx):
    G = ctx.G
    items, skipped = [], []
    for what in ("omega", "yoshida"):
        try:
            if what == "omega":
                _, rep = decompose_by_components(G, centralizer_algebra, gset=ctx.omega,
                                                 bound=ctx.opts.naive_bound)
            else:
                _, rep = decompose_by_components(G, yoshida_algebra, T=ctx.T,
                                                 bound=ctx.opts.naive_bound)
        except BoundExceeded as exc:
            skipped.append({"algebra": what, "bound": str(exc)})
            continue
        items.append({"algebra": what, "dim_center": rep["source_dim"], "rank": rep["rank"],
                      "ok": _map_ok(rep)})
    w = {"verified": items}
    if skipped:
        w["partial_skips"] = skipped
        if not items:
            w["bound"] = skipped[0]["bound"]
    return _aggregate(items), w


def check_yoshida_dim_oracle(ctx):
    X = ctx.omega2
    dims = {"burnside_count": ctx.dim_y,
            "orbit_enumeration": orbit_count_at_bases(gset_product(X, X))}
    skipped = []
    try:
        dims["naive_solve"] = len(naive_intertwiners(ctx.G, X, ctx.opts.naive_bound))
    except BoundExceeded as exc:
        skipped.append(str(exc))
    try:
        dims["orbital_basis"] = ctx.Y.dim
    except BoundExceeded as exc:
        skipped.append(str(exc))
    w = {"dims": dims, "omega_fiber_sizes": [ctx.omega.size(x) for x in ctx.G.objects]}
    if skipped:
        w["partial_skips"] = skipped
    return ("pass" if len(set(dims.values())) == 1 else "fail"), w


def _fingerprints(ctx, A):
    counts, bad = {}, []
    for p in ctx.primes:
        try:
            counts.update({str(q): c for q, c in fingerprint(A, [p], ctx.G.n_morphisms)[1].items()})
        except BadPrime:
            bad.append(p)
    return counts, bad


def check_yoshida_center_iso(ctx):
    ctx.yoshida_within_bound()
    fk, bad_k = _fingerprints(ctx, ctx.Zk)
    fy, bad_y = _fingerprints(ctx, ctx.ZY)
    common = sorted(set(fk) & set(fy), key=int)
    w = {"dim_center_kG": ctx.Zk.dim, "dim_center_Y": ctx.ZY.dim, "dim_Y": ctx.Y.dim,
         "fingerprint_kG": fk, "fingerprint_Y": fy, "primes": ctx.primes}
    if bad_k or bad_y:
        w["inadmissible_primes"] = sorted(set(bad_k) | set(bad_y))
    ok = ctx.Zk.dim == ctx.ZY.dim and all(fk[p] == fy[p] for p in common)
    if not common:
        raise _Skip("no admissible prime for fingerprints")
    return ("pass" if ok else "fail"), w


def check_burnside_mult_oracle(ctx):
    ring = ctx.ring
    n = len(ring)
    bad = None
    for i in range(n):
        for j in range(n):
            if ring.basis_product(i, j) != ring.basis_product_oracle(i, j):
                bad = [ring.classes[i].describe(ctx.G), ring.classes[j].describe(ctx.G)]
                break
        if bad:
            break
    w = {"classes": n, "pairs_checked": n * n}
    if bad:
        w["counterexample"] = bad
    return ("fail" if bad else "pass"), w


def check_burnside_decomposition(ctx):
    B = ctx.ring.algebra()
    assoc = B.check_associativity()
    unit = B.check_unit()
    _, rep = component_decompose_burnside(ctx.G)
    w = {"dim": B.dim, "associative": assoc is None, "unit_law": unit is None, "map": rep}
    if assoc is not None:
        w["associativity_counterexample"] = list(assoc)
    ok = assoc is None and unit is None and _map_ok(rep)
    return ("pass" if ok else "fail"), w


def check_rho_ring_hom(ctx):
    _, rep = ctx.rho
    w = {k: rep[k] for k in ("images_central", "unital", "multiplicative")
         if k in rep}
    for k in ("counterexample", "noncentral_class"):
        if k in rep:
            w[k] = rep[k]
    ok = rep["images_central"] and rep.get("unital") and rep.get("multiplicative")
    return ("pass" if ok else "fail"), w


def check_rho_surjective(ctx):
    f, rep = ctx.rho
    w = {"rank": rep.get("rank"), "dim_center": ctx.Zk.dim, "classes": len(ctx.ring)}
    return ("pass" if rep.get("rank") == ctx.Zk.dim else "fail"), w


def check_rho_onto_yoshida_center(ctx):
    _, rep = ctx.rho
    w = {"rank": rep.get("rank"), "dim_center_Y": ctx.ZY.dim}
    return ("pass" if rep.get("rank") == ctx.ZY.dim else "fail"), w


def check_transversal_independence(ctx):
    G = ctx.G
    rows, skipped = [], []
    for s in ctx.seeds:
        T = gpd.transversal(G, s)
        Om = omega(G, T)
        X = gset_product(Om, Om)
        dy = dimension_via_orbits(G, X)
        f, rep = rho(G, T)
        row = {"seed": s, "omega_fiber_sizes": [Om.size(x) for x in G.objects],
               "dim_Y": dy, "rho_rank": rep.get("rank"), "dim_center": rep.get("center_dim")}
        try:
            ctx.yoshida_within_bound(dy)
            row["dim_center_Y"] = center(yoshida_algebra(G, T))[1].dim
        except BoundExceeded as exc:
            if str(exc) not in skipped:
                skipped.append(str(exc))
        rows.append(row)
    keys = [{k: v for k, v in r.items() if k != "seed"} for r in rows]
    w = {"per_seed": rows}
    if skipped:
        w["partial_skips"] = skipped
    return ("pass" if all(k == keys[0] for k in keys) else "fail"), w


CHECKS = {
    "burnside-decomposition": check_burnside_decomposition,
    "burnside-mult-oracle": check_burnside_mult_oracle,
    "center-decomposition": check_center_decomposition,
    "center-transport": check_center_transport,
    "product-decomposition": check_product_decomposition,
    "rho-onto-yoshida-center": check_rho_onto_yoshida_center,
    "rho-ring-hom": check_rho_ring_hom,
    "rho-surjective": check_rho_surjective,
    "structure-iso": check_structure_iso,
    "transversal-independence": check_transversal_independence,
    "yoshida-center-iso": check_yoshida_center_iso,
    "yoshida-dim-oracle": check_yoshida_dim_oracle,
}
assert tuple(sorted(CHECKS)) == CHECK_NAMES


def run_checks(target, options: Options | None = None, names=None) -> VerificationReport:
    """Run the named checks (all by default) on a groupoid or a parsed spec."""
    from .dsl import GroupoidSpec, build

    opts = (options or Options()).effective()
    if isinstance(target, GroupoidSpec):
        name, G = target.name, build(target)
    else:
        name, G = "G", target
    names = sorted(names) if names is not None else list(CHECK_NAMES)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check {unknown[0]!r}")
    summary = {"objects": G.n_objects, "morphisms": G.n_morphisms,
               "components": gpd.connected_components(G).n_components}
    report = VerificationReport(name, summary, opts.to_dict(), timings=opts.timings)
    too_big = None
    if G.n_morphisms > opts.morphism_bound:
        too_big = f"{G.n_morphisms} morphisms exceed the morphism bound {opts.morphism_bound}"
    ctx = _Context(G, opts)
    for n in names:
        t0 = time.perf_counter()
        if too_big:
            status, w = "skipped", {"bound": too_big}
        else:
            try:
                status, w = CHECKS[n](ctx)
            except (BoundExceeded, _Skip) as exc:
                status, w = "skipped", {"bound": str(exc)}
        report.checks.append(CheckResult(n, status, w, time.perf_counter() - t0))
    return report
