"""Command line interface.

    yoshida validate FILE
    yoshida info FILE
    yoshida center FILE
    yoshida yoshida FILE [--dim-only] [--center]
    yoshida burnside FILE [--table] [--rho]
    yoshida verify FILE [--all | --check NAME ...]

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 a bound was
exceeded and ``--strict`` was given.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import groupoid as gpd
from .action import BoundExceeded, gset_product, omega
from .algebra import (BadPrime, center, dimension_via_orbits, fingerprint, groupoid_algebra,
                      yoshida_algebra)
from .burnside import crossed_burnside, rho, rho_images
from .checks import CHECK_NAMES, Options, run_checks
from .dsl import SpecError, load
from .linalg import is_prime, next_primes

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


def _primes(text):
    try:
        ps = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise argparse.ArgumentTypeError(f"{bad[0]} is not prime")
    return ps


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="transversal seed")
    common.add_argument("--primes", type=_primes, default=None, help="comma separated primes")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--deep", action="store_true", help="raise the exact-computation bounds")
    common.add_argument("--strict", action="store_true", help="exit 3 when a bound is exceeded")

    ap = argparse.ArgumentParser(prog="yoshida", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in [("validate", "check the groupoid axioms"),
                        ("info", "sizes, components, Ω and basis counts"),
                        ("center", "center of the groupoid algebra")]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
    p = sub.add_parser("yoshida", parents=[common], help="the Yoshida algebra End(k[Ω²])")
    p.add_argument("file")
    p.add_argument("--dim-only", action="store_true")
    p.add_argument("--center", action="store_true")
    p = sub.add_parser("burnside", parents=[common], help="the crossed Burnside ring")
    p.add_argument("file")
    p.add_argument("--table", action="store_true")
    p.add_argument("--rho", action="store_true")
    p = sub.add_parser("verify", parents=[common], help="run the verification checks")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--check", action="append", choices=CHECK_NAMES, metavar="NAME")
    p.add_argument("--timings", action="store_true", help="include wall times in JSON output")
    return ap


def _emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def _default_primes(args, G):
    return list(args.primes) if args.primes else next_primes(G.n_morphisms, 3)


def _fingerprints(A, primes, order):
    out = {}
    for p in primes:
        try:
            out[str(p)] = fingerprint(A, [p], order)[1][p]
        except BadPrime:
            out[str(p)] = None
    return out


def _opts(args):
    return Options(seed=args.seed, primes=args.primes, deep=args.deep, strict=args.strict,
                   timings=getattr(args, "timings", False)).effective()


# ---------------------------------------------------------------------------


def cmd_validate(args, spec, G):
    dec = gpd.connected_components(G)
    data = {"valid": True, "objects": G.n_objects, "morphisms": G.n_morphisms,
            "components": dec.n_components}
    _emit(args, data, f"valid: {G.n_objects} objects, {G.n_morphisms} morphisms, "
                      f"{dec.n_components} components")
    return EXIT_OK


def cmd_info(args, spec, G):
    T = gpd.transversal(G, args.seed)
    dec = T.decomposition
    comps = []
    for i, b in enumerate(dec.representatives):
        grp = gpd.isotropy(G, b)
        comps.append({"base": str(G.obj_labels[b]), "objects": len(dec.members(i)),
                      "isotropy_order": len(grp),
                      "conjugacy_classes": len(grp.conjugacy_classes())})
    data = {"name": spec.name, "objects": G.n_objects, "morphisms": G.n_morphisms,
            "components": comps, "transversal": T.describe()}
    lines = [f"{spec.name}: {G.n_objects} objects, {G.n_morphisms} morphisms"]
    for c in comps:
        lines.append(f"  component at {c['base']}: {c['objects']} objects, isotropy order "
                     f"{c['isotropy_order']}, {c['conjugacy_classes']} conjugacy classes")
    try:
        Om = omega(G, T)
        data["omega_fiber_sizes"] = [Om.size(x) for x in G.objects]
        data["dim_yoshida"] = dimension_via_orbits(G, gset_product(Om, Om))
        data["crossed_burnside_classes"] = len(crossed_burnside(G))
        lines += [f"  |Ω(x)|: {data['omega_fiber_sizes']}",
                  f"  dim Y: {data['dim_yoshida']}",
                  f"  crossed Burnside basis: {data['crossed_burnside_classes']}"]
    except BoundExceeded as exc:
        data["skipped"] = str(exc)
        lines.append(f"  Ω skipped: {exc}")
        if args.strict:
            _emit(args, data, "\n".join(lines))
            return EXIT_BOUND
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_center(args, spec, G):
    kG = groupoid_algebra(G)
    basis, Z = center(kG)
    vecs = [{str(G.mor_labels[g]): str(c) for g, c in sorted(v.items())} for v in basis]
    fp = _fingerprints(Z, _default_primes(args, G), G.n_morphisms)
    data = {"dim": Z.dim, "basis": vecs, "fingerprint": fp}
    lines = [f"dim Z(k[G]) = {Z.dim}", f"fingerprint: {fp}"]
    lines += ["  " + " + ".join(f"{c}*{l}" if c != "1" else l for l, c in v.items()) for v in vecs]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_yoshida(args, spec, G):
    opts = _opts(args)
    T = gpd.transversal(G, args.seed)
    Om = omega(G, T)
    dim = dimension_via_orbits(G, gset_product(Om, Om))
    data = {"dim": dim, "omega_fiber_sizes": [Om.size(x) for x in G.objects]}
    lines = [f"dim Y = {dim}"]
    if args.dim_only:
        _emit(args, data, "\n".join(lines))
        return EXIT_OK
    if dim > opts.yoshida_center_bound:
        msg = f"dim Y = {dim} exceeds the yoshida-center bound {opts.yoshida_center_bound}"
        data["skipped"] = msg
        lines.append(f"skipped: {msg}")
        _emit(args, data, "\n".join(lines))
        return EXIT_BOUND if args.strict else EXIT_OK
    Y = yoshida_algebra(G, T)
    if args.format == "json":
        data["algebra"] = Y.to_dict()
    if args.center:
        basis, ZY = center(Y)
        fp = _fingerprints(ZY, _default_primes(args, G), G.n_morphisms)
        data["center"] = {"dim": ZY.dim, "basis": [[[i, str(c)] for i, c in sorted(v.items())]
                                                   for v in basis],
                          "fingerprint": fp}
        lines += [f"dim Z(Y) = {ZY.dim}", f"fingerprint: {fp}"]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_burnside(args, spec, G):
    ring = crossed_burnside(G)
    names = [c.describe(G) for c in ring.classes]
    data = {"classes": names, "unit": [names[i] for i in ring.units]}
    lines = [f"crossed Burnside ring: {len(names)} basis classes"]
    lines += [f"  {i}: {n}" for i, n in enumerate(names)]
    if args.table:
        table = [[ring.basis_product(i, j) for j in range(len(ring))] for i in range(len(ring))]
        data["table"] = table
        lines.append("products (i, j): coefficients")
        for i in range(len(ring)):
            for j in range(len(ring)):
                terms = " + ".join(f"{c}*[{k}]" for k, c in enumerate(table[i][j]) if c)
                lines.append(f"  {i} x {j} = {terms or '0'}")
    code = EXIT_OK
    if args.rho:
        T = gpd.transversal(G, args.seed)
        f, rep = rho(G, T)
        imgs = [{str(G.mor_labels[g]): c for g, c in sorted(v.items())} for v in rho_images(G, T)]
        data["rho"] = {"images": imgs, "rank": rep.get("rank"), "ok": rep["ok"],
                       "images_central": rep["images_central"]}
        lines.append(f"rho: rank {rep.get('rank')}, ring map ok: {rep['ok']}")
        lines += [f"  {names[i]} -> {img}" for i, img in enumerate(imgs)]
        if not rep["ok"]:
            code = EXIT_FAIL
    _emit(args, data, "\n".join(lines))
    return code


def cmd_verify(args, spec, G):
    opts = _opts(args)
    report = run_checks(spec, opts, names=args.check)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return report.exit_code(args.strict)


COMMANDS = {"validate": cmd_validate, "info": cmd_info, "center": cmd_center,
            "yoshida": cmd_yoshida, "burnside": cmd_burnside, "verify": cmd_verify}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        spec, G = load(args.file)
    except (SpecError, gpd.GroupoidError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command not in ("validate", "verify") and G.n_morphisms > Options.morphism_bound:
            raise BoundExceeded(f"{G.n_morphisms} morphisms exceed the morphism bound "
                                f"{Options.morphism_bound}")
        return COMMANDS[args.command](args, spec, G)
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND if args.strict else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
