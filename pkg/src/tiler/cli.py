"""``tiler`` command-line interface."""

from __future__ import annotations

import argparse
import json
import sys

from . import mapcore
from .errors import TilerError


def _ints(text, count):
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers, got {text!r}")
    if len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers, got {text!r}")
    return vals


def _basis(text):
    from .quotients import SublatticeBasis

    p, q, r, s = _ints(text, 4)
    try:
        return SublatticeBasis.from_matrix(((p, q), (r, s)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _map_json(m, **extra):
    return json.dumps(mapcore.to_json_dict(m, **extra)) + "\n"


def cmd_patch(args):
    from .tilings import patch, template

    m = patch(template(args.tiling), args.radius)
    _emit(_map_json(m, interior=sorted(int(v) for v in m.interior_vertices)), args.out)
    return 0


def cmd_quotient(args):
    from .quotients import torus_quotient
    from .symbols import semi_equivelar_type
    from .tilings import template

    m = torus_quotient(template(args.tiling), args.basis)
    poly = mapcore.is_polyhedral(m)
    extra = {"tiling": args.tiling, "basis": [list(r) for r in args.basis.matrix],
             "polyhedral": bool(poly)}
    if poly:
        extra["type"] = str(semi_equivelar_type(m, check=False))
    else:
        print(f"warning: quotient is not polyhedral ({poly.code})", file=sys.stderr)
    _emit(_map_json(m, **extra), args.out)
    return 0


def cmd_census(args):
    from .census import census, census_csv

    _emit(census_csv(census(args.tiling, args.max_index, workers=args.workers)), args.csv)
    return 0


def cmd_orbits(args):
    from .symmetry import automorphism_group, vertex_orbits

    m = mapcore.load(args.map)
    g = automorphism_group(m)
    orb = vertex_orbits(m, g)
    if args.json:
        print(json.dumps({"orbits": orb.count, "sizes": orb.sizes, "group_order": g.order,
                          "classes": [sorted(int(v) for v in c) for c in orb.classes]}))
    else:
        print(f"orbits: {orb.count}")
        print(f"sizes: {' '.join(map(str, orb.sizes))}")
        print(f"group order: {g.order}")
    return 0


def cmd_auxgraph(args):
    from .auxgraphs import auxiliary_graph, orbit_separator, to_dot

    m = mapcore.load(args.map)
    aux = auxiliary_graph(m)
    cert = orbit_separator(m)
    print(f"cycle lengths: {' '.join(map(str, cert.cycle_lengths))}")
    print(f"orbit lower bound: {cert.lower_bound}")
    if args.dot:
        _emit(to_dot(m.n_vertices, aux), args.dot)
    return 0


def cmd_grow(args):
    from .growth import grow_patch

    res = grow_patch(args.type, args.rings)
    print(f"{res.symbol}: {len(res.outcomes)} outcome(s), {len(res.log)} branch point(s)")
    _emit(_map_json(res.map, symbol=str(res.symbol), rings=args.rings), args.out)
    if args.log:
        _emit("".join(f"{b}\n" for b in res.log), args.log)
    return 0


def cmd_verify_lemmas(args):
    from .diskcounts import verify_lemmas

    print(f"{'lemma':8} {'cases':>8} {'feasible':>9} {'forced':>7}  result")
    ok = True

    def show(r):
        nonlocal ok
        ok &= r.ok
        print(f"{r.lemma:8} {r.cases:8d} {r.feasible:9d} {r.forced_checked:7d}  "
              f"{'pass' if r.ok else 'FAIL ' + str(r.examples[:3])}", flush=True)

    verify_lemmas(args.max_n, args.max_k, progress=show)
    return 0 if ok else 2


def cmd_snub(args):
    from .quotients import torus_quotient
    from .sublattice_props import delete_centers, u0_members
    from .symbols import semi_equivelar_type
    from .tilings import template

    host = torus_quotient(template("E1"), args.lattice)
    m = delete_centers(host, u0_members(host))
    print(f"V={m.n_vertices} E={m.n_edges} F={m.n_faces} type={semi_equivelar_type(m)}")
    _emit(_map_json(m), args.out)
    return 0


def cmd_iso(args):
    from .symmetry import isomorphic

    res = isomorphic(mapcore.load(args.a), mapcore.load(args.b), oriented=args.oriented)
    print("isomorphic" if res else "not isomorphic")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiler", description="Semi-equivelar maps on the torus.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("patch", help="finite patch of a tiling")
    s.add_argument("--tiling", required=True)
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--out")
    s.set_defaults(func=cmd_patch)

    s = sub.add_parser("quotient", help="torus quotient by a sublattice")
    s.add_argument("--tiling", required=True)
    s.add_argument("--basis", type=_basis, required=True, help="row-major 2x2 matrix a,b,c,d")
    s.add_argument("--out")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("census", help="all quotients up to an index")
    s.add_argument("--tiling", required=True)
    s.add_argument("--max-index", type=int)
    s.add_argument("--csv")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("orbits", help="vertex orbits of the automorphism group")
    s.add_argument("map")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("auxgraph", help="auxiliary graph and orbit lower bound")
    s.add_argument("map")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_auxgraph)

    s = sub.add_parser("grow", help="grow a disk from a vertex type")
    s.add_argument("--type", required=True)
    s.add_argument("--rings", type=int, default=2)
    s.add_argument("--out")
    s.add_argument("--log")
    s.set_defaults(func=cmd_grow)

    s = sub.add_parser("verify-lemmas", help="sweep the disk counting lemmas")
    s.add_argument("--max-n", type=int, default=600)
    s.add_argument("--max-k", type=int, default=60)
    s.set_defaults(func=cmd_verify_lemmas)

    s = sub.add_parser("snub-from-triangular", help="[3^4,6] map from an E1 quotient")
    s.add_argument("--lattice", type=_basis, default="14,8,0,2")
    s.add_argument("--out")
    s.set_defaults(func=cmd_snub)

    s = sub.add_parser("iso", help="isomorphism test of two JSON maps")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--oriented", action="store_true")
    s.set_defaults(func=cmd_iso)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TilerError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tiler {args.command}: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
