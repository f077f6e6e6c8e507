"""``nervus`` command line: nerves, Sorkin posets, homology, Zapatrin forms, fractal towers, point clouds.

Every command prints a JSON run report on stdout. Exit codes: 0 success,
2 unreadable or malformed input, 3 semantic failure, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io as nio
from .complex import betti
from .config import Caps
from .context import cech_nerve, vietoris_nerve
from .errors import MalformedInputError, NervusError
from .fractafold import (OdeParams, Tower, cantor_tower, carpet_complex, rossler_cloud, solenoid_tower,
                         sponge_complex, tower_homology)
from .geometry import cech_ball_complex, connecting_epsilon, rips_complex
from .incidence import dd_vanishes, leibniz_defects, zapatrin_cohomology, zapatrin_matrices
from .linalg import get_field
from .poset import sorkin_quotient


def _report(args, inputs: dict, outputs: dict) -> dict:
    return {"command": args.argv, "inputs": inputs, "outputs": outputs}


def cmd_nerve(args, caps):
    p, dg = nio.load(args.context, nio.context_from_json, args.context)
    k = cech_nerve(p) if args.kind == "cech" else vietoris_nerve(p)
    if args.out:
        Path(args.out).write_text(nio.dumps(nio.complex_to_json(k)))
    return _report(args, {args.context: dg},
                   {"complex": nio.complex_to_json(k), "homology": nio.betti_report(betti(k, args.field), args.field)})


def cmd_sorkin(args, caps):
    p, dg = nio.load(args.context, nio.context_from_json, args.context)
    q = sorkin_quotient(p)
    if args.dot:
        Path(args.dot).write_text(q.poset.to_dot())
    classes = {c: sorted(map(str, q.members[c])) for c in q.poset.elements}
    return _report(args, {args.context: dg},
                   {"poset": nio.poset_to_json(q.poset), "size": len(q.poset), "classes": classes})


def cmd_homology(args, caps):
    k, dg = nio.load(args.complex, nio.complex_from_json, args.complex)
    return _report(args, {args.complex: dg}, {"homology": nio.betti_report(betti(k, args.field), args.field)})


def cmd_zapatrin(args, caps):
    k, dg = nio.load(args.poset, nio.poset_from_json, args.poset)
    mats = zapatrin_matrices(k, args.field)
    chains = [[[str(x) for x in c] for c in level] for level in k.chains]
    return _report(args, {args.poset: dg}, {
        "chains": chains,
        "d": {str(n): nio.matrix_to_json(m.to_dense(get_field(args.field))) for n, m in mats.items()},
        "cohomology": list(zapatrin_cohomology(k, args.field)),
        "dd_zero": dd_vanishes(k, args.field),
        "leibniz": not leibniz_defects(k, args.field),
    })


def _fractal_tower(args, caps) -> Tower:
    if args.family == "cantor":
        return cantor_tower(args.level, caps.cantor).tower
    if args.family == "solenoid":
        return solenoid_tower(args.base, args.level, caps.solenoid)
    k = carpet_complex(args.level, caps.carpet) if args.family == "carpet" else sponge_complex(args.level, caps.sponge)
    return Tower((args.level,), (k,), ())


def cmd_fractal(args, caps):
    tower = _fractal_tower(args, caps)
    th = tower_homology(tower, args.field)
    if args.out:
        nio.write_tower(tower, args.out)
    return _report(args, {}, {
        "family": args.family,
        "levels": list(th.levels),
        "betti": [list(b) for b in th.betti],
        "bonding": [{str(n): nio.matrix_to_json(m) for n, m in mats.items()} for mats in th.bonding],
        "f_vectors": [list(k.f_vector()) for k in tower.complexes],
    })


def _cloud_command(build):
    def run(args, caps):
        data = nio.read_bytes(args.cloud)
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError:
            raise MalformedInputError(f"{args.cloud} is not UTF-8 text") from None
        cloud = nio.cloud_from_csv(text)
        eps = connecting_epsilon(cloud) if args.eps is None else args.eps
        k = build(cloud, eps, args.maxdim)
        return _report(args, {args.cloud: nio.digest(data)}, {
            "eps": eps,
            "complex": nio.complex_to_json(k),
            "f_vector": list(k.f_vector()),
            "homology": nio.betti_report(betti(k, args.field), args.field),
        })
    return run


def cmd_rossler(args, caps):
    params = OdeParams(a=args.a, b=args.b, c=args.c, dt=args.dt, steps=args.steps, transient=args.transient)
    text = nio.cloud_to_csv(rossler_cloud(params, args.count))
    if args.out:
        Path(args.out).write_text(text)
        return _report(args, {}, {"points": args.count, "csv": args.out, "digest": nio.digest(text.encode())})
    sys.stdout.write(text)
    return None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nervus", description="Nerves, Sorkin posets, homology, Zapatrin forms, fractal towers and point clouds.",
        epilog="exit codes: 0 ok, 2 malformed input, 3 semantic error, 4 size cap exceeded")
    ap.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def field_flag(p):
        p.add_argument("--field", choices=["Q", "GF2"], default="Q")

    p = sub.add_parser("nerve", help="Čech or Vietoris nerve of a context")
    p.add_argument("kind", choices=["cech", "vietoris"])
    p.add_argument("context")
    p.add_argument("--out", help="also write the complex JSON here")
    field_flag(p)
    p.set_defaults(run=cmd_nerve)

    p = sub.add_parser("sorkin", help="Sorkin quotient poset of a context")
    p.add_argument("context")
    p.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as DOT")
    p.set_defaults(run=cmd_sorkin)

    p = sub.add_parser("homology", help="Betti numbers of a complex file")
    p.add_argument("complex")
    field_flag(p)
    p.set_defaults(run=cmd_homology)

    p = sub.add_parser("zapatrin", help="Zapatrin differential and cohomology of a poset")
    p.add_argument("poset")
    field_flag(p)
    p.set_defaults(run=cmd_zapatrin)

    p = sub.add_parser("fractal", help="fractal test-bed towers")
    p.add_argument("family", choices=["cantor", "carpet", "sponge", "solenoid"])
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--base", type=int, default=4, help="solenoid base cycle size")
    p.add_argument("--out", help="write the tower directory here")
    field_flag(p)
    p.set_defaults(run=cmd_fractal)

    for name, build in (("rips", rips_complex), ("cechball", cech_ball_complex)):
        p = sub.add_parser(name, help=f"{name} complex of a CSV point cloud")
        p.add_argument("cloud")
        p.add_argument("--eps", type=float, help="scale; default: smallest connecting scale")
        p.add_argument("--maxdim", type=int, default=3)
        field_flag(p)
        p.set_defaults(run=_cloud_command(build))

    p = sub.add_parser("rossler", help="subsampled Rössler trajectory as CSV")
    d = OdeParams()
    p.add_argument("--a", type=float, default=d.a)
    p.add_argument("--b", type=float, default=d.b)
    p.add_argument("--c", type=float, default=d.c)
    p.add_argument("--dt", type=float, default=d.dt)
    p.add_argument("--steps", type=int, default=d.steps)
    p.add_argument("--transient", type=int, default=d.transient)
    p.add_argument("--count", type=int, default=400)
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(run=cmd_rossler)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    start = time.perf_counter()
    try:
        report = args.run(args, Caps.from_env())
    except NervusError as exc:
        print(f"nervus: error: {exc}", file=sys.stderr)
        return exc.exit_code
    if report is not None:
        if args.timing:
            report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
        sys.stdout.write(nio.dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
