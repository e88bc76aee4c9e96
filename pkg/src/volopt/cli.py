"""Command-line interface.

Exit codes: 0 ok, 2 input error, 3 unsupported query, 4 numerical failure.
Finite pairs are addressed by their death index, which is unique; birth/death
values may collide.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys


from . import alpha, mergetree, reduction, simplicial, volumes

log = logging.getLogger("volopt")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_NUMERICAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _write_json(payload, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_filtration(path: str) -> simplicial.Filtration:
    try:
        return simplicial.read_filt(path)
    except (OSError, simplicial.FiltrationError, ValueError) as e:
        raise CliError(f"cannot read filtration {path}: {e}", EXIT_INPUT)


def cmd_build_alpha(args) -> int:
    try:
        pc = alpha.load_points(args.points, weighted=args.weighted)
    except (OSError, ValueError) as e:
        raise CliError(f"cannot read points {args.points}: {e}", EXIT_INPUT)
    if args.jitter_seed is not None:
        pc = pc.jittered(args.jitter_seed)
    try:
        f = alpha.build_alpha_filtration(pc, method=args.method)
    except alpha.DegeneracyError as e:
        raise CliError(f"degenerate input: {e}", EXIT_INPUT)
    simplicial.write_filt(f, args.output)
    counts = {int(q): int((f.dims == q).sum()) for q in range(f.max_dim() + 1)}
    print(f"wrote {args.output}: {len(f)} simplices " +
          " ".join(f"dim{q}={c}" for q, c in counts.items()))
    return EXIT_OK


def _diagram_payload(f, q: int, engine: str, include_zero: bool) -> dict:
    n = f.ambient_dim
    if engine == "auto":
        engine = "mergetree" if (q == n - 1 and not mergetree.sweep_condition_report(f)) else "reduction"
    if engine == "mergetree":
        if q != n - 1:
            raise CliError(f"mergetree engine only computes degree {n - 1}", EXIT_UNSUPPORTED)
        problems = mergetree.sweep_condition_report(f)
        if problems:
            raise CliError("mergetree preconditions fail: " + problems[0], EXIT_UNSUPPORTED)
        forest = mergetree.compute_forest(f)
        pairs = mergetree.diagram_from_forest(forest, include_zero=include_zero)
        payload = {"degree": q, "pairs": [p.to_json() for p in pairs]}
    else:
        payload = reduction.diagram_json(f, q, include_zero=include_zero)
    payload["engine"] = engine
    return payload


def cmd_pd(args) -> int:
    f = _load_filtration(args.filtration)
    payload = _diagram_payload(f, args.degree, args.engine, args.include_zero)
    _write_json(payload, args.output)
    return EXIT_OK


def _pair_by_birth(f, red, birth_index: int, degree: int | None):
    degrees = [degree] if degree is not None else range(f.max_dim() + 1)
    for q in degrees:
        for p in reduction.diagram(f, q, red, include_zero=True):
            if p.birth_index == birth_index:
                return p
    raise CliError(f"no pair born at index {birth_index}", EXIT_INPUT)


def cmd_volume(args) -> int:
    f = _load_filtration(args.filtration)
    red = reduction.reduce(f)
    if args.death_index is not None:
        try:
            pair = reduction.find_pair(f, red, args.death_index)
        except KeyError as e:
            raise CliError(str(e), EXIT_INPUT)
    else:
        pair = _pair_by_birth(f, red, args.birth_index, args.degree)
    full = reduction.diagram(f, pair.degree, red, include_zero=True)
    try:
        ov = volumes.optimal_volume(f, pair, radius=args.radius, eps=args.eps, full_diagram=full)
    except volumes.UnsupportedPairError as e:
        raise CliError(str(e), EXIT_UNSUPPORTED)
    except volumes.VolumeInternalError as e:
        raise CliError(str(e), EXIT_NUMERICAL)
    _write_json(ov.to_json(f), args.output)
    if args.off:
        _write_off(f, ov, args.off)
    return EXIT_OK


def _write_off(f, ov: volumes.OptimalVolume, path: str) -> None:
    """Cycle and volume simplices as an OFF polygon soup for external viewers."""
    if f.vertex_coords is None:
        raise CliError("filtration carries no coordinates; cannot export OFF", EXIT_INPUT)
    used = sorted({v for k in list(ov.cycle.terms) + list(ov.volume.terms)
                   for v in f.simplex(k)})
    row = {v: i for i, v in enumerate(used)}
    polys = [f.simplex(k) for k in sorted(ov.cycle.terms)] + \
            [f.simplex(k) for k in sorted(ov.volume.terms)]
    with open(path, "w") as fh:
        fh.write("OFF\n")
        fh.write(f"{len(used)} {len(polys)} 0\n")
        for vid in used:
            coords = list(f.vertex_coords[vid])
            coords += [0.0] * (3 - len(coords))
            fh.write(" ".join(f"{c:.17g}" for c in coords) + "\n")
        for p in polys:
            fh.write(f"{len(p)} " + " ".join(str(row[v]) for v in p) + "\n")


def cmd_tree(args) -> int:
    f = _load_filtration(args.filtration)
    problems = mergetree.sweep_condition_report(f)
    if problems:
        raise CliError("not a codimension-one sweepable complex: " + problems[0], EXIT_UNSUPPORTED)
    forest = mergetree.compute_forest(f)
    _write_json(forest.to_json(include_zero=args.include_zero), args.output)
    return EXIT_OK


def cmd_oc(args) -> int:
    f = _load_filtration(args.filtration)
    red = reduction.reduce(f)
    if args.death_index is not None:
        try:
            pair = reduction.find_pair(f, red, args.death_index)
        except KeyError as e:
            raise CliError(str(e), EXIT_INPUT)
    else:
        pair = _pair_by_birth(f, red, args.birth_index, args.degree)
    try:
        chain = volumes.optimal_cycle(f, pair)
    except volumes.VolumeInternalError as e:
        raise CliError(str(e), EXIT_NUMERICAL)
    payload = {
        "pair": pair.to_json(),
        "cycle": [{"index": k, "vertices": list(f.simplex(k)), "coefficient": c}
                  for k, c in sorted(chain.terms.items())],
        "objective": float(sum(abs(c) for c in chain.terms.values())),
    }
    _write_json(payload, args.output)
    return EXIT_OK


def _default_ui_dir() -> str | None:
    from pathlib import Path

    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return str(candidate) if (candidate / "index.html").is_file() else None


def cmd_serve(args) -> int:
    from .service import serve

    f = _load_filtration(args.filtration)
    ui_dir = args.ui_dir if args.ui_dir is not None else _default_ui_dir()
    if ui_dir:
        log.info("viewer at /ui from %s", ui_dir)
    serve(f, host=args.host, port=args.port, ui_dir=ui_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="volopt",
                                 description="persistence diagrams and volume optimal cycles")
    ap.add_argument("--log-level", default="warning",
                    choices=["debug", "info", "warning", "error"])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-alpha", help="point cloud -> FILT filtration file")
    p.add_argument("points")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--weighted", action="store_true", help="last column is a weight")
    p.add_argument("--jitter-seed", type=int, default=None,
                   help="perturb points to break degeneracies, deterministically")
    p.add_argument("--method", default="auto", choices=["auto", "brute", "scipy"])
    p.set_defaults(func=cmd_build_alpha)

    p = sub.add_parser("pd", help="persistence diagram")
    p.add_argument("filtration")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--engine", default="auto", choices=["auto", "reduction", "mergetree"])
    p.add_argument("--include-zero", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("volume", help="optimal volume of a finite pair")
    p.add_argument("filtration")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--death-index", type=int)
    g.add_argument("--birth-index", type=int,
                   help="address a pair by its birth instead (rejects essential ones)")
    p.add_argument("--degree", type=int, default=None,
                   help="degree filter when addressing by birth index")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--eps", type=float, default=volumes.EPS_DEFAULT)
    p.add_argument("--off", help="also write the cycle+volume as an OFF mesh")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("tree", help="persistence tree of the top degree")
    p.add_argument("filtration")
    p.add_argument("--include-zero", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("oc", help="optimal cycle of a pair")
    p.add_argument("filtration")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--death-index", type=int)
    g.add_argument("--birth-index", type=int, help="for essential pairs")
    p.add_argument("--degree", type=int, default=None,
                   help="degree filter when addressing by birth index")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oc)

    p = sub.add_parser("serve", help="local read-only JSON service")
    p.add_argument("filtration")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("VOLOPT_PORT", "8793")))
    p.add_argument("--ui-dir", default=None, help="static viewer directory served at /ui")
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper())
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
