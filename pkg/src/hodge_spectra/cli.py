"""Command line entry point: ``hodge-spectra mesh|spectrum|experiment``.

Exit codes: 0 all checks pass, 1 a check failed or the input was invalid,
2 an experiment was inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complex import betti, build_sphere, build_torus
from .eigensolve import SpectrumError, full_spectrum
from .experiments import EXPERIMENTS, ConfigError, ExperimentConfig, default_config, run
from .metric import MetricError, RadialProfile, apply_conformal, cigar_factor_field, flat_metric, graded_torus


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _mesh(args):
    if args.kind == "torus":
        K = build_torus(args.n, args.cells, args.side / args.cells)
    else:
        K = build_sphere(args.n, args.level)
    return K


def _metric(K, args):
    g = flat_metric(K)
    if args.cigar_L is None:
        return K, g
    if args.kind != "torus":
        raise MetricError("--cigar-L needs a torus mesh")
    center = tuple(_floats(args.center)) if args.center else (args.side / 2,) * K.n
    P = RadialProfile(args.cigar_L, center)
    if not args.no_grading:
        K = graded_torus(K, P)
        g = flat_metric(K)
    return K, apply_conformal(g, cigar_factor_field(K, P))


def _add_mesh_args(sub):
    sub.add_argument("--kind", choices=("torus", "sphere"), default="torus")
    sub.add_argument("--n", type=int, default=2, help="dimension")
    sub.add_argument("--cells", type=int, default=8, help="cells per axis (torus)")
    sub.add_argument("--side", type=float, default=1.0, help="total torus side length")
    sub.add_argument("--level", type=int, default=2, help="subdivision level (sphere)")
    sub.add_argument("--cigar-L", dest="cigar_L", type=float, default=None)
    sub.add_argument("--center", default=None, help="comma-separated cigar centre")
    sub.add_argument("--no-grading", action="store_true")
    sub.add_argument("--out", default=None, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodge-spectra", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    mesh = subs.add_parser("mesh", help="build a mesh, print counts and Betti numbers")
    _add_mesh_args(mesh)

    spec = subs.add_parser("spectrum", help="compute a p-form spectrum table")
    _add_mesh_args(spec)
    spec.add_argument("--p", type=int, default=0)
    spec.add_argument("--count", type=int, default=6)
    spec.add_argument("--method", default="auto", choices=("auto", "dense", "sparse", "iterative"))
    spec.add_argument("--seed", type=int, default=0)

    exp = subs.add_parser("experiment", help="run an experiment from a JSON config")
    exp.add_argument("name", choices=EXPERIMENTS)
    exp.add_argument("--config", default=None, help="config JSON (defaults to the shipped one)")
    exp.add_argument("--out", default=None, help="output directory for CSV and JSON")
    exp.add_argument("--cigar-L", dest="cigar_L", default=None, help="comma-separated L schedule override")
    exp.add_argument("--center", default=None, help="comma-separated cigar centre override")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "mesh":
            K, g = _metric(_mesh(args), args)
            doc = {"n": K.n, "counts": [K.count(p) for p in range(K.n + 1)], "betti": list(betti(K))}
            print(json.dumps(doc))
            if args.out:
                out = Path(args.out)
                out.mkdir(parents=True, exist_ok=True)
                (out / "mesh.json").write_text(json.dumps(K.to_json()))
                g.save(out / "metric.json")
            return 0
        if args.command == "spectrum":
            K, g = _metric(_mesh(args), args)
            table = full_spectrum(K, g, args.p, args.count, method=args.method, seed=args.seed)
            text = table.to_csv()
            sys.stdout.write(text)
            if args.out:
                out = Path(args.out)
                out.mkdir(parents=True, exist_ok=True)
                (out / f"spectrum_p{args.p}.csv").write_text(text)
                (out / f"spectrum_p{args.p}.json").write_text(table.to_json())
            return 0
        overrides = {}
        if args.cigar_L:
            overrides["L_schedule"] = _floats(args.cigar_L)
        if args.center:
            overrides["center"] = _floats(args.center)
        if args.config:
            doc = json.loads(Path(args.config).read_text())
            doc.update(overrides)
            cfg = ExperimentConfig.from_dict(doc)
            if cfg.name != args.name:
                raise ConfigError(f"config is for {cfg.name!r}, not {args.name!r}")
        else:
            cfg = default_config(args.name, **overrides)
        result = run(cfg)
        for line in result.lines():
            print(line)
        out = args.out or cfg.output
        if out:
            result.write(out)
        return result.exit_code
    except (ConfigError, MetricError, SpectrumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
