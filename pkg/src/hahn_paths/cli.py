"""Batch command-line interface: enumerate, kernel, sample, limit, render.

Outputs are machine-readable (JSON/CSV/SVG), deterministic for a fixed
(config, seed), and written atomically.  Exit codes: 0 ok, 2 input or
feasibility problem, 3 resource limit, 4 mathematical boundary signal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .bulk import (
    LimitRegime,
    convergence_probe,
    ellipse_classify,
    limit_params,
    particle_hole_duality_residual,
    sine_kernel_static,
)
from .combinatorics import (
    Configuration,
    ModelParams,
    enumerate_path_families,
    oracle_correlation,
)
from .errors import (
    BoundaryRegimeError,
    EnumerationCapExceeded,
    GaugeSingularError,
    PoleOnContourError,
    SamplerSizeError,
)
from .hahn import EXACT, FLOAT, slice_basis
from .kernels import CorrelationQuery, KernelMatrix, static_kernel
from .process import Trajectory, sample_trajectory
from .render import STYLES, render_svg

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_BOUNDARY = 4


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hahn-paths-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def _number(value, exact: bool) -> object:
    """Numeric JSON field; exact mode carries decimal and rational strings."""
    if exact and isinstance(value, (Fraction, int)):
        frac = Fraction(value)
        return {"decimal": float(frac), "rational": f"{frac.numerator}/{frac.denominator}"}
    return float(value)


def _parse_ints(text: str, n: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"{what} needs {n} comma-separated values, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_query(text: str | None) -> list[tuple[int, int]]:
    if not text:
        return []
    points = []
    for chunk in text.split(","):
        x, _, t = chunk.partition(":")
        points.append((int(x), int(t)))
    return points


def _parse_offsets(text: str | None) -> list[tuple[int, int]]:
    if not text:
        return [(dx, dt) for dx in range(-3, 4) for dt in range(-2, 3)]
    offsets = []
    for chunk in text.split(","):
        dx, _, dt = chunk.partition(":")
        offsets.append((int(dx), int(dt)))
    return offsets


def _resolve_model(args) -> ModelParams:
    if (args.model is None) == (args.hexagon is None):
        raise ValueError("exactly one of --model N,S,T or --hexagon a,b,c is required")
    if args.model is not None:
        n, s, t = _parse_ints(args.model, 3, "--model")
        return ModelParams(n, s, t)
    a, b, c = _parse_ints(args.hexagon, 3, "--hexagon")
    if a < 1 or b < 0 or c < 0:
        raise ValueError(f"hexagon sides out of range: {a},{b},{c}")
    model = ModelParams(a, b, b + c)
    swapped = ModelParams(a, c, b + c)
    if model.family_count() != swapped.family_count():
        raise AssertionError("hexagon side mapping lost its b/c symmetry")
    return model


def _model_json(model: ModelParams) -> dict:
    return {"N": model.N, "S": model.S, "T": model.T}


def _trajectory_to_runs(traj: Trajectory) -> list[str]:
    runs = []
    for i in range(traj.model.N):
        moves = traj.moves(i)
        encoded = []
        pos = 0
        while pos < len(moves):
            end = pos
            while end < len(moves) and moves[end] == moves[pos]:
                end += 1
            encoded.append(f"{end - pos}{'U' if moves[pos] else 'F'}")
            pos = end
        runs.append("".join(encoded))
    return runs


def _runs_to_trajectory(model: ModelParams, runs: list[str]) -> Trajectory:
    import re

    moves = []
    for text in runs:
        seq: list[int] = []
        for count, letter in re.findall(r"(\d+)([FU])", text):
            seq.extend([1 if letter == "U" else 0] * int(count))
        moves.append(tuple(seq))
    configs = []
    for t in range(model.T + 1):
        configs.append(
            Configuration(t, tuple(i + sum(moves[i][:t]) for i in range(model.N)))
        )
    return Trajectory(model, tuple(configs))


def cmd_enumerate(args) -> int:
    model = _resolve_model(args)
    exact = args.mode == "exact"
    families = enumerate_path_families(model)
    marginals = {}
    for t in range(model.T + 1):
        counts: dict[int, int] = {}
        for fam in families:
            for x in fam.configuration(t).positions:
                counts[x] = counts.get(x, 0) + 1
        marginals[str(t)] = {
            str(x): _number(Fraction(c, len(families)), exact)
            for x, c in sorted(counts.items())
        }
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "enumerate",
        "model": _model_json(model),
        "mode": args.mode,
        "family_count": len(families),
        "slice_marginals": marginals,
    }
    query = _parse_query(args.query)
    if query:
        report["query"] = [{"x": x, "t": t} for x, t in query]
        report["oracle_correlation"] = _number(oracle_correlation(model, query), exact)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_kernel(args) -> int:
    model = _resolve_model(args)
    exact = args.mode == "exact"
    backend = EXACT if exact else FLOAT
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "kernel",
        "model": _model_json(model),
        "mode": args.mode,
    }
    csv_lines: list[str] = []
    if args.static_t is not None:
        t = args.static_t
        support = list(slice_basis(model, t).support)
        matrix = [[static_kernel(model, t, x, y) for y in support] for x in support]
        report["static_t"] = t
        report["static_support"] = support
        report["static_kernel"] = [[float(v) for v in row] for row in matrix]
        report["static_trace"] = _number(
            sum((matrix[i][i].as_rational() for i in range(len(support))), Fraction(0)),
            exact,
        )
        csv_lines.append("x\\y," + ",".join(str(y) for y in support))
        for x, row in zip(support, matrix):
            csv_lines.append(f"{x}," + ",".join(repr(float(v)) for v in row))
    query = _parse_query(args.query)
    if query:
        kmatrix = KernelMatrix.build(model, CorrelationQuery(tuple(query)), backend)
        det = kmatrix.determinant()
        report["query"] = [{"x": x, "t": t} for x, t in query]
        report["kernel_matrix"] = [[float(v) for v in row] for row in kmatrix.entries]
        if exact:
            report["kernel_matrix_exact"] = [
                [{"coeff": str(v.coeff), "radicand": str(v.radicand)} for v in row]
                for row in kmatrix.entries
            ]
        report["correlation"] = _number(det, exact)
        if not exact:
            rep = kmatrix.determinant_report()
            report["conditioning"] = {
                "min_pivot": rep.min_pivot,
                "max_pivot": rep.max_pivot,
                "condition_hint": rep.condition_hint,
            }
    elif args.query is not None:
        report["correlation"] = _number(Fraction(1), exact)
    if args.format == "csv":
        if not csv_lines:
            raise ValueError("csv output needs --static-t")
        _emit("\n".join(csv_lines) + "\n", args.out)
    else:
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    model = _resolve_model(args)
    if args.out is None:
        raise ValueError("--out is required for sample (it writes two files)")
    n = args.samples
    counts: dict[int, dict[int, int]] = {t: {} for t in range(model.T + 1)}
    records = []
    for k in range(n):
        traj = sample_trajectory(model, seed=args.seed + k)
        records.append({"paths": _trajectory_to_runs(traj)})
        for t in range(model.T + 1):
            for x in traj.configurations[t].positions:
                counts[t][x] = counts[t].get(x, 0) + 1
    traj_path = args.out + ".trajectories.json"
    traj_doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "sample",
        "model": _model_json(model),
        "seed": args.seed,
        "count": n,
        "trajectories": records,
    }
    _atomic_write(traj_path, json.dumps(traj_doc, indent=2, sort_keys=True) + "\n")
    summary = {
        "schema_version": SCHEMA_VERSION,
        "command": "sample",
        "model": _model_json(model),
        "mode": args.mode,
        "seed": args.seed,
        "samples": n,
        "trajectory_file": traj_path,
        "empirical_density": {
            str(t): {str(x): c / n for x, c in sorted(cs.items())}
            for t, cs in counts.items()
        },
    }
    _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_limit(args) -> int:
    values = [float(v) for v in args.regime.split(",")]
    if len(values) != 5:
        raise ValueError(f"--regime needs N,S,T,t,x, got {args.regime!r}")
    regime = LimitRegime(*values)
    params = limit_params(regime)
    region = ellipse_classify(regime)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "limit",
        "regime": {
            "N": regime.Ntilde,
            "S": regime.Stilde,
            "T": regime.Ttilde,
            "t": regime.ttilde,
            "x": regime.xtilde,
        },
        "c": params.c,
        "phi": params.phi,
        "density": params.density,
        "region": region.value,
        "sine_kernel": {
            str(d): sine_kernel_static(params.phi, d)
            for d in range(-args.dmax, args.dmax + 1)
        },
    }
    residuals = {}
    for dx in range(-2, 3):
        for dt in (-2, 0, 2):
            try:
                residuals[f"{dx}:{dt}"] = particle_hole_duality_residual(params, dx, dt)
            except PoleOnContourError:
                residuals[f"{dx}:{dt}"] = None
    report["duality_residuals"] = residuals
    if args.rhos:
        rhos = [float(r) for r in args.rhos.split(",")]
        offsets = _parse_offsets(args.offsets)
        table = convergence_probe(regime, offsets, rhos)
        report["convergence"] = [
            {
                "rho": row.rho,
                "model": _model_json(row.model),
                "t": row.t_base,
                "x": row.x_base,
                "x_repair": row.x_repair,
                "max_error": row.max_error,
                "cells": {
                    f"{dx}:{dt}": {"prelimit": cell.prelimit, "limit": cell.limit}
                    for (dx, dt), cell in ((c.offset, c) for c in row.cells)
                },
            }
            for row in table.rows
        ]
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    with open(args.trajectory) as handle:
        doc = json.load(handle)
    model = ModelParams(doc["model"]["N"], doc["model"]["S"], doc["model"]["T"])
    records = doc["trajectories"]
    if not 0 <= args.index < len(records):
        raise ValueError(f"trajectory index {args.index} outside 0..{len(records) - 1}")
    traj = _runs_to_trajectory(model, records[args.index]["paths"])
    _emit(render_svg(traj, args.style), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hahn-paths",
        description="Non-intersecting lattice paths in a hexagon: exact laws, kernels, limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model: bool = True):
        if model:
            p.add_argument("--model", help="N,S,T path-model parameters")
            p.add_argument("--hexagon", help="a,b,c hexagon sides (maps to N=a, S=b, T=b+c)")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    p = sub.add_parser("enumerate", help="exact counts, marginals, oracle correlations")
    add_common(p)
    p.add_argument("--query", help='space-time points "x:t,x:t,..."')
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("kernel", help="kernel values and correlation determinants")
    add_common(p)
    p.add_argument("--query", help='space-time points "x:t,x:t,..."')
    p.add_argument("--static-t", type=int, help="emit the static kernel matrix at this time")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("sample", help="draw trajectories and empirical densities")
    add_common(p)
    p.add_argument("--samples", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("limit", help="bulk-limit kernel, frozen regions, convergence")
    add_common(p, model=False)
    p.add_argument("--regime", required=True, help='macroscopic "N,S,T,t,x"')
    p.add_argument("--rhos", help='scales "20,40,80" for the convergence table')
    p.add_argument("--offsets", help='offsets "dx:dt,..." (default |dx|<=3, |dt|<=2)')
    p.add_argument("--dmax", type=int, default=5, help="sine-kernel table half-width")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("render", help="SVG picture of one sampled trajectory")
    add_common(p)
    p.add_argument("--trajectory", required=True, help="trajectory file from `sample`")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--style", choices=STYLES, default="rhombi")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SamplerSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (BoundaryRegimeError, PoleOnContourError, GaugeSingularError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY


if __name__ == "__main__":
    sys.exit(main())
