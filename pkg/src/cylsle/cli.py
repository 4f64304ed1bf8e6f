"""Command-line front end.

Subcommands: eval (scalar function values), curve (CSV curve data),
mc (SDE / lattice Monte Carlo with closed-form oracle comparison),
specdet (lattice spectral determinant report), crosscheck (half-plane vs
cylinder transport identity).

Every emitted record embeds the full parameter set needed to reproduce it;
JSON reports carry ``schema: 1``.  Exit codes: 0 success, 1 usage/config
error, 2 domain error, 3 precision failure, 4 partial Monte Carlo result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from ._engine import IMPLEMENTATION
from .precision import DomainError, PartialResultError, PrecisionError, TWO_PI
from .special import dedekind_eta, v_field, v_prime
from .kernels import excursion_kernel, partition_function
from .passage import (
    HalfPlanePoint,
    SideArc,
    lambda_density,
    left_passage,
    left_passage_arc,
    omega_big,
    schramm_half_plane,
)
from .geometry import schramm_cylinder_crosscheck
from .lattice import LatticeDomain
from .sle_mc import SdeRunConfig, simulate_passage
from .lerw_mc import LerwConfig, sample_lerw
from .spectral import CATALAN, regularize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_PRECISION = 3
EXIT_PARTIAL = 4


@dataclass
class OutputRecord:
    """A rendered result plus where it goes; metadata makes it reproducible."""

    format: str  # "csv" | "json" | "text"
    destination: str | None
    metadata: dict
    body: str

    def write(self) -> None:
        if self.destination:
            with open(self.destination, "w", encoding="utf-8") as fh:
                fh.write(self.body)
        else:
            sys.stdout.write(self.body)


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _sanitize(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else repr(obj)
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _json_record(payload: dict, metadata: dict, out: str | None) -> OutputRecord:
    doc = {"schema": 1, "version": __version__, **payload, "metadata": metadata}
    return OutputRecord("json", out, metadata, json.dumps(_sanitize(doc), indent=2) + "\n")


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _eval_value(args) -> float:
    fn = args.function
    if fn == "v":
        return float(v_field(args.x, args.p))
    if fn == "vprime":
        return float(v_prime(args.x, args.p))
    if fn == "H":
        return excursion_kernel(args.x, args.p).value
    if fn == "omega":
        return omega_big(args.x, args.p)
    if fn == "varpi":
        return left_passage(args.x, args.p)
    if fn == "lambda":
        return lambda_density(args.x, args.p)
    if fn == "pi_arc":
        if args.a is None or args.b is None:
            raise DomainError("pi_arc needs --a and --b")
        return left_passage_arc(SideArc(args.a, args.b), args.p)
    if fn == "schramm":
        if args.x is None or args.y is None:
            raise DomainError("schramm needs --x and --y (point x + i y)")
        return schramm_half_plane(HalfPlanePoint(args.x, args.y), args.kappa)
    if fn == "Z":
        return partition_function(args.p)
    if fn == "eta":
        return dedekind_eta(args.p)
    raise DomainError(f"unknown function {fn!r}")


def _cmd_eval(args) -> OutputRecord:
    needs_x = args.function in ("v", "vprime", "H", "omega", "varpi", "lambda")
    if needs_x and args.x is None:
        raise DomainError(f"{args.function} needs --x")
    needs_p = args.function != "schramm"
    if needs_p and args.p is None:
        raise DomainError(f"{args.function} needs --p")
    value = _eval_value(args)
    meta = {
        "command": "eval",
        "function": args.function,
        "x": args.x,
        "y": args.y,
        "p": args.p,
        "a": args.a,
        "b": args.b,
        "kappa": args.kappa,
    }
    if args.format == "json":
        return _json_record({"value": value}, meta, args.out)
    return OutputRecord("text", args.out, meta, f"{value!r}\n")


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------

def _cmd_curve(args) -> OutputRecord:
    p_list = [(_parse_p(t)) for t in args.p.split(",")] if args.p else []
    if not p_list:
        raise DomainError("curve needs a nonempty --p list")
    if args.grid_n < 2:
        raise DomainError("grid-n must be >= 2")
    meta = {
        "command": "curve",
        "kind": args.kind,
        "p_list": p_list,
        "grid_n": args.grid_n,
        "version": __version__,
    }
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}={val}\n")
    writer = csv.writer(buf, lineterminator="\n")

    def p_label(p):
        return "inf" if math.isinf(p) else f"{p:g}"

    if args.kind == "varpi_vs_x":
        xs = [TWO_PI * i / (args.grid_n - 1) for i in range(args.grid_n)]
        writer.writerow(["x"] + [f"varpi_p_{p_label(p)}" for p in p_list]
                        + ["asymptote_p0", "asymptote_pinf"])
        for x in xs:
            step = 0.5 if x == math.pi else float(x > math.pi)
            row = [repr(x)]
            row += [repr(left_passage(x, p)) for p in p_list]
            row += [repr(step), repr((x - math.sin(x)) / TWO_PI)]
            writer.writerow(row)
    elif args.kind == "pi_vs_x":
        a = math.pi / 2
        xs = [a + (TWO_PI - a) * i / args.grid_n for i in range(args.grid_n)]
        writer.writerow(["x"] + [f"pi_arc_p_{p_label(p)}" for p in p_list]
                        + ["asymptote_p0", "asymptote_pinf"])
        for x in xs:
            if x <= a:
                vals = [left_passage(a, p) for p in p_list]
                v_inf = (a - math.sin(a)) / TWO_PI
            else:
                arc = SideArc(a, x)
                vals = [left_passage_arc(arc, p) for p in p_list]
                v_inf = left_passage_arc(arc, math.inf)
            # exit point concentrates at the endpoint nearer a lift of 0:
            # mass switches from a to x when x passes 2*pi - a
            step = 0.5 if x == TWO_PI - a else float(x > TWO_PI - a)
            writer.writerow([repr(x)] + [repr(t) for t in vals]
                            + [repr(step), repr(v_inf)])
    else:
        raise DomainError(f"unknown curve kind {args.kind!r}")
    return OutputRecord("csv", args.out, meta, buf.getvalue())


# ---------------------------------------------------------------------------
# mc
# ---------------------------------------------------------------------------

def _cmd_mc(args) -> OutputRecord:
    t0 = time.perf_counter()
    if args.engine == "sle":
        if args.x is None or args.p is None:
            raise DomainError("mc sle needs --x and --p")
        cfg = SdeRunConfig(
            n_samples=args.n,
            seed=args.seed,
            dt_max=args.dt_max,
            workers=args.threads,
        )
        est = simulate_passage(args.x, args.p, cfg)
        oracle = left_passage(args.x, args.p)
        params = {
            "x": args.x,
            "p": args.p,
            "n": args.n,
            "seed": args.seed,
            "threads": args.threads,
            "dt_max": args.dt_max,
            "absorb_eps": cfg.absorb_eps,
            "time_eps": cfg.time_eps,
            "dt_boundary_factor": cfg.dt_boundary_factor,
        }
    elif args.engine == "lerw":
        if args.M is None or args.L is None or args.target is None:
            raise DomainError("mc lerw needs --M, --L and --target")
        dom = LatticeDomain(args.M, args.L)
        cfg = LerwConfig(
            n_samples=args.n,
            seed=args.seed,
            max_attempts_per_sample=args.budget,
            workers=args.threads,
        )
        est = sample_lerw(dom, args.target, cfg)
        oracle = left_passage(TWO_PI * args.target / args.M, dom.p)
        params = {
            "M": args.M,
            "L": args.L,
            "target": args.target,
            "p": dom.p,
            "n": args.n,
            "seed": args.seed,
            "threads": args.threads,
            "budget_per_sample": args.budget,
        }
    else:
        raise DomainError(f"unknown mc engine {args.engine!r}")
    elapsed = time.perf_counter() - t0
    z = (est.mean - oracle) / est.stderr if est.stderr > 0 else None
    payload = {
        "engine": args.engine,
        "implementation": IMPLEMENTATION,
        "estimate": est.mean,
        "stderr": est.stderr,
        "n": est.n,
        "n_left": est.n_left,
        "n_unresolved": est.n_unresolved,
        "quality_flagged": est.flagged,
        "oracle": oracle,
        "z_score": z,
        "timing_s": elapsed,
    }
    return _json_record(payload, {"command": "mc", **params}, args.out)


# ---------------------------------------------------------------------------
# specdet / crosscheck
# ---------------------------------------------------------------------------

def _cmd_specdet(args) -> OutputRecord:
    dom = LatticeDomain(args.M, args.L)
    rep = regularize(dom)
    payload = {
        "log_det": rep.log_det,
        "bulk_term": rep.bulk_term,
        "surface_term": rep.surface_term,
        "regularized": rep.regularized,
        "eta_target": rep.eta_target,
        "discrepancy": rep.discrepancy,
        "constants": {"catalan": CATALAN},
    }
    meta = {"command": "specdet", "M": args.M, "L": args.L, "p": dom.p}
    return _json_record(payload, meta, args.out)


def _cmd_crosscheck(args) -> OutputRecord:
    if args.x is None:
        raise DomainError("crosscheck needs --x")
    p_half, p_cyl = schramm_cylinder_crosscheck(args.x)
    payload = {
        "p_half_plane": p_half,
        "p_cylinder": p_cyl,
        "abs_diff": abs(p_half - p_cyl),
    }
    return _json_record(payload, {"command": "crosscheck", "x": args.x}, args.out)


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cylsle", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one analytic function")
    pe.add_argument("function", choices=[
        "v", "vprime", "H", "omega", "varpi", "lambda", "pi_arc", "schramm",
        "Z", "eta",
    ])
    pe.add_argument("--x", type=float)
    pe.add_argument("--y", type=float, help="imaginary part for schramm")
    pe.add_argument("--p", type=_parse_p, help="modulus; 'inf' allowed")
    pe.add_argument("--a", type=float)
    pe.add_argument("--b", type=float)
    pe.add_argument("--kappa", type=float, default=2.0)
    pe.add_argument("--tol", type=float, default=None, help="unused placeholder for symmetry")
    pe.add_argument("--format", choices=["text", "json"], default="text")
    pe.add_argument("--out", default=None)
    pe.set_defaults(run=_cmd_eval)

    pc = sub.add_parser("curve", help="emit curve data as CSV")
    pc.add_argument("kind", choices=["varpi_vs_x", "pi_vs_x"])
    pc.add_argument("--p", required=True, help="comma-separated moduli, 'inf' allowed")
    pc.add_argument("--grid-n", type=int, default=513)
    pc.add_argument("--out", default=None)
    pc.set_defaults(run=_cmd_curve)

    pm = sub.add_parser("mc", help="run a Monte Carlo engine against the closed form")
    pm.add_argument("engine", choices=["sle", "lerw"])
    pm.add_argument("--x", type=float)
    pm.add_argument("--p", type=_parse_p)
    pm.add_argument("--M", type=int)
    pm.add_argument("--L", type=int)
    pm.add_argument("--target", type=int)
    pm.add_argument("--n", type=int, default=10000)
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--threads", type=int, default=1)
    pm.add_argument("--dt-max", type=float, default=1e-3)
    pm.add_argument("--budget", type=int, default=10_000_000,
                    help="lerw step budget per accepted sample")
    pm.add_argument("--out", default=None)
    pm.set_defaults(run=_cmd_mc)

    ps = sub.add_parser("specdet", help="lattice spectral determinant report")
    ps.add_argument("--M", type=int, required=True)
    ps.add_argument("--L", type=int, required=True)
    ps.add_argument("--out", default=None)
    ps.set_defaults(run=_cmd_specdet)

    px = sub.add_parser("crosscheck", help="half-plane vs cylinder transport check")
    px.add_argument("--x", type=float, required=True)
    px.add_argument("--out", default=None)
    px.set_defaults(run=_cmd_crosscheck)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        record = args.run(args)
        record.write()
        return EXIT_OK
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except PartialResultError as exc:
        est = exc.estimate
        print(f"partial result: {exc}", file=sys.stderr)
        if est is not None:
            print(json.dumps({
                "schema": 1,
                "partial": True,
                "estimate": est.mean,
                "stderr": est.stderr,
                "n": est.n,
            }), file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
