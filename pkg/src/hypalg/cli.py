"""Command-line front end: ``hypalg {verify,idempotents,solve,cr-check,taylor}``.

Every subcommand builds one document (a dict).  ``--format machine`` prints it
as canonical JSON; ``--format human`` prints a text rendering of the same data.
Exit status: 0 success, 1 mathematical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .algebra import (TOL_AXIOM, AlgebraTable, eval_poly, parse_algebra,
                      parse_element, verify_algebra)
from .errors import HypalgError, ParseError, SpectralError
from .fixtures import fixture_path, load_fixture
from .holomorphy import check_cauchy_riemann, conjugation, taylor_eval
from .polysolve import SolveOptions, _scalar_out, parse_polynomial, solve
from .spectral import (TOL_IDEM, IdempotentSystem, SpectralConfig, find_idempotent_system,
                       format_idempotents, parse_idempotents, verify_idempotent_system)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SEED_ENV = "HYPALG_SEED"
U64_MAX = 2**64 - 1


class InputError(Exception):
    pass


# -- argument types -------------------------------------------------------------

def _u64(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer, got {text!r}") from None
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed out of range [0, 2^64-1]: {text}")
    return v


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be nonnegative, got {text}")
    return v


def _pos_float(text: str) -> float:
    v = _nonneg_float(text)
    if v == 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return v


def _pos_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"value must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"value must be >= 0, got {v}")
    return v


def default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return _u64(env)
    except argparse.ArgumentTypeError as exc:
        raise InputError(f"{SEED_ENV}: {exc}") from None


# -- input loading ----------------------------------------------------------------

def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_algebra(source: str) -> AlgebraTable:
    """A file path, or the name of a bundled fixture such as ``bicomplex``."""
    if Path(source).is_file():
        return parse_algebra(_read(source), source=source)
    if fixture_path(source).is_file():
        return load_fixture(source)
    raise InputError(f"algebra file not found: {source}")


def _load_system(args, table: AlgebraTable) -> IdempotentSystem | None:
    if args.idempotents is None:
        return None
    return parse_idempotents(_read(args.idempotents), table, source=args.idempotents)


def _seed_config(args, tol_idem: float = TOL_IDEM) -> SpectralConfig:
    return SpectralConfig(seed=args.seed, tol_idem=tol_idem)


def _elements(table: AlgebraTable, rows) -> list:
    return [[_scalar_out(x, table.is_complex) for x in row] for row in rows]


def _algebra_info(table: AlgebraTable, source: str) -> dict:
    return {"source": source, "field": table.field.value, "dim": table.dim,
            "basis": list(table.basis_names)}


def _error(exc: Exception) -> dict:
    return {"kind": type(exc).__name__, "message": str(exc)}


# -- subcommands ------------------------------------------------------------------

def cmd_verify(args) -> tuple[dict, int]:
    table = load_algebra(args.algebra)
    tol = TOL_AXIOM if args.tol is None else args.tol
    report = verify_algebra(table, tol)
    doc = {"command": "verify", "algebra": _algebra_info(table, args.algebra),
           "report": report.as_dict()}
    return doc, EXIT_OK if report.passed else EXIT_FAIL


def cmd_idempotents(args) -> tuple[dict, int]:
    table = load_algebra(args.algebra)
    tol = TOL_IDEM if args.tol is None else args.tol
    user = _load_system(args, table)
    doc = {"command": "idempotents", "algebra": _algebra_info(table, args.algebra), "seed": args.seed}
    try:
        system = user if user is not None else find_idempotent_system(table, _seed_config(args, tol))
    except SpectralError as exc:
        doc["error"] = _error(exc)
        return doc, EXIT_FAIL
    report = verify_idempotent_system(table, system, tol)
    doc.update({
        "provenance": system.provenance.value,
        "attempts": system.attempts,
        "idempotents": _elements(table, system.idems),
        "report": report.as_dict(),
    })
    ok = report.passed and report.complete
    if args.output and ok:
        try:
            Path(args.output).write_text(format_idempotents(table, system), encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror or exc}") from None
        doc["output"] = args.output
    return doc, EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args) -> tuple[dict, int]:
    table = load_algebra(args.algebra)
    poly = parse_polynomial(_read(args.poly), table, source=args.poly)
    user = _load_system(args, table)
    opts = SolveOptions(tol_root=SolveOptions.tol_root if args.tol is None else args.tol,
                        max_roots=args.max_roots)
    doc = {"command": "solve", "algebra": _algebra_info(table, args.algebra), "seed": args.seed}
    try:
        system = user if user is not None else find_idempotent_system(table, _seed_config(args))
        rootset = solve(table, poly, system, opts)
    except HypalgError as exc:
        doc["error"] = _error(exc)
        return doc, EXIT_FAIL
    doc["idempotents"] = _elements(table, system.idems)
    doc.update(rootset.as_dict(table))
    if rootset.notes:
        doc["notes"] = list(rootset.notes)
    return doc, EXIT_OK if rootset.verified else EXIT_FAIL


def _is_bicomplex(table: AlgebraTable) -> bool:
    ref = load_fixture("bicomplex")
    return table.dim == ref.dim and bool(np.all(table.constants == ref.constants))


def cmd_cr_check(args) -> tuple[dict, int]:
    table = load_algebra(args.algebra)
    if args.poly == "conj":
        if not _is_bicomplex(table):
            raise InputError("the built-in function 'conj' is only defined for the bicomplex algebra")
        f, fname = conjugation(table), "conj"
    else:
        f, fname = parse_polynomial(_read(args.poly), table, source=args.poly), args.poly
    tol = 1e-4 if args.tol is None else args.tol
    rng = np.random.default_rng(args.seed)
    worst = np.zeros(table.dim - 1)
    points = []
    for _ in range(args.points):
        x = table.random_element(rng)
        rep = check_cauchy_riemann(table, f, x, args.step, tol)
        worst = np.maximum(worst, rep.residuals)
        points.append({"point": _elements(table, [x])[0], "max_residual": rep.max_residual,
                       "step": rep.step})
    max_res = float(worst.max()) if worst.size else 0.0
    doc = {
        "command": "cr-check",
        "algebra": _algebra_info(table, args.algebra),
        "function": fname,
        "seed": args.seed,
        "sampled_points": args.points,
        "residuals": {name: float(r) for name, r in zip(table.basis_names[1:], worst)},
        "max_residual": max_res,
        "tol": tol,
        "holomorphic_at_samples": max_res <= tol,
        "points": points,
    }
    return doc, EXIT_OK if max_res <= tol else EXIT_FAIL


def cmd_taylor(args) -> tuple[dict, int]:
    table = load_algebra(args.algebra)
    poly = parse_polynomial(_read(args.poly), table, source=args.poly)
    try:
        x = parse_element(args.point, table)
        h = parse_element(args.displacement, table)
    except (ParseError, ValueError) as exc:
        raise InputError(f"bad element: {exc}") from None
    tol = 1e-10 if args.tol is None else args.tol
    series = taylor_eval(table, poly, x, h, args.order)
    direct = eval_poly(table, poly, x + h)
    diff = float(np.max(np.abs(series - direct)))
    doc = {
        "command": "taylor",
        "algebra": _algebra_info(table, args.algebra),
        "order": args.order,
        "degree": poly.degree(),
        "series": _elements(table, [series])[0],
        "direct": _elements(table, [direct])[0],
        "difference": diff,
        "tol": tol,
        "agrees": diff <= tol,
    }
    return doc, EXIT_OK


# -- rendering ----------------------------------------------------------------------

def render_machine(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(t) for t in v) + "]"
    return str(v)


def render_human(doc: dict) -> str:
    out = []

    def walk(obj, indent: int) -> None:
        pad = "  " * indent
        for key, val in obj.items():
            if isinstance(val, dict):
                out.append(f"{pad}{key}:")
                walk(val, indent + 1)
            elif isinstance(val, list) and val and isinstance(val[0], dict):
                out.append(f"{pad}{key}:")
                for k, item in enumerate(val):
                    out.append(f"{pad}  [{k}]")
                    walk(item, indent + 2)
            elif isinstance(val, list) and val and isinstance(val[0], list) and key != "point":
                out.append(f"{pad}{key}: ({len(val)})")
                for item in val:
                    out.append(f"{pad}  {_fmt(item)}")
            else:
                out.append(f"{pad}{key}: {_fmt(val)}")

    walk(doc, 0)
    return "\n".join(out) + "\n"


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, metavar="PATH",
                        help="algebra file, or a bundled fixture name (bicomplex, efg, ...)")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--tol", type=_nonneg_float, default=None,
                        help="tolerance (default depends on the subcommand)")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_u64, default=None,
                        help=f"discovery/sampling seed (default 0, or ${SEED_ENV})")

    systems = argparse.ArgumentParser(add_help=False)
    systems.add_argument("--idempotents", metavar="PATH", help="use this idempotent system instead of discovery")

    parser = argparse.ArgumentParser(prog="hypalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the algebra axioms")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("idempotents", parents=[common, seeded, systems],
                       help="discover or verify a complete orthogonal idempotent system")
    p.add_argument("--output", metavar="PATH", help="write the system in idempotent-file format")
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("solve", parents=[common, seeded, systems], help="all roots of p(w) = 0")
    p.add_argument("--poly", required=True, metavar="PATH")
    p.add_argument("--max-roots", type=_pos_int, default=4096)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cr-check", parents=[common, seeded], help="Cauchy-Riemann residuals at sampled points")
    p.add_argument("--poly", required=True, metavar="PATH|conj")
    p.add_argument("--points", type=_pos_int, default=16)
    p.add_argument("--step", type=_pos_float, default=None, help="finite-difference step")
    p.set_defaults(func=cmd_cr_check)

    p = sub.add_parser("taylor", parents=[common], help="compare a Taylor sum with direct evaluation")
    p.add_argument("--poly", required=True, metavar="PATH")
    p.add_argument("--point", required=True, metavar="SCALARS", help="x as d scalars, e.g. '1 0.5'")
    p.add_argument("--displacement", required=True, metavar="SCALARS")
    p.add_argument("--order", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_taylor)
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        doc, status = args.func(args)
    except (InputError, ParseError, HypalgError, ValueError) as exc:
        print(f"hypalg: error: {exc}", file=stderr)
        return EXIT_INPUT
    render: Callable[[dict], str] = render_machine if args.format == "machine" else render_human
    stdout.write(render(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
