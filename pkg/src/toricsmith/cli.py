"""Command-line front end.

Every subcommand reads one or more polytope files and emits one report
envelope per file.  Exit codes: 0 success, 1 I/O or parse error, 2 invalid
polytope or unmet precondition, 3 verification failure.  With several input
files the largest per-file code is returned.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .decompose import build_factors, decomposition_plan, verify_theorem1
from .errors import InputError, InvalidPolytope, ToricsmithError
from .fixtures import random_polytope
from .gromov import width_report
from .polytope import classify, is_compact, vertices
from .reduce import minkowski_weights, reduction_certificate, verify_certificate
from .serialize import (
    canonical_json,
    dump_polytope,
    encode_certificate,
    encode_gromov,
    encode_plan,
    encode_properties,
    encode_trace,
    encode_vertices,
    load_polytope_text,
    rats,
)
from .shrink import center, shrink_trace

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_LU_BOUND = 12
COMMANDS = ("validate", "shrink", "center", "decompose", "reduce", "gromov", "all")


@dataclass(frozen=True)
class RunConfig:
    command: str
    verify: bool = True
    lu_bound: int = DEFAULT_LU_BOUND
    fmt: str = "json"


class VerificationFailed(ToricsmithError):
    pass


# -- per-command work --------------------------------------------------------

def _validate(p, cfg):
    props = classify(p)
    out = {"polytope": dump_polytope(p), "properties": encode_properties(props)}
    if props.compact:
        out["vertices"] = encode_vertices(vertices(p))
    return out


def _shrink(p, cfg):
    return encode_trace(shrink_trace(p))


def _center(p, cfg):
    q, shift = center(p)
    return {"translation": rats(shift), "centered": dump_polytope(q)}


def _decompose(p, cfg):
    plan = decomposition_plan(p)
    factors = build_factors(plan)
    report = verify_theorem1(plan.polytope, factors) if cfg.verify else None
    out = encode_plan(plan, factors, report)
    if report is not None and not report.passed:
        raise VerificationFailed(f"decomposition checks failed: {report.failed()}", out)
    return out


def _reduce(p, cfg):
    cert = reduction_certificate(p, verify=False)
    report = verify_certificate(center(p)[0], cert) if cfg.verify else None
    out = encode_certificate(cert, report)
    if report is not None and not report.passed:
        raise VerificationFailed(f"certificate checks failed: {report.failed()}", out)
    return out


def _gromov(p, cfg):
    return encode_gromov(width_report(p, cfg.lu_bound))


HANDLERS = {
    "validate": _validate,
    "shrink": _shrink,
    "center": _center,
    "decompose": _decompose,
    "reduce": _reduce,
    "gromov": _gromov,
}


def _error(exc) -> dict:
    return {"kind": type(exc).__name__, "message": str(exc.args[0]) if exc.args else ""}


def _run_all(p, cfg):
    """Every section; a failing section records its error instead of aborting."""
    out, code = {}, EXIT_OK
    for name, handler in HANDLERS.items():
        try:
            out[name] = handler(p, cfg)
        except VerificationFailed as exc:
            out[name] = {"error": _error(exc), **exc.args[1]}
            code = max(code, EXIT_VERIFY)
        except ToricsmithError as exc:
            out[name] = {"error": _error(exc)}
            code = max(code, EXIT_INVALID)
    return out, code


def process_text(text: str, cfg: RunConfig) -> tuple[int, dict]:
    """Run one command on the contents of a polytope file."""
    envelope = {
        "tool": "toricsmith",
        "version": __version__,
        "command": cfg.command,
        "input_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }
    try:
        p = load_polytope_text(text)
    except InputError as exc:
        return EXIT_IO, {**envelope, "error": _error(exc)}
    except InvalidPolytope as exc:
        return EXIT_INVALID, {**envelope, "error": _error(exc)}
    if cfg.command == "validate":
        # a file is only valid when it describes a nonempty compact polytope
        try:
            if not is_compact(p):
                return EXIT_INVALID, {**envelope, "result": _validate(p, cfg),
                                      "error": {"kind": "UnboundedPolytope",
                                                "message": "the constraints do not bound a polytope"}}
        except ToricsmithError as exc:
            return EXIT_INVALID, {**envelope, "error": _error(exc)}
    try:
        if cfg.command == "all":
            result, code = _run_all(p, cfg)
            return code, {**envelope, "result": result}
        return EXIT_OK, {**envelope, "result": HANDLERS[cfg.command](p, cfg)}
    except VerificationFailed as exc:
        return EXIT_VERIFY, {**envelope, "result": exc.args[1], "error": _error(exc)}
    except ToricsmithError as exc:
        return EXIT_INVALID, {**envelope, "error": _error(exc)}


def process_file(path: str, cfg: RunConfig) -> tuple[int, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return EXIT_IO, {"tool": "toricsmith", "version": __version__, "command": cfg.command,
                         "error": {"kind": "InputError", "message": f"cannot read {path}: {exc}"}}
    return process_text(text, cfg)


def _job(args):
    path, cfg = args
    code, doc = process_file(path, cfg)
    return code, render(doc, cfg.fmt)


# -- rendering ---------------------------------------------------------------

def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                yield f"{pad}{key}:"
                yield from _text_lines(val, indent + 1)
            else:
                yield f"{pad}{key}: {_scalar(val)}"
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)) and val and not _flat(val):
                yield f"{pad}-"
                yield from _text_lines(val, indent + 1)
            else:
                yield f"{pad}- {_scalar(val)}"
    else:
        yield f"{pad}{_scalar(obj)}"


def _flat(val) -> bool:
    if isinstance(val, dict):
        return set(val) == {"pi_coefficient"}
    return all(not isinstance(x, (dict, list)) or _flat(x) for x in val)


def _scalar(val) -> str:
    if isinstance(val, dict):
        if set(val) == {"pi_coefficient"}:
            return f"{val['pi_coefficient']} pi"
        return "{}"
    if isinstance(val, list):
        return "(" + ", ".join(_scalar(x) for x in val) + ")"
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    return str(val)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(doc)
    return "\n".join(_text_lines(doc)) + "\n"


# -- fuzzing -----------------------------------------------------------------

def fuzz(seed: int, count: int, dims=(2, 3, 4), verify: bool = True) -> tuple[int, dict]:
    """Check the decomposition, weights and certificates on seeded random polytopes."""
    rng = random.Random(seed)
    failures, counts = [], {"decompositions": 0, "certificates": 0, "not_simple": 0}
    for k in range(count):
        p = random_polytope(rng, dims[k % len(dims)])
        try:
            plan = decomposition_plan(p)
            factors = build_factors(plan)
            report = verify_theorem1(plan.polytope, factors)
            counts["decompositions"] += 1
            if not report.passed:
                failures.append({"case": k, "polytope": dump_polytope(p), "failed": report.failed()})
                continue
            minkowski_weights(p)
            if classify(plan.polytope).simple:
                cert = reduction_certificate(p, verify=False)
                counts["certificates"] += 1
                if verify:
                    cr = verify_certificate(plan.polytope, cert)
                    if not cr.passed:
                        failures.append({"case": k, "polytope": dump_polytope(p), "failed": cr.failed()})
            else:
                counts["not_simple"] += 1
        except ToricsmithError as exc:
            failures.append({"case": k, "polytope": dump_polytope(p), "error": _error(exc)})
    doc = {
        "tool": "toricsmith",
        "version": __version__,
        "command": "fuzz",
        "result": {"seed": seed, "count": count, "dims": list(dims), **counts, "failures": failures},
    }
    return (EXIT_VERIFY if failures else EXIT_OK), doc


# -- argument handling -------------------------------------------------------

def _lu_bound_default() -> int:
    raw = os.environ.get("TORICSMITH_LU_BOUND")
    if raw is None:
        return DEFAULT_LU_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"TORICSMITH_LU_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("TORICSMITH_LU_BOUND must be positive")
    return value


def _positive(raw) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricsmith", description="Exact analysis of labeled rational polytopes.")
    parser.add_argument("--version", action="version", version=f"toricsmith {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--output", help="output file, or a directory when several inputs are given")
        sp.add_argument("--no-verify", action="store_true", help="skip the verification checks")

    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("inputs", nargs="+", help="polytope JSON files")
        common(sp)
        sp.add_argument("--lu-bound", type=_positive, default=None,
                        help=f"search bound for integer relations (default {DEFAULT_LU_BOUND}, "
                             "or TORICSMITH_LU_BOUND)")
        sp.add_argument("--jobs", type=_positive, default=1, help="worker processes for several inputs")

    fz = sub.add_parser("fuzz", help="run the checks on seeded random polytopes")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--count", type=_positive, default=100)
    fz.add_argument("--dims", default="2,3,4", help="comma-separated ambient dimensions")
    common(fz)
    return parser


def _emit(text: str, target: Path | None) -> None:
    if target is None:
        sys.stdout.write(text)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ext = "json" if args.format == "json" else "txt"
    out = Path(args.output) if args.output else None

    if args.command == "fuzz":
        try:
            dims = tuple(int(x) for x in args.dims.split(","))
        except ValueError:
            sys.stdout.write(canonical_json({"error": {"kind": "InputError", "message": "bad --dims"}}))
            return EXIT_IO
        code, doc = fuzz(args.seed, args.count, dims, verify=not args.no_verify)
        _emit(render(doc, args.format), out)
        return code

    try:
        lu = args.lu_bound if args.lu_bound is not None else _lu_bound_default()
    except InputError as exc:
        sys.stdout.write(canonical_json({"error": _error(exc)}))
        return EXIT_IO
    cfg = RunConfig(args.command, not args.no_verify, lu, args.format)
    jobs = [(path, cfg) for path in args.inputs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_job, jobs))  # map keeps input order
    else:
        results = [_job(j) for j in jobs]

    if len(results) == 1:
        code, text = results[0]
        target = out / f"{Path(args.inputs[0]).stem}.{args.command}.{ext}" if out and out.is_dir() else out
        _emit(text, target)
        return code
    if out is not None:
        if out.exists() and not out.is_dir():
            sys.stdout.write(canonical_json({"error": {"kind": "InputError",
                                                       "message": "--output must be a directory for several inputs"}}))
            return EXIT_IO
        for path, (_, text) in zip(args.inputs, results):
            _emit(text, out / f"{Path(path).stem}.{args.command}.{ext}")
    else:
        for _, text in results:
            _emit(text, None)
    return max(code for code, _ in results)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
