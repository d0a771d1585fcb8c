"""Command-line front end: ``pushmaps <command> ...``.

Exit codes: 0 converged (or success), 2 non_pA, 3 budget_exceeded,
1 bad input, 4 a verify run with failing criteria.

Settings are resolved as flags, then a ``key=value`` config file (``--config``
or the ``PUSHMAPS_CONFIG`` environment variable), then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import acceptance
from .bounds import (
    BOUNDS_COLUMNS,
    LOWER,
    UPPER,
    SurfaceType,
    bounds_row,
    fig7_upper,
    pointpush_lower,
    strand_sim_lower,
    strand_sim_upper,
)
from .braid import BraidParseError, format_braid, parse_braid
from .lamination import (
    BUDGET_EXCEEDED,
    CONVERGED,
    NON_PA,
    GrowthOptions,
    estimate_dilatation,
    format_real,
)
from .pointpush import (
    classify_loop,
    figure7_expected_k,
    figure7_loop,
    parse_loop,
    push_braid,
)

CONFIG_ENV = "PUSHMAPS_CONFIG"
FORMATS = ("json", "csv", "text")
EXIT_OK, EXIT_INPUT, EXIT_NON_PA, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3, 4
STATUS_EXIT = {CONVERGED: EXIT_OK, NON_PA: EXIT_NON_PA, BUDGET_EXCEEDED: EXIT_BUDGET}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's own exit code 2 would collide with the non_pA code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    max_iter: int = 200
    tolerance: float = 1e-9
    burn_in: int = 10
    seed_curve: tuple[int, int] = (1, 2)
    output_format: str | None = None
    output_path: str | None = None
    seed: int = acceptance.DEFAULT_SEED

    def validate(self) -> None:
        if self.tolerance <= 0:
            raise UsageError("tolerance must be positive")
        if not 0 <= self.burn_in < self.max_iter:
            raise UsageError(f"need max_iter > burn_in >= 0, got max_iter={self.max_iter} burn_in={self.burn_in}")
        if self.output_format is not None and self.output_format not in FORMATS:
            raise UsageError(f"output_format must be one of {', '.join(FORMATS)}")

    def growth_options(self) -> GrowthOptions:
        return GrowthOptions(
            max_iter=self.max_iter,
            tolerance=self.tolerance,
            burn_in=self.burn_in,
            seed_curve=self.seed_curve,
        )


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'i,j', got {text!r}")
    return int(parts[0]), int(parts[1])


_CONVERTERS = {
    "max_iter": int,
    "tolerance": float,
    "burn_in": int,
    "seed_curve": _parse_pair,
    "output_format": str,
    "output_path": str,
    "seed": int,
}


def read_config_file(path: str | os.PathLike) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return out


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    path = args.config or environ.get(CONFIG_ENV)
    from_file = read_config_file(path) if path else {}
    values = {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
        elif f.name in from_file:
            values[f.name] = from_file[f.name]
    # a small iteration budget drags the default burn-in down with it
    if "burn_in" not in values and "max_iter" in values:
        values["burn_in"] = min(RunConfig.burn_in, max(values["max_iter"] - 1, 0))
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# --- output ------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_real(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, float):
        return format_real(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    if columns is None:
        columns = list(rows[0]) if rows else []
    if fmt == "json":
        return "".join(json.dumps(_jsonable(r), sort_keys=True) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    lines = []
    for r in rows:
        lines.extend(f"{c}: {_cell(r.get(c))}" for c in columns)
        lines.append("")
    return "\n".join(lines)


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------

def cmd_dilatation(args, cfg: RunConfig) -> int:
    w = parse_braid(args.braid)
    if w.strands < 3:
        raise UsageError("growth estimation needs at least 3 strands")
    rep = estimate_dilatation(w, cfg.growth_options())
    row = {"braid": format_braid(w), **rep.to_dict(include_trace=args.trace)}
    emit(render([row], cfg.output_format or "json"), cfg)
    return STATUS_EXIT[rep.status]


def cmd_push(args, cfg: RunConfig) -> int:
    if args.fig7 is not None:
        loop = figure7_loop(args.fig7)
    elif args.loop:
        loop = parse_loop(args.loop)
    else:
        raise UsageError("give a loop text or --fig7 n")
    opts = cfg.growth_options()
    pushed = push_braid(loop)
    rep = estimate_dilatation(pushed.braid, opts)
    row = {**pushed.to_dict(), **rep.to_dict(), "classification": classify_loop(loop, opts)}
    if args.fig7 is not None:
        n = args.fig7
        lo, hi = pointpush_lower(figure7_expected_k(n)), fig7_upper(n)
        inside = rep.status == CONVERGED and lo - 1e-6 <= rep.lambda_hat <= hi + 1e-6
        row.update(lower=lo, upper=hi, verdict=f"{'inside' if inside else 'outside'} [{lo}, {hi}]")
    emit(render([row], cfg.output_format or "json"), cfg)
    return STATUS_EXIT[rep.status]


def _parse_sweep(text: str) -> range:
    try:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise UsageError(f"expected sweep 'n0..n1', got {text!r}") from None


def cmd_bounds(args, cfg: RunConfig) -> int:
    if args.sweep:
        surfaces = [SurfaceType(args.p or 0, n) for n in _parse_sweep(args.sweep)]
    elif args.n is not None:
        surfaces = [SurfaceType(args.p or 0, args.n)]
    else:
        raise UsageError("give --n (with optional --p) or --sweep n0..n1")
    rows = [bounds_row(S) for S in surfaces]
    emit(render(rows, cfg.output_format or "csv", BOUNDS_COLUMNS), cfg)
    return EXIT_OK


def cmd_strands(args, cfg: RunConfig) -> int:
    sim = strand_sim_lower if args.model == LOWER else strand_sim_upper
    trace = sim(args.k, args.m)
    fmt = cfg.output_format or "json"
    if fmt == "json":
        doc = {
            "model": trace.model, "k": trace.k, "cycles": trace.cycles,
            "counts": [str(c) for c in trace.counts],
            "series": [str(s) for s in trace.series],
            "visits": [
                {"trip": t, "crossing": j, "visit": v, "mu": str(c)}
                for (t, j, v), c in trace.mu.items()
            ],
        }
        emit(json.dumps(doc, sort_keys=True) + "\n", cfg)
    else:
        rows = [{"trip": j + 1, "count": c, "series": s}
                for j, (c, s) in enumerate(zip(trace.counts, trace.series))]
        emit(render(rows, fmt, ["trip", "count", "series"]), cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    try:
        results = acceptance.run(args.only, cfg.growth_options(), cfg.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    passed = all(r.passed for r in results)
    fmt = cfg.output_format or "text"
    if fmt == "json":
        doc = {"seed": cfg.seed, "passed": passed, "criteria": [r.to_dict() for r in results]}
        text = json.dumps(doc, sort_keys=True) + "\n"
    else:
        lines = [f"# seed={cfg.seed} max_iter={cfg.max_iter} tolerance={cfg.tolerance:g}"]
        lines += [r.line() for r in results]
        lines.append(json.dumps({"passed": passed, "failed": [r.key for r in results if not r.passed]}))
        text = "\n".join(lines) + "\n"
    emit(text, cfg)
    return EXIT_OK if passed else EXIT_VERIFY


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    common.add_argument("--max-iter", dest="max_iter", type=int)
    common.add_argument("--tolerance", type=float)
    common.add_argument("--burn-in", dest="burn_in", type=int)
    common.add_argument("--seed-curve", dest="seed_curve", type=_parse_pair, metavar="I,J")
    common.add_argument("--format", dest="output_format", choices=FORMATS)
    common.add_argument("--output", dest="output_path", metavar="PATH")

    parser = _Parser(prog="pushmaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dilatation", parents=[common], help="estimate the growth rate of a braid")
    p.add_argument("braid", help="braid text, e.g. \"B3: s2 s1'\"")
    p.add_argument("--trace", action="store_true", help="include the ratio trace")
    p.set_defaults(func=cmd_dilatation)

    p = sub.add_parser("push", parents=[common], help="point-push along a loop")
    p.add_argument("loop", nargs="?", help="loop text, e.g. \"L4: g1 g2'\"")
    p.add_argument("--fig7", type=int, metavar="N", help="use the figure-7 loop for n punctures")
    p.set_defaults(func=cmd_push)

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds per surface")
    p.add_argument("--p", type=int, help="genus (default 0)")
    p.add_argument("--n", type=int, help="punctures")
    p.add_argument("--sweep", metavar="N0..N1")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("strands", parents=[common], help="strand-count simulator traces")
    p.add_argument("--model", choices=(LOWER, UPPER), default=UPPER)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_strands)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", action="append", choices=list(acceptance.CRITERIA), metavar="KEY",
                   help="run one criterion; repeatable")
    p.add_argument("--seed", type=int, help="seed for the randomised checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except BraidParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
