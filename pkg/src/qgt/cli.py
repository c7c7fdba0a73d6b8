"""Command-line front end.

Subcommands: build, encode, decode, verify, random, bench, stream,
graph.  Exit status 0 on success, 1 when a verification or decode
fails, 2 on usage or format errors.  All randomness is seeded, so
identical commands produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from math import ceil
from pathlib import Path

from . import bounds as bounds_mod
from . import random_code as random_mod
from .code import MODE_MULTISET, MODE_RANDOM, Code, build, choose_mode
from .decode import DecodeError, decode_detailed
from .disperser import DisperserParams, build_disperser, verify_dispersion
from .model import multiset_total, next_power_of_two
from .serialize import (
    FormatError,
    code_from_text,
    code_to_text,
    fv_from_text,
    fv_to_text,
    multiset_to_text,
    parse_set_spec,
)
from .ssui import BudgetError, verify_ssui
from .streaming import GraphSketch, StreamSketch, parse_ops
from .sui import verify_sui

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_code(path: str):
    return code_from_text(Path(path).read_text())


def _cmd_build(args: argparse.Namespace) -> int:
    code = build(args.n, args.k, args.alpha, mode=args.mode, seed=args.seed)
    _write_out(code_to_text(code), args.out)
    return EXIT_OK


def _cmd_encode(args: argparse.Namespace) -> int:
    code = _load_code(args.code)
    hidden = parse_set_spec(args.set)
    alpha = args.alpha
    if alpha is None and code.mode != MODE_MULTISET:
        alpha = code.alpha
    fv = code.feedback(hidden, alpha)
    _write_out(fv_to_text(fv), args.out)
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    code = _load_code(args.code)
    fv = fv_from_text(Path(args.fv).read_text())
    result, _ = decode_detailed(code, fv)
    _write_out(multiset_to_text(result), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    code = _load_code(args.code)
    failures = 0
    ran_any = False
    if args.uniqueness:
        ran_any = True
        ok = bounds_mod.verify_uniqueness(
            code.queries, code.n, code.k, max(1, code.alpha), budget=args.budget
        )
        print(f"uniqueness: {'pass' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    if args.claim_a:
        ran_any = True
        witness = bounds_mod.find_unjammed_violation(
            code.queries, code.n, code.k, max(1, code.alpha), budget=args.budget
        )
        if witness is None:
            print("claim-a: pass (no jammed element)")
        else:
            k_set, x = witness
            print(f"claim-a: FAIL  element {x} jammed within K={sorted(k_set)}")
            failures += 1
    if args.sui:
        ran_any = True
        failures += _verify_levels(code, args.budget, ("sui", "rr"))
    if args.ssui:
        ran_any = True
        failures += _verify_levels(code, args.budget, ("ssui",))
    if args.dispersion:
        ran_any = True
        failures += _verify_dispersion_levels(code, args.seed)
    if not ran_any:
        print("nothing to verify (pass --uniqueness/--claim-a/--sui/--ssui/--dispersion)")
        return EXIT_USAGE
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def _level_groups(code, kinds):
    groups = []
    key = None
    for blk in code.blocks:
        blk_key = (blk.kind, blk.level)
        if blk_key != key:
            key = blk_key
            groups.append((blk.kind, blk.level, []))
        groups[-1][2].append(frozenset(code.queries[blk.base]))
    return [(kind, lvl, tuple(qs)) for kind, lvl, qs in groups if kind in kinds]


def _verify_levels(code, budget: int, kinds) -> int:
    if code.mode == MODE_RANDOM or not code.blocks:
        print("selector check: no block layout in this code")
        return 1
    k_pow = next_power_of_two(code.k)
    cap = (code.alpha - 1) if code.alpha >= 2 else k_pow + 1
    failures = 0
    for kind, level, queries in _level_groups(code, kinds):
        try:
            if kind == "ssui":
                ok = verify_ssui(queries, code.n, level, k_pow, cap, budget=budget)
                print(f"{kind} level {level}: {'pass' if ok else 'FAIL'}")
            else:
                report = verify_sui(queries, code.n, level, 0.5, k_pow, cap, budget=budget)
                ok = report.passed
                print(
                    f"{kind} level {level}: max unselected {report.max_unselected} "
                    f"(threshold {report.threshold:g}) -> {'pass' if ok else 'FAIL'}"
                )
        except BudgetError as exc:
            print(f"{kind} level {level}: {exc}")
            failures += 1
            continue
        failures += 0 if ok else 1
    return failures


def _verify_dispersion_levels(code, seed: int) -> int:
    """Re-derive the per-level dispersers for this seed and verify dispersion.

    The code format stores no seeds, so this mirrors what `build --seed`
    would have used.  Levels realized as singleton selectors never
    consulted a disperser and are reported as such.
    """
    failures = 0
    checked = 0
    for kind, level, queries in _level_groups(code, ("sui", "rr")):
        if all(len(q) <= 1 for q in queries):
            print(f"{kind} level {level}: singleton selector, no disperser involved")
            continue
        checked += 1
        params = DisperserParams(ell_star=max(1, ceil(0.5 * level)), epsilon=0.5, seed=seed)
        try:
            graph = build_disperser(code.n, params)
            ok = verify_dispersion(graph, params.ell_star, params.epsilon, mode="sampled", seed=seed)
        except (ValueError, BudgetError) as exc:
            print(f"{kind} level {level}: dispersion check failed to run: {exc}")
            failures += 1
            continue
        print(f"{kind} level {level}: dispersion {'pass' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    if checked == 0 and failures == 0:
        print("dispersion: all selector levels are singleton families (vacuous pass)")
    return failures


def _cmd_random(args: argparse.Namespace) -> int:
    code = random_mod.build_random_code(args.n, args.k, args.alpha, args.seed)
    wrapped = Code(code.queries, (), args.n, args.k, args.alpha, MODE_RANDOM)
    _write_out(code_to_text(wrapped), args.out)
    status = EXIT_OK
    if args.verify is not None:
        if args.verify == "exhaustive":
            report = random_mod.verify_claims(code, mode="exhaustive", budget=args.budget)
        elif args.verify.startswith("sampled:"):
            trials = int(args.verify.split(":", 1)[1])
            report = random_mod.verify_claims(code, mode="sampled", trials=trials, seed=args.seed)
        else:
            raise FormatError(f"unknown verify mode {args.verify!r}")
        for line in report.lines():
            print(line, file=sys.stderr)
        status = EXIT_OK if report.passed else EXIT_VERIFY
    return status


def _cmd_bench(args: argparse.Namespace) -> int:
    grid_lines = Path(args.grid).read_text().splitlines()
    print("n,k,alpha,mode,m,occurrence_max,lb_total,ratio,build_ms,decode_ops")
    for lineno, raw in enumerate(grid_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise FormatError(f"grid line {lineno}: expected 'n k alpha [mode]'")
        n, k, alpha = int(parts[0]), int(parts[1]), int(parts[2])
        mode = parts[3] if len(parts) == 4 else "auto"
        print(bench_row(n, k, alpha, mode, seed=args.seed))
    return EXIT_OK


def bench_row(n: int, k: int, alpha: int, mode: str = "auto", seed: int = 0) -> str:
    resolved = choose_mode(n, k, alpha) if mode == "auto" else mode
    start = time.monotonic()
    code = build(n, k, alpha, mode=resolved, seed=seed)
    build_ms = (time.monotonic() - start) * 1000
    report = bounds_mod.lower_bound(n, k, alpha, measured_m=len(code.queries))
    rng = random.Random(seed)
    probe = rng.sample(range(1, n + 1), min(k, n))
    fv = code.feedback(probe, alpha if code.mode != MODE_MULTISET else None)
    _, stats = decode_detailed(code, fv)
    ratio = report.ratio if report.ratio is not None else 0.0
    return (
        f"{n},{k},{alpha},{resolved},{len(code.queries)},{code.occurrence_max},"
        f"{report.lb_total:.3f},{ratio:.3f},{build_ms:.1f},{stats.operations}"
    )


def _cmd_stream(args: argparse.Namespace) -> int:
    code = _load_code(args.code)
    sketch = StreamSketch(code, alpha=args.alpha)
    ops = parse_ops(Path(args.ops).read_text().splitlines())
    for op, params in ops:
        if len(params) != 1:
            raise FormatError(f"stream operations take one element, got {params}")
        sketch.apply(op, params[0])
    if args.reconstruct:
        result = sketch.reconstruct()
        _write_out(multiset_to_text(result), args.out)
        print(f"total multiplicity {multiset_total(result)}", file=sys.stderr)
    return EXIT_OK


def _cmd_graph(args: argparse.Namespace) -> int:
    sketch = GraphSketch(args.nodes, args.k, seed=args.seed)
    ops = parse_ops(Path(args.ops).read_text().splitlines())
    for op, params in ops:
        if len(params) != 2:
            raise FormatError(f"graph operations take two endpoints, got {params}")
        sketch.apply(op, params[0], params[1])
    if args.reconstruct:
        edges = sketch.reconstruct()
        _write_out("".join(f"{u} {v}\n" for u, v in edges), args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgt",
        description="Group testing with capped count feedback: build, encode, decode, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a code and write its serialized form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--alpha", type=int, required=True,
        help="feedback cap (>= 2; multiset codes ignore it: their cap is chosen at encode time)",
    )
    p.add_argument("--mode", choices=("plain", "large", "multiset", "auto"), default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("encode", help="feedback vector of a hidden (multi)set")
    p.add_argument("--code", required=True)
    p.add_argument("--set", required=True, help="elements as 'v[:mult],v[:mult],...'")
    p.add_argument("--alpha", type=int, default=None, help="cap override (multiset codes)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="reconstruct the hidden (multi)set from feedback")
    p.add_argument("--code", required=True)
    p.add_argument("--fv", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("verify", help="run exhaustive verification oracles against a code")
    p.add_argument("--code", required=True)
    p.add_argument("--uniqueness", action="store_true")
    p.add_argument("--claim-a", dest="claim_a", action="store_true")
    p.add_argument("--sui", action="store_true")
    p.add_argument("--ssui", action="store_true")
    p.add_argument("--dispersion", action="store_true")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("random", help="seeded random query system plus claim report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", default=None, help="'exhaustive' or 'sampled:<trials>'")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("bench", help="CSV of lengths, bounds and timings over a grid file")
    p.add_argument("--grid", required=True, help="lines of 'n k alpha [mode]'")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("stream", help="replay an insert/delete op log against a sketch")
    p.add_argument("--code", required=True, help="a multiset-mode code file")
    p.add_argument("--ops", required=True)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--reconstruct", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_stream)

    p = sub.add_parser("graph", help="replay an edge op log and reconstruct the graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="maximum node degree")
    p.add_argument("--ops", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reconstruct", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecodeError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
