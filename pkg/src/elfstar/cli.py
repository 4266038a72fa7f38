"""Command-line interface: ``elfstar <command> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 corrupt container.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import bench, synth
from .blockcodec import CodecConfig, compress, erase_all, xor_distributions
from .container import decompress
from .errors import DecodeError, ElfError
from .io import InputError, read_values, write_csv, write_f64
from .ruleopt import EmptyDistributionError, global_app_rule
from .streamcodec import stream_compress

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_FORMAT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input_opts(p):
    p.add_argument("--column", default="0", help="CSV column (0-based index or header name)")
    p.add_argument("--skip-bad", action="store_true", help="skip CSV cells that do not parse")


def _load(args, path):
    column = int(args.column) if str(args.column).lstrip("-").isdigit() else args.column
    return read_values(path, column, args.skip_bad)


def cmd_compress(args):
    values = _load(args, args.input)
    config = CodecConfig(rule_mode=args.rule_mode, share_mode=args.share)
    t0 = time.perf_counter()
    if args.mode == "stream":
        data = stream_compress(values, args.window, config)
    else:
        data = compress(values, args.block, config, workers=args.workers)
    elapsed = time.perf_counter() - t0
    Path(args.output).write_bytes(data)
    ratio = len(data) / (8 * values.size)
    print(f"mode={args.mode} values={values.size} bytes={len(data)} ratio={ratio:.4f} time_ms={elapsed * 1e3:.1f}")
    return EXIT_OK


def cmd_decompress(args):
    data = Path(args.input).read_bytes()
    values = decompress(data)
    if args.format == "csv":
        write_csv(args.output, values)
    else:
        write_f64(args.output, values)
    print(f"values={values.size}")
    return EXIT_OK


def _distributions(values):
    erased, _ = erase_all(np.asarray(values, dtype=np.float64))
    return xor_distributions(erased)


def cmd_stats(args):
    lead, trail = _distributions(_load(args, args.input))
    print("# lead")
    print(lead.to_text())
    print("# trail")
    print(trail.to_text())
    return EXIT_OK


def cmd_rules(args):
    lead, trail = _distributions(_load(args, args.input))
    for name, cd in (("lead", lead), ("trail", trail)):
        try:
            rule, cost = global_app_rule(cd)
        except EmptyDistributionError:
            print(f"{name}: 0 (ln=0) cost=0 app=0 pre=0 (empty distribution)")
            continue
        print(f"{name}: {rule} (ln={rule.presentation_bits}) cost={cost.c_total} app={cost.c_app} pre={cost.c_pre}")
    return EXIT_OK


def cmd_bench(args):
    paths = []
    for p in args.inputs:
        p = Path(p)
        paths.extend(sorted(q for q in p.iterdir() if q.is_file()) if p.is_dir() else [p])
    series = {}
    for p in paths:
        try:
            series[p.name] = _load(args, p)
        except (OSError, ElfError) as exc:
            series[p.name] = exc
    configs = [c.strip() for c in args.configs.split(",") if c.strip()]
    unknown = [c for c in configs if c != "stream" and c not in bench.CONFIGS]
    if unknown:
        print(f"unknown config(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    report = bench.run_bench(series, configs, args.block, args.blocks, args.repeats)
    print(report.to_csv() if args.format == "csv" else report.to_table())
    for name, msg in report.errors.items():
        print(f"{name}: {msg}", file=sys.stderr)
    return EXIT_DATA if report.errors and not report.rows else EXIT_OK


def cmd_gen(args):
    if args.kind == "walk":
        values = synth.random_walk(args.length, args.alpha, args.step, args.start, args.seed)
    elif args.kind == "uniform":
        values = synth.decimal_uniform(args.length, args.alpha, seed=args.seed)
    else:
        values = np.full(args.length, args.start)
    if Path(args.output).suffix.lower() == ".csv":
        write_csv(args.output, values)
    else:
        write_f64(args.output, values)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="elfstar", description="Lossless floating-point time series compression")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compress", help="compress a .f64 or .csv file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", choices=("batch", "stream"), default="batch")
    p.add_argument("--block", type=int, default=1000)
    p.add_argument("--window", type=int, default=1000)
    p.add_argument("--rule-mode", choices=("adaptive", "fixed"), default="adaptive")
    p.add_argument("--share", choices=("cprime", "legacy"), default="cprime")
    p.add_argument("--workers", type=int, default=1)
    _add_input_opts(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decompress to raw little-endian float64")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=("f64", "csv"), default="f64")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("bench", help="ratio and timing per block")
    p.add_argument("inputs", nargs="+", help="files or directories")
    p.add_argument("--block", type=int, default=1000)
    p.add_argument("--blocks", type=int, default=100)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--configs", default=",".join(bench.DEFAULT_CONFIGS))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    _add_input_opts(p)
    p.set_defaults(func=cmd_bench)

    for name, func, text in (
        ("stats", cmd_stats, "print lead/trail zero distributions"),
        ("rules", cmd_rules, "print globally best rules"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("input")
        _add_input_opts(p)
        p.set_defaults(func=func)

    p = sub.add_parser("gen", help="write a synthetic series")
    p.add_argument("output")
    p.add_argument("--kind", choices=("walk", "uniform", "constant"), default="walk")
    p.add_argument("--length", type=int, default=100_000)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--start", type=float, default=20.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DecodeError as exc:
        print(f"error: corrupt container: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
