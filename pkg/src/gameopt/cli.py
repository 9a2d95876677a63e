"""Command-line entry point: `gameopt price ...` and `gameopt tables --out DIR`."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from gameopt import bench
from gameopt.config import ConfigError, build_config, format_config, read_config_file

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

# flag -> config key
FLAGS = {
    "--spot": "spot", "--rate": "rate", "--vol": "vol", "--strike": "strike",
    "--maturity": "maturity", "--penalty": "penalty", "--methods": "methods",
    "--paths": "paths", "--mc-steps": "mc_steps", "--seed": "seed", "--seeds": "seeds",
    "--degree": "degree", "--tree-steps": "tree_steps", "--grid-space": "grid_space",
    "--grid-time": "grid_time", "--smax-factor": "smax_factor", "--workers": "workers",
    "--out": "out",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    for flag, key in FLAGS.items():
        p.add_argument(flag, dest=key, default=None, metavar=key.upper())
    p.add_argument("--config", default=None, help="flat 'key = value' file; flags override it")
    p.add_argument("--print-config", action="store_true", help="print the resolved config and exit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gameopt", description="Game put option pricing benchmarks")
    sub = parser.add_subparsers(dest="command")
    p_price = sub.add_parser("price", help="price one contract with the selected methods")
    _add_common(p_price)
    p_price.add_argument("--dump-paths", default=None, help="write the first seed's paths to this CSV")
    p_price.add_argument("--dump-curve", default=None, help="write the t=0 PDE value curve to this CSV")
    p_tables = sub.add_parser("tables", help="regenerate both benchmark tables as CSV")
    _add_common(p_tables)
    return parser


def _resolve(args) -> "bench.RunConfig":
    flags = {key: getattr(args, key) for key in FLAGS.values()}
    file_values = read_config_file(args.config) if args.config else {}
    return build_config(file_values, flags)


def _dump_extras(args, cfg) -> None:
    if args.dump_paths:
        from gameopt.paths import simulate_paths, write_paths_csv

        ps = simulate_paths(cfg.market, cfg.maturity, cfg.paths, cfg.mc_steps, cfg.seed, cfg.workers)
        with open(args.dump_paths, "w") as fh:
            write_paths_csv(ps, fh)
    if args.dump_curve:
        from gameopt.pde import GridSpec, solve_game_cn, write_value_curve_csv

        grid = GridSpec.for_contract(cfg.market, cfg.contract, cfg.grid_space, cfg.grid_time, cfg.smax_factor)
        with open(args.dump_curve, "w") as fh:
            write_value_curve_csv(grid, solve_game_cn(cfg.market, cfg.contract, grid), fh)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0].startswith("-") and argv[0] not in ("-h", "--help"):
        argv = ["price"] + argv
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG

    try:
        cfg = _resolve(args)
    except (ConfigError, OSError) as exc:
        print(f"gameopt: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.print_config:
        print(format_config(cfg))
        return EXIT_OK

    try:
        if args.command == "tables":
            files, summary = bench.run_tables(cfg, cfg.out or "tables")
            for f in files:
                print(f"wrote {f}")
            print(summary)
            return EXIT_OK

        results = bench.price_all(cfg, path_workers=cfg.workers)
        rows = bench.single_rows(cfg, results)
        print(bench.format_single_table(rows))
        if cfg.out:
            Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
            with open(cfg.out, "w") as fh:
                bench.write_csv(rows, bench.SINGLE_COLUMNS, fh)
        _dump_extras(args, cfg)
    except (ArithmeticError, ValueError, MemoryError) as exc:
        print(f"gameopt: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
