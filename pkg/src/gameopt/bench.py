"""Pricing harness behind the CLI: single runs, the benchmark table sweep, CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from gameopt import golden
from gameopt.config import RunConfig
from gameopt.core import Method, PriceEstimate
from gameopt.crr import price_game_crr
from gameopt.lsmc import price_lsmc_std, price_lsmc_two_step
from gameopt.paths import simulate_paths
from gameopt.pde import GridSpec, price_game_cn

METHOD_TAGS = {"lsmc": Method.LSMC_STD, "two_step": Method.LSMC_TWO_STEP,
               "crr": Method.CRR_TREE, "pde": Method.CN_PDE}

TABLE_COLUMNS = [
    "delta", "sigma", "strike", "lsmc_std", "lsmc_std_se", "lsmc_two_step", "lsmc_two_step_se",
    "crr", "pde", "abs_gap_std_vs_crr", "abs_gap_two_step_vs_crr",
    "table", "printed_sigma", "printed_strike", "spot", "rate", "maturity",
    "paper_lsmc_std", "paper_lsmc_two_step", "paper_crr", "paper_pde",
    "paths", "mc_steps", "seed", "seeds", "degree", "tree_steps", "grid_space", "grid_time", "smax_factor",
]


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6f}"


def _combine(estimates: list[PriceEstimate], seeds: list[int]) -> PriceEstimate:
    # mean of independent per-seed estimates; its standard error pools the per-seed SEs
    n = len(estimates)
    price = sum(e.price for e in estimates) / n
    se = math.sqrt(sum(e.std_error**2 for e in estimates)) / n
    settings = dict(estimates[0].settings)
    settings.update(seed=seeds[0], seeds=n)
    return PriceEstimate(price=price, std_error=se, method=estimates[0].method, settings=settings)


def price_mc(cfg: RunConfig, methods=("lsmc", "two_step"), path_workers: int = 1) -> dict[str, PriceEstimate]:
    """Paired MC run: each seed's PathSet is shared by both LSMC variants."""
    market, contract = cfg.market, cfg.contract
    per_method: dict[str, list[PriceEstimate]] = {m: [] for m in methods}
    for seed in cfg.seed_list:
        ps = simulate_paths(market, contract.maturity, cfg.paths, cfg.mc_steps, seed, workers=path_workers)
        if "lsmc" in per_method:
            per_method["lsmc"].append(price_lsmc_std(ps, contract, market, cfg.degree))
        if "two_step" in per_method:
            per_method["two_step"].append(price_lsmc_two_step(ps, contract, market, cfg.degree))
    return {m: _combine(ests, cfg.seed_list) for m, ests in per_method.items()}


def price_all(cfg: RunConfig, path_workers: int = 1) -> dict[str, PriceEstimate]:
    """Price the configured contract with every selected method, in canonical method order."""
    out: dict[str, PriceEstimate] = {}
    mc = [m for m in cfg.methods if m in ("lsmc", "two_step")]
    if mc:
        out.update(price_mc(cfg, mc, path_workers))
    if "crr" in cfg.methods:
        out["crr"] = price_game_crr(cfg.market, cfg.contract, cfg.tree_steps)
    if "pde" in cfg.methods:
        grid = GridSpec.for_contract(cfg.market, cfg.contract, cfg.grid_space, cfg.grid_time, cfg.smax_factor)
        out["pde"] = price_game_cn(cfg.market, cfg.contract, grid)
    return {m: out[m] for m in cfg.methods if m in out}


SINGLE_COLUMNS = ["method", "price", "std_error", "spot", "rate", "vol", "strike", "maturity", "penalty",
                  "paths", "mc_steps", "seed", "seeds", "degree", "tree_steps", "grid_space", "grid_time",
                  "smax_factor"]


def single_rows(cfg: RunConfig, results: dict[str, PriceEstimate]) -> list[dict[str, str]]:
    rows = []
    resolved = cfg.resolved()
    for key, est in results.items():
        row = {"method": est.method.value, "price": fmt(est.price), "std_error": fmt(est.std_error)}
        for col in SINGLE_COLUMNS[3:]:
            row[col] = fmt(resolved[col])
        rows.append(row)
    return rows


def format_single_table(rows: list[dict[str, str]]) -> str:
    lines = [f"{'method':<12} {'price':>12} {'std_error':>12}"]
    for row in rows:
        lines.append(f"{row['method']:<12} {row['price']:>12} {row['std_error'] or '-':>12}")
    return "\n".join(lines)


def write_csv(rows: list[dict[str, str]], columns: list[str], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def cell_config(cfg: RunConfig, cell: golden.Cell) -> RunConfig:
    return replace(cfg, spot=golden.SPOT, rate=golden.RATE, maturity=golden.MATURITY,
                   vol=cell.vol, strike=cell.strike, penalty=cell.penalty, provenance=cfg.provenance)


def table_row(cfg: RunConfig, cell: golden.Cell) -> dict[str, str]:
    """Price one benchmark cell. Failures become annotated cells rather than exceptions."""
    ccfg = cell_config(cfg, cell)
    row = {
        "delta": fmt(cell.penalty), "sigma": fmt(cell.vol), "strike": fmt(cell.strike),
        "table": str(cell.table), "printed_sigma": fmt(cell.printed_vol),
        "printed_strike": fmt(cell.printed_strike), "spot": fmt(ccfg.spot), "rate": fmt(ccfg.rate),
        "maturity": fmt(ccfg.maturity), "paper_lsmc_std": fmt(cell.lsmc_std),
        "paper_lsmc_two_step": fmt(cell.lsmc_two_step), "paper_crr": fmt(cell.crr), "paper_pde": fmt(cell.pde),
    }
    for key in ("paths", "mc_steps", "seed", "seeds", "degree", "tree_steps", "grid_space", "grid_time",
                "smax_factor"):
        row[key] = fmt(getattr(ccfg, key))

    values: dict[str, float | None] = {}
    try:
        mc = price_mc(ccfg)
        values["lsmc_std"], values["lsmc_std_se"] = mc["lsmc"].price, mc["lsmc"].std_error
        values["lsmc_two_step"], values["lsmc_two_step_se"] = mc["two_step"].price, mc["two_step"].std_error
    except Exception as exc:  # noqa: BLE001 - the sweep keeps going
        for k in ("lsmc_std", "lsmc_std_se", "lsmc_two_step", "lsmc_two_step_se"):
            row[k] = f"error: {exc}"
    try:
        values["crr"] = price_game_crr(ccfg.market, ccfg.contract, ccfg.tree_steps).price
    except Exception as exc:  # noqa: BLE001
        row["crr"] = f"error: {exc}"
    try:
        grid = GridSpec.for_contract(ccfg.market, ccfg.contract, ccfg.grid_space, ccfg.grid_time,
                                     ccfg.smax_factor)
        values["pde"] = price_game_cn(ccfg.market, ccfg.contract, grid).price
    except Exception as exc:  # noqa: BLE001
        row["pde"] = f"error: {exc}"

    for k, v in values.items():
        row[k] = fmt(v)
    if "crr" in values:
        for src, dst in (("lsmc_std", "abs_gap_std_vs_crr"), ("lsmc_two_step", "abs_gap_two_step_vs_crr")):
            if src in values:
                row[dst] = fmt(abs(values[src] - values["crr"]))
    for col in TABLE_COLUMNS:
        row.setdefault(col, "")
    return row


def _row_job(args):
    return table_row(*args)


def sweep(cfg: RunConfig, cells=golden.CELLS) -> list[dict[str, str]]:
    """Price every cell; rows come back in cell order whatever the worker count."""
    jobs = [(cfg, c) for c in cells]
    if cfg.workers <= 1:
        return [_row_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_row_job, jobs))


def closer_count(rows: list[dict[str, str]]) -> tuple[int, int]:
    """(cells where two-step is nearer the tree than standard LSMC, cells compared)."""
    wins = total = 0
    for row in rows:
        try:
            g_std = float(row["abs_gap_std_vs_crr"])
            g_two = float(row["abs_gap_two_step_vs_crr"])
        except ValueError:
            continue
        total += 1
        wins += g_two < g_std
    return wins, total


def run_tables(cfg: RunConfig, output_dir: str | Path) -> tuple[list[Path], str]:
    """Write table1.csv / table2.csv and summary.txt; return the paths and the summary line."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sweep(cfg)
    files = []
    for table in (1, 2):
        buf = io.StringIO()
        write_csv([r for r in rows if r["table"] == str(table)], TABLE_COLUMNS, buf)
        path = out / f"table{table}.csv"
        path.write_text(buf.getvalue())
        files.append(path)
    wins, total = closer_count(rows)
    summary = f"two_step_closer_count = {wins} of {total}"
    (out / "summary.txt").write_text(summary + "\n")
    return files, summary
