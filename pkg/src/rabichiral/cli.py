"""Command-line front end: ``rabichiral {sweep,tables,crossings,truncation,check}``.

Exit codes: 0 success, 2 table-verification failure, 3 invalid
configuration, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .chiral import e_low_total, select_epsilon
from .crossings import InconsistencyError, crossing_map
from .fc_numerics import (
    DomainError,
    TruncationTooSmall,
    ground_state,
    fc_ground,
    invert_G,
    photon_number,
    truncation_breakdown,
    truncation_rule,
)
from .model import ModelParams, as_epsilon, validate

EXIT_OK, EXIT_TABLES, EXIT_CONFIG, EXIT_INCONSISTENT = 0, 2, 3, 4

COLUMNS = (
    "g_over_omega", "e_low", "e_upp", "E_jc_eps", "chiral_part", "E_low", "E_lbd", "E_ubd",
    "nu_star", "nu_star2", "E_fc_numeric", "E1_numeric", "E_diff_numeric", "G_of_g", "N_expect",
    "epsilon_used", "n_max_used", "flags",
)
ROUNDOFF = 1e-12


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    omega_ratio: float = 1.0
    g_min: float = 0.0
    g_max: float = 3.0
    g_step: float = 0.01
    epsilon: float | None = None  # None selects the schedule
    n_max: int | None = None  # None selects auto truncation
    columns: tuple[str, ...] = COLUMNS
    format: str = "csv"
    jobs: int = 1
    check_params: bool = True

    def __post_init__(self):
        if not self.g_step > 0:
            raise ConfigError("g_step must be positive")
        if not self.g_min <= self.g_max:
            raise ConfigError("g_min must not exceed g_max")
        if self.g_min < 0:
            raise ConfigError("g_min must be non-negative")
        if self.epsilon is not None:
            try:
                as_epsilon(self.epsilon)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.n_max is not None and self.n_max < 2:
            raise ConfigError("n_max must be >= 2")
        unknown = [c for c in self.columns if c not in COLUMNS]
        if unknown:
            raise ConfigError(f"unknown columns: {', '.join(unknown)}")
        if self.check_params:
            _check_ratio(self.omega_ratio)

    def grid(self) -> list[float]:
        count = int(math.floor((self.g_max - self.g_min) / self.g_step + 1e-9)) + 1
        return [round(self.g_min + k * self.g_step, 12) for k in range(count)]

    def warnings(self) -> list[str]:
        out = []
        if self.n_max is not None and self.n_max < truncation_rule(self.g_max):
            out.append(f"n_max={self.n_max} below truncation_rule(g_max)={truncation_rule(self.g_max)}")
        return out


def sweep_row(cfg: SweepConfig, g: float) -> dict:
    """One sweep row; truncation and invariant problems go into ``flags``."""
    p = ModelParams(omega_a=cfg.omega_ratio, g=g)
    eps = select_epsilon(g) if cfg.epsilon is None else cfg.epsilon
    rep = e_low_total(p, eps, check=True)
    row = dict.fromkeys(COLUMNS, math.nan)
    row.update(
        g_over_omega=g, e_low=rep.e_low, e_upp=rep.e_upp, E_jc_eps=rep.E_jc, chiral_part=rep.chiral_part,
        E_low=rep.E_low, E_lbd=rep.E_lbd, E_ubd=rep.E_ubd, nu_star=rep.indices.nu_star_abs,
        nu_star2=rep.indices.nu_star2_abs, epsilon_used=eps,
    )
    flags = []
    try:
        state = ground_state(p, cfg.n_max)
    except TruncationTooSmall:
        row.update(n_max_used=cfg.n_max, flags="truncation_too_small")
        return row
    E0, E1, _ = fc_ground(p, state.n_max)
    row.update(E_fc_numeric=E0, E1_numeric=E1, E_diff_numeric=E0 - rep.E_low,
               N_expect=photon_number(p, state=state), n_max_used=state.n_max)
    try:
        row["G_of_g"] = invert_G(p, E0)
    except DomainError:
        flags.append("G_domain")
    if not rep.e_low - ROUNDOFF <= E0 <= rep.e_upp + ROUNDOFF:
        flags.append("sandwich")
    if not rep.E_low + max(0.0, rep.E_lbd) - ROUNDOFF <= E0 <= rep.E_low + rep.E_ubd + ROUNDOFF:
        flags.append("E_low_bounds")
    if E0 - rep.E_low < -1e-9:
        flags.append("E_diff_negative")
    row["flags"] = ";".join(flags)
    return row


def _row_task(args):
    return sweep_row(*args)


def cmd_sweep(cfg: SweepConfig) -> list[dict]:
    """Rows in g order; ``jobs > 1`` computes them in worker processes."""
    tasks = [(cfg, g) for g in cfg.grid()]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(_row_task, tasks, chunksize=8))
    return [_row_task(t) for t in tasks]


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return "%.12g" % v
    if v is None:
        return ""
    return str(v)


def _csv_text(cols, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    w.writerows([_cell(r.get(c)) for c in cols] for r in rows)
    return buf.getvalue()


def to_csv(rows: list[dict], columns) -> str:
    return _csv_text([c for c in COLUMNS if c in columns], rows)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_json(rows: list[dict], columns, metadata: dict) -> str:
    cols = [c for c in COLUMNS if c in columns]
    body = {"metadata": metadata, "rows": [{c: _jsonable(r.get(c)) for c in cols} for r in rows]}
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def _metadata(cfg: SweepConfig, warnings: list[str]) -> dict:
    conf = asdict(cfg)
    conf["columns"] = list(conf["columns"])
    conf["epsilon"] = "schedule" if cfg.epsilon is None else cfg.epsilon
    conf["n_max"] = "auto" if cfg.n_max is None else cfg.n_max
    return {"version": __version__, "config": conf, "warnings": warnings}


def render_tables(numeric: bool = True) -> tuple[str, bool]:
    from .tables import reproduce_all

    out, all_ok = [], True
    for tid, rows in reproduce_all(numeric=numeric).items():
        out.append(f"Table {tid}")
        for r in rows:
            eps = "g" if r.eps is None else f"{r.eps:.2f}"
            out.append(f"  [{r.indices[0]},{r.indices[1]}]({eps})  g in ({r.region[0]:g}, {r.region[1]:g})"
                       f"  chiral: {r.chiral_part}  bound: {r.bound}")
            for c in r.cells:
                status = "PASS" if c.ok else "FAIL"
                note = f"  ({c.note})" if c.note else ""
                out.append(f"    {status} {c.kind:<9} {c.label}: printed {c.printed}, computed {c.computed}{note}")
                all_ok &= c.ok
    out.append("ALL CELLS PASS" if all_ok else "SOME CELLS FAIL")
    return "\n".join(out) + "\n", all_ok


def crossing_rows(eps: float, g_max: float, omega_ratio: float = 1.0) -> list[dict]:
    p = ModelParams(omega_a=omega_ratio)
    rows = []
    for iv in crossing_map(p, eps, g_max):
        lo, hi = iv.wc_bracket if iv.wc_bracket else (math.nan, math.nan)
        rows.append({"level_index": iv.level_index, "g_lo": iv.g_lo, "g_hi": iv.g_hi, "wc_lo": lo, "sc_hi": hi})
    return rows


def truncation_rows(ns, step: float = 0.05) -> list[dict]:
    rows = []
    for n in ns:
        b = truncation_breakdown(int(n), step=step)
        rows.append({"n": b.n, "g_break": b.g_break, "sqrt_n": b.sqrt_n, "ratio": b.ratio})
    return rows


def _plain(rows: list[dict], fmt: str, meta: dict) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    if fmt == "json":
        return json.dumps({"metadata": meta, "rows": [{c: _jsonable(r[c]) for c in cols} for r in rows]}, indent=2) + "\n"
    return _csv_text(cols, rows)


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _float_or(value: str, word: str, kind=float):
    if value == word:
        return None
    try:
        return kind(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or '{word}', got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rabichiral", description="Rabi model ground-state bounds via chiral JC pairs.")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega-ratio", type=float, default=1.0, help="omega_a / omega_c (default 1)")
    common.add_argument("--off-resonance", action="store_true", help="required for omega_a != omega_c")
    common.add_argument("--allow-invalid", action="store_true",
                        help="skip the 1/2 <= omega_c/omega_a <= 1 check (results unsupported)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", parents=[common], help="tabulate bounds and numerics over g")
    sw.add_argument("--g-min", type=float, default=0.0)
    sw.add_argument("--g-max", type=float, default=3.0)
    sw.add_argument("--g-step", type=float, default=0.01)
    sw.add_argument("--epsilon", type=lambda s: _float_or(s, "schedule"), default=None,
                    help="fixed epsilon or 'schedule' (default)")
    sw.add_argument("--nmax", type=lambda s: _float_or(s, "auto", int), default=None, help="int or 'auto' (default)")
    sw.add_argument("--columns", default=None, help="comma-separated subset of columns")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")

    tb = sub.add_parser("tables", parents=[common], help="reproduce Tables I-VII with per-cell PASS/FAIL")
    tb.add_argument("--no-numeric", action="store_true", help="skip the numerical dominance cells")

    cr = sub.add_parser("crossings", parents=[common], help="ground-level intervals of the JC ladder")
    cr.add_argument("--epsilon", type=float, default=0.0)
    cr.add_argument("--g-max", type=float, default=5.0)

    tr = sub.add_parser("truncation", parents=[common], help="truncation breakdown against sqrt(n)")
    tr.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    tr.add_argument("--g-step", type=float, default=0.05)

    sub.add_parser("check", parents=[common], help="run the invariant suite")
    return ap


def _require_resonance_flag(args):
    if args.omega_ratio != 1.0 and not args.off_resonance:
        raise ConfigError("omega_a != omega_c requires --off-resonance")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _require_resonance_flag(args)
        if args.command == "sweep":
            cols = COLUMNS if args.columns is None else tuple(c.strip() for c in args.columns.split(",") if c.strip())
            cfg = SweepConfig(args.omega_ratio, args.g_min, args.g_max, args.g_step, args.epsilon, args.nmax,
                              cols, args.format, args.jobs, not args.allow_invalid)
            rows = cmd_sweep(cfg)
            warnings = cfg.warnings()
            flagged = sum(1 for r in rows if r["flags"])
            if flagged:
                warnings.append(f"{flagged} rows carry flags")
            text = to_json(rows, cols, _metadata(cfg, warnings)) if cfg.format == "json" else to_csv(rows, cols)
            for w in warnings:
                print(f"warning: {w}", file=sys.stderr)
            _write(text, args.out)
            return EXIT_OK
        if args.command == "tables":
            if args.omega_ratio != 1.0:
                raise ConfigError("table verification is defined at resonance only")
            text, ok = render_tables(numeric=not args.no_numeric)
            _write(text, args.out)
            return EXIT_OK if ok else EXIT_TABLES
        if args.command == "crossings":
            as_epsilon(args.epsilon)
            if not args.allow_invalid:
                _check_ratio(args.omega_ratio)
            rows = crossing_rows(args.epsilon, args.g_max, args.omega_ratio)
            _write(_plain(rows, args.format, {"version": __version__, "epsilon": args.epsilon}), args.out)
            return EXIT_OK
        if args.command == "truncation":
            if any(n < 10 for n in args.n):
                raise ConfigError("each n must be >= 10")
            rows = truncation_rows(args.n, args.g_step)
            _write(_plain(rows, args.format, {"version": __version__}), args.out)
            return EXIT_OK
        if args.command == "check":
            from .checks import run_all

            results = run_all()
            lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}" for r in results]
            _write("\n".join(lines) + "\n", args.out)
            return EXIT_OK if all(r.ok for r in results) else EXIT_INCONSISTENT
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_CONFIG


def _check_ratio(ratio: float):
    v = validate(ModelParams(omega_a=ratio))
    if not v.valid:
        raise ConfigError("; ".join(f"{x.field}: {x.message}" for x in v.violations))


if __name__ == "__main__":
    raise SystemExit(main())
