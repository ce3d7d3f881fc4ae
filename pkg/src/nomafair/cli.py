"""Command-line entry point: ``nomafair metric | region | simulate``.

Exit codes: 0 success, 2 usage, 3 config, 4 I/O.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .channel import FADING_MODES, SimConfig
from .experiments import (
    DEFAULT_DISTRIBUTION_DROPS,
    DEFAULT_P0_GRID,
    DEFAULT_SWEEP_TRIALS,
    N_HIST_BINS,
    SCHEMES,
    run_distribution,
    run_fairness_sweep,
)
from .fairness import fairness_threshold, noma_more_fair
from .rates import dbm_to_mw, make_channels
from .region import noma_boundary, oma_boundary

log = logging.getLogger("nomafair")

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_IO = 0, 2, 3, 4


class ConfigError(Exception):
    pass


def fmt(x) -> str:
    """Numbers go out with 12 significant digits."""
    if isinstance(x, (bool, str)):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"


# --------------------------------------------------------------------------
# config files: flat ``key = value`` lines, ``#`` comments

_CONFIG_KEYS = {
    "cell_radius": float,
    "n_subcarriers": int,
    "users_per_subcarrier": int,
    "noise_dbm": float,
    "p0_dbm": float,
    "fading": str,
    "min_distance": float,
    "shadowing_db": float,
    "trials": int,
    "seed": int,
    "p0_grid": str,
}


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value!r}") from None
    return out


def parse_grid(spec: str) -> tuple[float, ...]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    try:
        if ":" in spec:
            start, stop, step = (float(s) for s in spec.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(round(start + i * step, 12) for i in range(n))
        grid = tuple(float(s) for s in spec.split(",") if s.strip())
    except ValueError:
        raise ConfigError(f"bad p0 grid {spec!r}, expected start:stop:step") from None
    if not grid:
        raise ConfigError("empty p0 grid")
    return grid


# --------------------------------------------------------------------------
# output helpers


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _positive(name):
    def conv(s):
        try:
            v = float(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {s!r}") from None
        if not (v > 0 and math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {s!r}")
        return v
    return conv


# --------------------------------------------------------------------------
# commands


def cmd_metric(args) -> int:
    if args.gamma is not None:
        if args.g1 is not None or args.g2 is not None:
            args.parser.error("give either --gamma or --g1/--g2, not both")
        d = fairness_threshold(args.gamma)
    else:
        if args.g1 is None or args.g2 is None:
            args.parser.error("give --gamma, or both --g1 and --g2")
        ch = make_channels((args.g1, args.g2), dbm_to_mw(args.p0_dbm), dbm_to_mw(args.noise_dbm))
        d = noma_more_fair(ch)
    out = {
        "gamma": d.gamma,
        "beta": d.beta,
        "beta_high_snr": d.beta_high_snr,
        "ratio_threshold": d.ratio_threshold,
    }
    if d.noma_more_fair is not None:
        out.update(gain_ratio=d.gain_ratio, noma_more_fair=d.noma_more_fair, verdict=d.scheme)
    print(json.dumps(out))
    return EXIT_OK


def cmd_region(args) -> int:
    ch = make_channels((args.g1, args.g2), dbm_to_mw(args.p0_dbm), dbm_to_mw(args.noise_dbm))
    noma = noma_boundary(ch, args.n_samples)
    oma = oma_boundary(ch, args.n_samples)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    header = ("r1_bps_hz", "r2_bps_hz")
    write_csv(out / "noma_boundary.csv", header, ((p.r1, p.r2) for p in noma.samples))
    write_csv(out / "oma_boundary.csv", header, ((p.r1, p.r2) for p in oma.samples))
    corners = [("A", noma.corner_points["A"]), ("B", noma.corner_points["B"]), ("C", oma.corner_points["C"])]
    write_csv(out / "corners.csv", ("label",) + header, ((k, p.r1, p.r2) for k, p in corners))
    return EXIT_OK


def _sim_config(args) -> tuple[SimConfig, tuple[float, ...]]:
    values = {}
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from None
        values = parse_config_text(text)
    grid_spec = values.pop("p0_grid", None)
    for key in ("seed", "trials", "p0_dbm", "fading"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    if args.p0_grid is not None:
        grid_spec = args.p0_grid
    grid = parse_grid(grid_spec) if grid_spec else DEFAULT_P0_GRID
    try:
        cfg = SimConfig(**values)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg, grid


def _emit_sweep(cfg, grid, out: Path, threads: int, written: list[str]) -> None:
    res = run_fairness_sweep(cfg, grid, threads=threads)
    written.append("sweep.csv")
    rows = zip(res.p0_grid, res.prob_metric, res.prob_metric_hsnr, res.prob_actual, res.n_trials, res.n_ties)
    write_csv(out / "sweep.csv",
              ("p0_dbm", "prob_metric", "prob_metric_hsnr", "prob_actual", "n_trials", "n_ties"), rows)


def _emit_distribution(cfg, out: Path, threads: int, written: list[str]) -> None:
    res = run_distribution(cfg, threads=threads)
    edges = res.bin_edges
    for s in SCHEMES:
        name = s.lower()
        dens = res.pdf_density(s)
        written += [f"pdf_{name}.csv", f"cdf_{name}.csv"]
        write_csv(out / f"pdf_{name}.csv", ("bin_lo_bps_hz", "bin_hi_bps_hz", "mass", "density"),
                  zip(edges[:-1], edges[1:], res.pdf_mass[s], dens))
        xs, ps = res.cdf[s]
        write_csv(out / f"cdf_{name}.csv", ("rate_bps_hz", "cdf"), zip(xs, ps))
    summary = {
        "jain": {s.lower(): float(fmt(v)) for s, v in res.jain.items()},
        "p10_bps_hz": {s.lower(): float(fmt(v)) for s, v in res.p10.items()},
        "noma_selection_fraction": float(fmt(res.noma_selection_fraction)),
        "n_drops": res.n_drops,
        "n_users_pooled": int(res.samples["NOMA"].size),
    }
    written.append("summary.json")
    write_json(out / "summary.json", summary)


def cmd_simulate(args) -> int:
    cfg, grid = _sim_config(args)
    out = Path(args.out)
    started = datetime.now(timezone.utc).isoformat()
    written: list[str] = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.experiment == "sweep":
            _emit_sweep(cfg, grid, out, args.threads, written)
        else:
            _emit_distribution(cfg, out, args.threads, written)
        manifest = {
            "artifact": "nomafair",
            "version": __version__,
            "experiment": args.experiment,
            "seed": cfg.seed,
            "config": cfg.as_dict(),
            "p0_grid_dbm": list(grid) if args.experiment == "sweep" else None,
            "threads": args.threads,
            "defaults": {
                "sweep_trials_per_point": DEFAULT_SWEEP_TRIALS,
                "distribution_drops": DEFAULT_DISTRIBUTION_DROPS,
                "histogram_bins": N_HIST_BINS,
                "note": "trial counts and histogram binning are implementation choices",
            },
            "started_utc": started,
            "finished_utc": datetime.now(timezone.utc).isoformat(),
            "outputs": {name: sha256_file(out / name) for name in written},
        }
        write_json(out / "manifest.json", manifest)
    except BaseException:
        for name in written + ["manifest.json"]:
            try:
                (out / name).unlink()
            except OSError:
                pass
        raise
    log.info("wrote %d files to %s", len(written) + 1, out)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nomafair", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def channel_flags(sp, required):
        sp.add_argument("--g1", type=_positive("--g1"), required=required, help="channel power gain of user 1 (linear)")
        sp.add_argument("--g2", type=_positive("--g2"), required=required, help="channel power gain of user 2 (linear)")
        sp.add_argument("--p0-dbm", type=float, default=20.0, help="transmit power per user [dBm]")
        sp.add_argument("--noise-dbm", type=float, default=-90.0, help="noise power [dBm]")

    m = sub.add_parser("metric", help="fairness threshold for a given SNR or user pair")
    m.add_argument("--gamma", type=_positive("--gamma"), help="aggregate SNR (linear)")
    channel_flags(m, required=False)
    m.set_defaults(func=cmd_metric, parser=m)

    r = sub.add_parser("region", help="two-user NOMA/OMA capacity-region boundaries as CSV")
    channel_flags(r, required=True)
    r.add_argument("--n-samples", type=int, default=101)
    r.add_argument("--out", required=True, help="output directory")
    r.set_defaults(func=cmd_region, parser=r)

    s = sub.add_parser("simulate", help="Monte Carlo experiments")
    s.add_argument("--config", help="key=value config file")
    s.add_argument("--experiment", choices=("sweep", "distribution"), required=True)
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--p0-dbm", type=float)
    s.add_argument("--p0-grid", help="start:stop:step in dBm, stop inclusive")
    s.add_argument("--fading", choices=FADING_MODES)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_simulate, parser=s)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "n_samples", 2) < 2:
        args.parser.error("--n-samples must be at least 2")
    if getattr(args, "threads", 1) < 1:
        args.parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"nomafair: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"nomafair: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
