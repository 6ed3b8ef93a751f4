"""Command-line front end.

Subcommands reproduce the package's benchmark artifacts as self-describing
CSV/JSON files (every artifact records its full configuration in '#' header
lines or JSON fields):

* ``table1``       - Gaussian-vs-8-PAM rate and optimal-grain table over SNRs
* ``grain-sweep``  - rate versus grain curve for one input kind, plus argmax
* ``rotate-sweep`` - rotation-angle sweep with achievable-region polygons
* ``ud-check``     - unique-decodability report for a constellation pair
* ``mc-check``     - Monte Carlo cross-check of an analytic rate

Exit status is 0 when every requested computation completed; any failure
prints a one-line JSON error record to stderr and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .mi_discrete import cond_mi_discrete
from .mi_gaussian import DEFAULT_QUAD_ORDER, cond_mi_gaussian
from .model import (
    ChannelConfig,
    Constellation,
    UniformQuantizer,
    constellation_from_spec,
    rotate,
)
from .montecarlo import mc_cond_mi, mc_cond_mi_gaussian
from .search import (
    achievable_region,
    grain_sweep,
    rotation_sweep,
    ud_check,
    write_csv_table,
)

_NAMED_CONSTELLATIONS = ("bpsk", "qpsk", "pam4", "pam8")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors are machine-readable."""

    def error(self, message):  # noqa: A002 - argparse signature
        print(json.dumps({"error": "usage", "message": message}), file=sys.stderr)
        raise SystemExit(2)


def _parse_grid(text: str) -> np.ndarray:
    """Parse ``lo:step:hi`` into an inclusive grid."""
    try:
        lo, step, hi = (float(tok) for tok in text.split(":"))
    except ValueError as exc:
        raise ValueError(f"grid must look like lo:step:hi, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise ValueError(f"bad grid bounds {text!r}")
    count = int(round((hi - lo) / step)) + 1
    grid = lo + step * np.arange(count)
    return grid[grid <= hi + 1e-12 * max(1.0, abs(hi))]


def _parse_floats(text: str, count: int, what: str) -> list[float]:
    vals = [float(tok) for tok in text.split(",")]
    if len(vals) != count:
        raise ValueError(f"{what} needs {count} comma-separated values")
    return vals


def _snr_list(args) -> list[float]:
    snrs = [float(s) for s in args.snr or []]
    snrs += [10.0 ** (float(db) / 10.0) for db in args.snr_db or []]
    if not snrs:
        raise ValueError("give at least one --snr or --snr-db")
    if any(s <= 0 for s in snrs):
        raise ValueError("SNR must be positive")
    return snrs


def _config_for(args, power1: float, power2: float | None = None) -> ChannelConfig:
    a, b, c, d = _parse_floats(args.gains, 4, "--gains")
    return ChannelConfig(
        self1=a,
        cross1=b,
        cross2=c,
        self2=d,
        noise_var=args.noise_var,
        power1=power1,
        power2=power1 if power2 is None else power2,
    )


def _load_constellation(spec: str, power: float) -> Constellation:
    """Named constellation at the given power, or a JSON file rescaled to it."""
    if spec.lower() in _NAMED_CONSTELLATIONS:
        return constellation_from_spec(spec, power)
    doc = json.loads(Path(spec).read_text())
    c = Constellation.from_json(doc)
    if c.power <= 0:
        raise ValueError("constellation file must declare positive power")
    return c.scaled(math.sqrt(power / c.power))


def _gains_header(args) -> str:
    return args.gains


def _write_plot_script(out_csv: Path, ycol: int, title: str) -> Path:
    script = out_csv.with_suffix(".gp")
    script.write_text(
        "set datafile separator ','\n"
        "set datafile commentschars '#'\n"
        f"set title '{title}'\n"
        f"plot '{out_csv.name}' using 1:{ycol} with lines notitle\n"
    )
    return script


def _add_common_flags(p: argparse.ArgumentParser, *, snr: bool = True) -> None:
    if snr:
        p.add_argument("--snr", action="append", metavar="S",
                       help="linear SNR (repeatable)")
        p.add_argument("--snr-db", action="append", metavar="DB",
                       help="SNR in dB (repeatable)")
    p.add_argument("--levels", type=int, default=8, metavar="M",
                   help="quantizer cells per dimension (default 8)")
    p.add_argument("--levels2", type=int, default=None, metavar="N",
                   help="cells of the second dimension (default: matches --levels when 2-D)")
    p.add_argument("--gains", default="1,1,1,1", metavar="a,b,c,d",
                   help="channel gains (default all 1)")
    p.add_argument("--noise-var", type=float, default=1.0,
                   help="total noise variance (default 1)")
    p.add_argument("--out", required=True, metavar="PATH",
                   help="output artifact path")


def _cmd_table1(args) -> None:
    snrs = _snr_list(args)
    q_grid = _parse_grid(args.grain_grid)
    rows = []
    for snr in snrs:
        cfg = _config_for(args, snr * args.noise_var)
        gauss = grain_sweep(
            lambda q: cond_mi_gaussian(
                cfg, UniformQuantizer(args.levels, q), args.quad_order
            ),
            q_grid,
        )
        pam = constellation_from_spec("pam8", cfg.power1)
        pam2 = constellation_from_spec("pam8", cfg.power2)
        disc = grain_sweep(
            lambda q: cond_mi_discrete(
                "1to2", pam, pam2, cfg, UniformQuantizer(args.levels, q)
            ),
            q_grid,
        )
        rows.append(
            (
                snr,
                gauss.objective[gauss.best_index],
                gauss.argmax,
                disc.objective[disc.best_index],
                disc.argmax,
            )
        )
    write_csv_table(
        args.out,
        ("snr", "gaussian_r1", "gaussian_grain", "pam8_r1", "pam8_grain"),
        rows,
        {
            "command": "table1",
            "levels": args.levels,
            "grain_grid": args.grain_grid,
            "gains": _gains_header(args),
            "noise_var": args.noise_var,
            "quad_order": args.quad_order,
        },
    )


def _cmd_grain_sweep(args) -> None:
    snrs = _snr_list(args)
    if len(snrs) != 1:
        raise ValueError("grain-sweep takes exactly one SNR")
    snr = snrs[0]
    q_grid = _parse_grid(args.grain_grid)
    cfg = _config_for(args, snr * args.noise_var)
    kind = args.input
    if kind == "gaussian":
        if args.levels2:
            raise ValueError("gaussian inputs use a 1-D quantizer")

        def rate_fn(q: float) -> float:
            return cond_mi_gaussian(
                cfg, UniformQuantizer(args.levels, q), args.quad_order
            )

    else:
        c1 = _load_constellation(kind, cfg.power1)
        c2 = _load_constellation(kind, cfg.power2)
        levels2 = args.levels2
        if levels2 is None and not (c1.is_1d and c2.is_1d):
            levels2 = args.levels

        def rate_fn(q: float) -> float:
            qz = UniformQuantizer(args.levels, q, levels2=levels2 or 0)
            return cond_mi_discrete("1to2", c1, c2, cfg, qz)

    sweep = grain_sweep(rate_fn, q_grid)
    sweep.write_csv(
        args.out,
        {
            "command": "grain-sweep",
            "input": kind,
            "snr": snr,
            "levels": args.levels,
            "levels2": args.levels2 or 0,
            "gains": _gains_header(args),
            "noise_var": args.noise_var,
        },
    )
    if args.plot:
        _write_plot_script(Path(args.out), 2, f"rate vs grain ({kind}, snr={snr:g})")


def _region_rows(polygon) -> list[tuple[float, float]]:
    return [(x, y) for x, y in polygon.vertices]


def _cmd_rotate_sweep(args) -> None:
    snrs = _snr_list(args)
    theta_grid = _parse_grid(args.theta_grid)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    levels2 = args.levels2 if args.levels2 is not None else args.levels
    qz = UniformQuantizer(args.levels, args.grain, levels2=levels2)
    summary = []
    for snr in snrs:
        cfg = _config_for(args, snr * args.noise_var)
        c = _load_constellation(args.constellation, cfg.power1)
        sweep = rotation_sweep(c, cfg, qz, theta_grid)
        tag = f"snr{snr:g}"
        header = {
            "command": "rotate-sweep",
            "constellation": args.constellation,
            "snr": snr,
            "levels": args.levels,
            "levels2": levels2,
            "grain": args.grain,
            "gains": _gains_header(args),
            "noise_var": args.noise_var,
        }
        sweep.write_csv(outdir / f"sweep_{tag}.csv", header)
        with_rot = achievable_region(sweep.rates)
        base_idx = int(np.argmin(np.abs(np.asarray(sweep.grid))))
        without_rot = achievable_region([sweep.rates[base_idx]])
        write_csv_table(
            outdir / f"region_rotated_{tag}.csv",
            ("r1", "r2"),
            _region_rows(with_rot),
            header,
        )
        write_csv_table(
            outdir / f"region_fixed_{tag}.csv",
            ("r1", "r2"),
            _region_rows(without_rot),
            header,
        )
        ud_angles = [
            theta
            for theta in sweep.grid
            if ud_check(c, rotate(c, theta), cfg, qz).is_ud
        ]
        best_ud = None
        if ud_angles:
            best_ud = max(
                ud_angles,
                key=lambda t: sweep.objective[sweep.grid.index(t)],
            )
        summary.append(
            {
                "snr": snr,
                "theta_best": sweep.argmax,
                "sum_rate_best": sweep.objective[sweep.best_index],
                "rates_best": [sweep.best_rates.r1, sweep.best_rates.r2],
                "theta_best_ud": best_ud,
                "ud_angles": ud_angles,
            }
        )
        if args.plot:
            _write_plot_script(
                outdir / f"sweep_{tag}.csv", 4,
                f"sum rate vs rotation ({args.constellation}, snr={snr:g})",
            )
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


def _cmd_ud_check(args) -> None:
    p1, p2 = _parse_floats(args.power, 2, "--power")
    cfg = _config_for(args, p1, p2)
    c1 = _load_constellation(args.constellation, p1)
    spec2 = args.constellation2 or args.constellation
    c2 = _load_constellation(spec2, p2)
    if args.theta:
        c2 = rotate(c2, args.theta)
    levels2 = args.levels2
    if levels2 is None and not (c1.is_1d and c2.is_1d):
        levels2 = args.levels
    qz = UniformQuantizer(args.levels, args.grain, levels2=levels2 or 0)
    report = ud_check(c1, c2, cfg, qz)
    doc = {
        "command": "ud-check",
        "constellation": args.constellation,
        "constellation2": spec2,
        "theta": args.theta,
        "power": [p1, p2],
        "levels": args.levels,
        "levels2": levels2 or 0,
        "grain": args.grain,
        "gains": _gains_header(args),
    }
    doc.update(report.to_json())
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")


def _cmd_mc_check(args) -> None:
    snrs = _snr_list(args)
    if len(snrs) != 1:
        raise ValueError("mc-check takes exactly one SNR")
    snr = snrs[0]
    cfg = _config_for(args, snr * args.noise_var)
    if args.input == "gaussian":
        if args.levels2:
            raise ValueError("gaussian inputs use a 1-D quantizer")
        qz = UniformQuantizer(args.levels, args.grain)
        analytic = cond_mi_gaussian(cfg, qz, args.quad_order)
        est = mc_cond_mi_gaussian(cfg, qz, args.samples, args.seed)
    else:
        c1 = _load_constellation(args.input, cfg.power1)
        c2 = _load_constellation(args.input, cfg.power2)
        levels2 = args.levels2
        if levels2 is None and not (c1.is_1d and c2.is_1d):
            levels2 = args.levels
        qz = UniformQuantizer(args.levels, args.grain, levels2=levels2 or 0)
        analytic = cond_mi_discrete("1to2", c1, c2, cfg, qz)
        est = mc_cond_mi("1to2", c1, c2, cfg, qz, args.samples, args.seed)
    doc = {
        "command": "mc-check",
        "input": args.input,
        "snr": snr,
        "levels": args.levels,
        "grain": args.grain,
        "samples": args.samples,
        "seed": args.seed,
        "analytic": analytic,
        "estimate": est.value,
        "stderr": est.stderr,
        "sigmas_off": abs(analytic - est.value) / est.stderr if est.stderr else 0.0,
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtwc", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="Gaussian vs 8-PAM rates and optimal grains")
    _add_common_flags(p)
    p.add_argument("--grain-grid", default="0.05:0.05:3", metavar="LO:STEP:HI")
    p.add_argument("--quad-order", type=int, default=DEFAULT_QUAD_ORDER)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("grain-sweep", help="rate vs grain curve for one input kind")
    _add_common_flags(p)
    p.add_argument("--input", default="gaussian",
                   help="gaussian, a named constellation, or a JSON file")
    p.add_argument("--grain-grid", default="0.05:0.05:3", metavar="LO:STEP:HI")
    p.add_argument("--quad-order", type=int, default=DEFAULT_QUAD_ORDER)
    p.add_argument("--plot", action="store_true", help="emit a gnuplot script")
    p.set_defaults(func=_cmd_grain_sweep)

    p = sub.add_parser("rotate-sweep", help="rotation sweep plus region polygons")
    _add_common_flags(p)
    p.add_argument("--constellation", default="qpsk",
                   help="named constellation or JSON file")
    p.add_argument("--theta-grid", default="0:1:90", metavar="LO:STEP:HI")
    p.add_argument("--grain", type=float, default=1.0)
    p.add_argument("--plot", action="store_true", help="emit gnuplot scripts")
    p.set_defaults(func=_cmd_rotate_sweep)

    p = sub.add_parser("ud-check", help="unique-decodability report for a pair")
    _add_common_flags(p, snr=False)
    p.add_argument("--constellation", required=True)
    p.add_argument("--constellation2", default=None,
                   help="second user's constellation (default: same as first)")
    p.add_argument("--theta", type=float, default=0.0,
                   help="rotation applied to the second constellation, degrees")
    p.add_argument("--grain", type=float, default=1.0)
    p.add_argument("--power", default="1,1", metavar="P1,P2")
    p.set_defaults(func=_cmd_ud_check)

    p = sub.add_parser("mc-check", help="Monte Carlo cross-check of a rate")
    _add_common_flags(p)
    p.add_argument("--input", default="gaussian")
    p.add_argument("--grain", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, required=True,
                   help="RNG seed (required: runs must be reproducible)")
    p.add_argument("--quad-order", type=int, default=DEFAULT_QUAD_ORDER)
    p.set_defaults(func=_cmd_mc_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001 - error record contract
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
