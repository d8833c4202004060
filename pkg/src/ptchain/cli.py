"""Command-line interface.

Subcommands
-----------
scatter     stationary transmission/reflection over a k or energy sweep
poles       complex-k pole census of the scattering denominator
threshold   gain/loss onset thresholds vs chain size
trajectory  pole trajectories over an ascending gamma sweep
evolve      wave-packet propagation snapshots and intensity bookkeeping
relevance   physicality verdict and special scattering points
figure      canned parameter presets (fig2a..fig8) for the above

Exit status: 0 success, 2 bad usage or out-of-range parameters, 3 numerical
failure (missed roots, non-convergence, eigendecomposition failure, ...).

Output is deterministic: identical inputs produce byte-identical files.
Floats are written with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from .dynamics import (
    LatticeLayout,
    build_hamiltonian,
    gaussian_packet,
    growth_rate_fit,
    intensity_split,
    prepare_propagator,
    evolve as evolve_state,
    validity_horizon,
)
from .errors import (
    InsufficientGrowth,
    NumericalFailure,
    OutOfRange,
    SpectralSingularityError,
)
from .model import ChainSpec, energy_to_wavenumber
from .poles import (
    SearchRegion,
    critical_size,
    find_poles,
    threshold_ladder,
    trace_trajectories,
)
from .presets import get_preset, preset_names
from .relevance import (
    RelevanceRegime,
    band_edge_points,
    cpa_laser_points,
    fabry_perot_points,
    transmission_vs_size,
    verdict,
)
from .scattering import scatter, transmission_closed_form

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


#==== formatting and file helpers ===========================================

def _fmt(value: Any) -> str:
    """One CSV cell. Floats use 17 significant digits; None is empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])


def _write_json(path: str, payload: dict[str, Any]) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=True)
        fh.write("\n")


def _finite_or_none(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


def _parse_region(text: str | None) -> SearchRegion | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise OutOfRange(
            f"--region wants 're_min,re_max,im_min,im_max', got {text!r}"
        )
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError:
        raise OutOfRange(f"--region values must be numbers, got {text!r}") from None
    return SearchRegion(a, b, c, d)


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _out(args: argparse.Namespace, default: str) -> str:
    return args.out if args.out else default


def _grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 1:
        raise OutOfRange(f"steps must be >= 1, got {steps}")
    if not lo < hi:
        raise OutOfRange(f"need min < max, got {lo!r} >= {hi!r}")
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


#==== scatter ===============================================================

_SCATTER_HEADER = (
    "energy",
    "k",
    "transmission",
    "reflection_left",
    "reflection_right",
    "physical",
    "singular",
)


def _run_scatter(spec: ChainSpec, k_values: Sequence[float], fmt: str, out: str) -> int:
    physical = verdict(spec).regime is RelevanceRegime.RELEVANT
    rows: list[list[Any]] = []
    for k in k_values:
        energy = -2.0 * math.cos(k)
        try:
            res = scatter(spec, k)
            rows.append([energy, k, res.T, res.R_left, res.R_right, physical, False])
        except SpectralSingularityError:
            rows.append([energy, k, None, None, None, physical, True])
    if fmt == "json":
        payload = {
            "n_cells": spec.n_cells,
            "gamma": spec.gamma,
            "physical": physical,
            "rows": [dict(zip(_SCATTER_HEADER, row)) for row in rows],
        }
        _write_json(out, payload)
    else:
        _write_csv(out, _SCATTER_HEADER, rows)
    print(f"wrote {len(rows)} rows -> {out}")
    return EXIT_OK


def cmd_scatter(args: argparse.Namespace) -> int:
    spec = ChainSpec(args.n, args.gamma)
    if args.k is not None:
        if not 0.0 < args.k < math.pi:
            raise OutOfRange(f"--k must lie in (0, pi), got {args.k!r}")
        ks = [args.k]
    else:
        e_min = args.e_min if args.e_min is not None else -1.99
        e_max = args.e_max if args.e_max is not None else 1.99
        if not (-2.0 < e_min < e_max < 2.0):
            raise OutOfRange(
                f"energy sweep must satisfy -2 < e_min < e_max < 2, got {e_min!r}, {e_max!r}"
            )
        ks = [energy_to_wavenumber(e) for e in _grid(e_min, e_max, args.steps)]
    ext = "json" if args.format == "json" else "csv"
    return _run_scatter(spec, ks, args.format, _out(args, f"ptchain_scatter.{ext}"))


#==== poles =================================================================

_POLES_HEADER = (
    "k_re",
    "k_im",
    "energy_re",
    "energy_im",
    "growth_rate",
    "classification",
    "residual",
)


def _run_poles(
    spec: ChainSpec,
    region: SearchRegion | None,
    grid_density: int,
    fmt: str,
    out: str,
) -> int:
    records = find_poles(spec, region, grid_density)
    rows = [
        [
            r.k.re,
            r.k.im,
            r.energy.real,
            r.energy.imag,
            r.growth_rate,
            r.classification.value,
            r.residual,
        ]
        for r in records
    ]
    if fmt == "json":
        payload = {
            "n_cells": spec.n_cells,
            "gamma": spec.gamma,
            "count": len(rows),
            "poles": [dict(zip(_POLES_HEADER, row)) for row in rows],
        }
        _write_json(out, payload)
    else:
        _write_csv(out, _POLES_HEADER, rows)
    print(f"wrote {len(rows)} poles -> {out}")
    return EXIT_OK


def cmd_poles(args: argparse.Namespace) -> int:
    spec = ChainSpec(args.n, args.gamma)
    region = _parse_region(args.region)
    ext = "json" if args.format == "json" else "csv"
    return _run_poles(
        spec, region, args.grid_density, args.format, _out(args, f"ptchain_poles.{ext}")
    )


#==== threshold =============================================================

_THRESHOLD_HEADER = ("n_cells", "gamma_critical", "asymptote_ratio")


def _run_threshold(n_values: Sequence[int], fmt: str, out: str) -> int:
    rows: list[list[Any]] = []
    ladders = []
    for n in n_values:
        ladder = threshold_ladder(n)
        ladders.append(ladder)
        # gamma_c ~ pi/(2N) for large N; the ratio tends to 1 from below
        rows.append([n, ladder.gamma_critical, ladder.gamma_critical * 2 * n / math.pi])
    if fmt == "json":
        payload = {
            "rows": [
                {
                    "n_cells": ladder.n_cells,
                    "gamma_critical": ladder.gamma_critical,
                    "asymptote_ratio": row[2],
                    "ladder": list(ladder.gamma_values),
                }
                for ladder, row in zip(ladders, rows)
            ]
        }
        _write_json(out, payload)
    else:
        _write_csv(out, _THRESHOLD_HEADER, rows)
    print(f"wrote {len(rows)} rows -> {out}")
    return EXIT_OK


def cmd_threshold(args: argparse.Namespace) -> int:
    if args.n is not None:
        if args.n_min is not None or args.n_max is not None:
            raise OutOfRange("give either --n or --n-min/--n-max, not both")
        ns: Sequence[int] = [args.n]
    elif args.n_min is not None and args.n_max is not None:
        if not 1 <= args.n_min <= args.n_max:
            raise OutOfRange(
                f"need 1 <= n_min <= n_max, got {args.n_min}, {args.n_max}"
            )
        ns = range(args.n_min, args.n_max + 1)
    else:
        raise OutOfRange("threshold needs --n or both --n-min and --n-max")
    ext = "json" if args.format == "json" else "csv"
    return _run_threshold(ns, args.format, _out(args, f"ptchain_threshold.{ext}"))


#==== trajectory ============================================================

_TRAJECTORY_HEADER = ("branch_id", "gamma", "k_re", "k_im", "classification", "lost")
_CROSSING_HEADER = ("branch_id", "gamma", "k_re", "k_im")


def _run_trajectory(
    spec_base: ChainSpec,
    gamma_min: float,
    gamma_max: float,
    steps: int,
    region: SearchRegion | None,
    grid_density: int,
    fmt: str,
    out: str,
) -> int:
    traj = trace_trajectories(
        spec_base, gamma_min, gamma_max, steps,
        region=region, grid_density=grid_density, strict=False,
    )

    rows: list[list[Any]] = []
    recorded = 0
    lost_remaining = 0
    n_samples = len(traj.gamma_samples)
    for branch in traj.branches:
        recorded += len(branch.points)
        for i, (g, rec) in enumerate(branch.points):
            is_last = i == len(branch.points) - 1
            rows.append(
                [
                    branch.branch_id,
                    g,
                    rec.k.re,
                    rec.k.im,
                    rec.classification.value,
                    branch.lost and is_last,
                ]
            )
        if branch.lost and branch.points:
            g_last = branch.points[-1][0]
            trailing = sum(1 for g in traj.gamma_samples if g > g_last)
            lost_remaining += trailing
    cross_rows = [
        [c.branch_id, c.gamma, c.k.real, c.k.imag] for c in traj.crossings
    ]

    if fmt == "json":
        payload = {
            "n_cells": spec_base.n_cells,
            "gamma_min": gamma_min,
            "gamma_max": gamma_max,
            "samples": n_samples,
            "branches": [dict(zip(_TRAJECTORY_HEADER, row)) for row in rows],
            "crossings": [dict(zip(_CROSSING_HEADER, row)) for row in cross_rows],
        }
        _write_json(out, payload)
        print(f"wrote {len(rows)} points, {len(cross_rows)} crossings -> {out}")
    else:
        _write_csv(out, _TRAJECTORY_HEADER, rows)
        stem = out[:-4] if out.endswith(".csv") else out
        cross_path = f"{stem}_crossings.csv"
        _write_csv(cross_path, _CROSSING_HEADER, cross_rows)
        print(f"wrote {len(rows)} points -> {out}")
        print(f"wrote {len(cross_rows)} crossings -> {cross_path}")

    total = recorded + lost_remaining
    converged = recorded / total if total else 1.0
    if converged < 0.9:
        print(
            f"error: only {100 * converged:.1f}% of branch points converged",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_trajectory(args: argparse.Namespace) -> int:
    spec_base = ChainSpec(args.n, 0.0)
    region = _parse_region(args.region)
    ext = "json" if args.format == "json" else "csv"
    return _run_trajectory(
        spec_base,
        args.gamma_min,
        args.gamma_max,
        args.steps,
        region,
        args.grid_density,
        args.format,
        _out(args, f"ptchain_trajectory.{ext}"),
    )


#==== evolve ================================================================

def _run_evolve(
    spec: ChainSpec,
    total_sites: int,
    j0: int,
    sigma: float,
    k0: float,
    times: Sequence[float],
    out_stem: str,
) -> int:
    layout = LatticeLayout.centered(total_sites, spec.n_cells)
    h = build_hamiltonian(layout, spec)
    psi0 = gaussian_packet(layout, j0, sigma, k0)
    horizon = validity_horizon(layout, j0, k0)
    late = [t for t in times if t > horizon]
    if late:
        print(
            f"warning: times {sorted(late)} exceed the validity horizon "
            f"{horizon:.1f}; boundary reflections may contaminate them",
            file=sys.stderr,
        )

    bundle = prepare_propagator(h)
    offsets = layout.site_offsets()
    snapshots = []
    series: list[tuple[float, float]] = []
    for t in sorted(set(float(t) for t in times)):
        state = evolve_state(bundle, psi0, t)
        split = intensity_split(state, layout)
        snap_path = f"{out_stem}_t{t:g}.csv"
        density = np.abs(state.amplitudes) ** 2
        _write_csv(snap_path, ("site", "intensity"), list(zip(offsets, density)))
        snapshots.append(
            {
                "time": t,
                "file": snap_path,
                "reflected": split.reflected,
                "central": split.central,
                "transmitted": split.transmitted,
                "total": split.total,
            }
        )
        series.append((t, split.total))
        print(f"t={t:g}: wrote {snap_path} (total intensity {split.total:.6g})")

    growth: float | None = None
    if verdict(spec).regime is RelevanceRegime.UNPHYSICAL and len(series) >= 2:
        try:
            growth = growth_rate_fit(series, min_decades=1.0)
        except InsufficientGrowth as exc:
            print(f"warning: growth fit skipped: {exc}", file=sys.stderr)

    summary = {
        "n_cells": spec.n_cells,
        "gamma": spec.gamma,
        "total_sites": total_sites,
        "j0": j0,
        "sigma": sigma,
        "k0": k0,
        "validity_horizon": _finite_or_none(horizon),
        "near_defective": bool(bundle.near_defective),
        "condition_estimate": _finite_or_none(bundle.condition_estimate),
        "amplitude_growth_rate": growth,
        "snapshots": snapshots,
    }
    summary_path = f"{out_stem}.json"
    _write_json(summary_path, summary)
    print(f"wrote summary -> {summary_path}")
    return EXIT_OK


def cmd_evolve(args: argparse.Namespace) -> int:
    spec = ChainSpec(args.n, args.gamma)
    if not 0.0 < args.k0 < math.pi:
        raise OutOfRange(f"--k0 must lie in (0, pi), got {args.k0!r}")
    if args.sigma <= 0:
        raise OutOfRange(f"--sigma must be positive, got {args.sigma!r}")
    if any(t < 0 for t in args.times):
        raise OutOfRange(f"--times must be nonnegative, got {args.times!r}")
    stem = args.out if args.out else "ptchain_evolve"
    if stem.endswith(".json"):
        stem = stem[:-5]
    return _run_evolve(spec, args.l, args.j0, args.sigma, args.k0, args.times, stem)


#==== relevance =============================================================

_SPECIAL_HEADER = ("kind", "energy", "k", "gamma", "n_index", "physical")


def _special_point_rows(spec: ChainSpec) -> list[list[Any]]:
    points = []
    if 0.0 < spec.gamma < 2.0:
        points.extend(band_edge_points(spec))
    points.extend(fabry_perot_points(spec))
    points.extend(cpa_laser_points(spec.n_cells))
    return [
        [p.kind.value, p.energy, p.k, p.gamma, p.n_index, p.physical] for p in points
    ]


_VERDICT_HEADER = (
    "n_cells",
    "gamma",
    "regime",
    "gamma_critical",
    "margin",
    "tgbs_count",
    "critical_size",
)


def cmd_relevance(args: argparse.Namespace) -> int:
    spec = ChainSpec(args.n, args.gamma)
    v = verdict(spec)
    n_c = critical_size(spec.gamma) if spec.gamma > 0 else None
    print(
        f"N={spec.n_cells} gamma={spec.gamma:g}: {v.regime.value} "
        f"(gamma_c={v.gamma_critical:.6g}, margin={v.margin:.6g}, "
        f"growing states: {v.tgbs_count})"
    )
    verdict_row = [
        spec.n_cells, spec.gamma, v.regime.value,
        v.gamma_critical, v.margin, v.tgbs_count, n_c,
    ]
    rows = _special_point_rows(spec) if args.special_points else None
    if args.format == "csv":
        out = _out(args, "ptchain_relevance.csv")
        _write_csv(out, _VERDICT_HEADER, [verdict_row])
        if rows is not None:
            stem = out[:-4] if out.endswith(".csv") else out
            points_path = f"{stem}_points.csv"
            _write_csv(points_path, _SPECIAL_HEADER, rows)
            print(f"wrote {len(rows)} special points -> {points_path}")
    else:
        out = _out(args, "ptchain_relevance.json")
        payload = dict(zip(_VERDICT_HEADER, verdict_row))
        if rows is not None:
            payload["special_points"] = [dict(zip(_SPECIAL_HEADER, row)) for row in rows]
            print(f"listing {len(rows)} special points")
        _write_json(out, payload)
    print(f"wrote verdict -> {out}")
    return EXIT_OK


#==== figure presets ========================================================

def _run_size_scan(
    gamma: float, energies: Sequence[float], n_max: int, fmt: str, out: str
) -> int:
    header = ("energy", "n_cells", "transmission", "regime", "physical")
    rows: list[list[Any]] = []
    curves = []
    for e in energies:
        scan = transmission_vs_size(gamma, e, n_max)
        for r in scan.rows:
            rows.append([e, r.n_cells, r.transmission, r.regime.value, r.physical])
        curves.append(
            {
                "energy": e,
                "quasiperiod": scan.quasiperiod,
                "log_slope": scan.log_slope,
            }
        )
    if fmt == "json":
        _write_json(
            out,
            {
                "gamma": gamma,
                "n_max": n_max,
                "curves": curves,
                "rows": [dict(zip(header, row)) for row in rows],
            },
        )
    else:
        _write_csv(out, header, rows)
    print(f"wrote {len(rows)} rows -> {out}")
    return EXIT_OK


def _run_gamma_scan(
    n_cells: int, k: float, gamma_min: float, gamma_max: float, steps: int,
    fmt: str, out: str,
) -> int:
    header = ("gamma", "transmission", "physical", "singular")
    gamma_c = threshold_ladder(n_cells).gamma_critical
    rows: list[list[Any]] = []
    for g in _grid(gamma_min, gamma_max, steps):
        spec = ChainSpec(n_cells, g)
        try:
            t_val: float | None = transmission_closed_form(spec, k)
            singular = False
        except SpectralSingularityError:
            t_val, singular = None, True
        rows.append([g, t_val, g < gamma_c, singular])
    if fmt == "json":
        _write_json(
            out,
            {
                "n_cells": n_cells,
                "k": k,
                "rows": [dict(zip(header, row)) for row in rows],
            },
        )
    else:
        _write_csv(out, header, rows)
    print(f"wrote {len(rows)} rows -> {out}")
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    try:
        params = get_preset(args.preset)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    mode = params.pop("mode")
    fmt = args.format
    ext = "json" if fmt == "json" else "csv"
    stem = args.out if args.out else f"ptchain_{args.preset}"
    if stem.endswith(".csv") or stem.endswith(".json"):
        stem = stem.rsplit(".", 1)[0]
    out = f"{stem}.{ext}"

    if mode == "poles":
        spec = ChainSpec(params["n_cells"], params["gamma"])
        return _run_poles(spec, None, params["grid_density"], fmt, out)
    if mode == "scatter":
        spec = ChainSpec(params["n_cells"], params["gamma"])
        if "k_min" in params:
            ks = _grid(params["k_min"], params["k_max"], params["steps"])
        else:
            ks = [
                energy_to_wavenumber(e)
                for e in _grid(params["e_min"], params["e_max"], params["steps"])
            ]
        return _run_scatter(spec, ks, fmt, out)
    if mode == "threshold":
        ns = range(params["n_min"], params["n_max"] + 1)
        return _run_threshold(ns, fmt, out)
    if mode == "trajectory":
        return _run_trajectory(
            ChainSpec(params["n_cells"], 0.0),
            params["gamma_min"],
            params["gamma_max"],
            params["steps"],
            None,
            60,
            fmt,
            out,
        )
    if mode == "evolve":
        spec = ChainSpec(params["n_cells"], params["gamma"])
        return _run_evolve(
            spec,
            params["total_sites"],
            params["j0"],
            params["sigma"],
            params["k0"],
            params["times"],
            stem,
        )
    if mode == "size_scan":
        return _run_size_scan(
            params["gamma"], params["energies"], params["n_max"], fmt, out
        )
    if mode == "gamma_scan":
        return _run_gamma_scan(
            params["n_cells"],
            params["k"],
            params["gamma_min"],
            params["gamma_max"],
            params["steps"],
            fmt,
            out,
        )
    print(f"error: preset {args.preset!r} has unknown mode {mode!r}", file=sys.stderr)
    return EXIT_USAGE


#==== parser ================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptchain",
        description=(
            "Scattering coefficients, pole structure, onset thresholds, and "
            "wave-packet dynamics of finite gain/loss-balanced periodic chains."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(sp: argparse.ArgumentParser, default_fmt: str = "csv") -> None:
        sp.add_argument(
            "--format", choices=("csv", "json"), default=default_fmt,
            help=f"output format (default: {default_fmt})",
        )
        sp.add_argument("--out", help="output path (default: ./ptchain_<command>.<ext>)")

    def add_chain(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--n", type=int, required=True, help="number of unit cells")
        sp.add_argument("--gamma", type=float, required=True, help="gain/loss strength")

    p = sub.add_parser("scatter", help="transmission/reflection sweep")
    add_chain(p)
    p.add_argument("--e-min", type=float, help="sweep start energy (default -1.99)")
    p.add_argument("--e-max", type=float, help="sweep end energy (default 1.99)")
    p.add_argument("--steps", type=int, default=400, help="sweep intervals (default 400)")
    p.add_argument("--k", type=float, help="single wavenumber in (0, pi) instead of a sweep")
    add_io(p)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("poles", help="complex-k pole census")
    add_chain(p)
    p.add_argument(
        "--region", help="search window 're_min,re_max,im_min,im_max' (default full strip)"
    )
    p.add_argument(
        "--grid-density", type=int, default=60,
        help="seed-grid points per unit k (default 60, minimum 50)",
    )
    add_io(p)
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("threshold", help="onset thresholds vs chain size")
    p.add_argument("--n", type=int, help="single chain size")
    p.add_argument("--n-min", type=int, help="start of a size range")
    p.add_argument("--n-max", type=int, help="end of a size range (inclusive)")
    add_io(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("trajectory", help="pole trajectories over a gamma sweep")
    p.add_argument("--n", type=int, required=True, help="number of unit cells")
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=200, help="sweep intervals (default 200)")
    p.add_argument("--region", help="tracking window 're_min,re_max,im_min,im_max'")
    p.add_argument("--grid-density", type=int, default=60)
    add_io(p)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("evolve", help="wave-packet propagation snapshots")
    add_chain(p)
    p.add_argument("--l", type=int, default=1200, help="total lattice sites (default 1200)")
    p.add_argument(
        "--j0", type=int, default=-300,
        help="packet center, relative to the first gain site (default -300)",
    )
    p.add_argument("--sigma", type=float, default=60.0, help="packet width (default 60)")
    p.add_argument(
        "--k0", type=float, default=0.5 * math.pi,
        help="carrier wavenumber in (0, pi) (default pi/2)",
    )
    p.add_argument(
        "--times", type=_csv_floats, default=[0.0, 60.0, 150.0, 225.0, 300.0],
        help="comma-separated snapshot times (default 0,60,150,225,300)",
    )
    p.add_argument("--out", help="output stem (default ./ptchain_evolve)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("relevance", help="physicality verdict and special points")
    add_chain(p)
    p.add_argument(
        "--special-points", action="store_true",
        help="append band-edge/Fabry-Perot/CPA-laser listings",
    )
    add_io(p, default_fmt="json")
    p.set_defaults(func=cmd_relevance)

    p = sub.add_parser("figure", help="run a canned preset")
    p.add_argument(
        "--preset", required=True, choices=preset_names(),
        help="preset name (fig2a..fig2i, fig3, fig4, fig5a..fig5f, fig6, fig7a, fig7b, fig8)",
    )
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output stem (default ./ptchain_<preset>)")
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except OutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
