"""Command-line front end.

Eight subcommands map one-to-one onto the experiment operations.  Every
experiment run writes a CSV of rows, a JSON report validating against
REPORT_SCHEMA with the run manifest echoed inside, and (when a growth fit
exists) a log-log SVG.  Exit status: 0 when the run passed, 1 when an
experiment ran but failed its certification, 2 for usage or configuration
errors.

Parameter precedence, highest first: explicit flags, then a key=value config
file, then the searched-parameter cache named by VARLAT_CACHE, then built-in
defaults.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .corefn import GrowthFit, fit_power_law
from .errors import BadRange, EmptyInput, TruncationTooShallow, VarlatError
from .experiments import (
    ExperimentConfig,
    GridSpec,
    RatioReport,
    default_lacunary,
    exp_hilbert_growth,
    exp_key_estimate,
    exp_linf_blowup,
    exp_lr_growth,
    exp_maximal_contrast,
    exp_norm_transfer,
    exp_reduction_constant,
    floor_r_times_j0,
)
from .variation import qvariation
from .witnesses import LacunaryParams, key_estimate_table

__version__ = "0.1.0"

__all__ = ["run", "main", "RunManifest", "REPORT_SCHEMA", "emit_svg_loglog", "SUBCOMMANDS"]

SUBCOMMANDS = (
    "reduction-constant",
    "key-estimate",
    "linf-blowup",
    "lr-growth",
    "hilbert-growth",
    "norm-transfer",
    "maximal-contrast",
    "variation",
)

REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "varlat experiment report",
    "type": "object",
    "required": ["config", "certified_C", "fit", "pass", "manifest"],
    "properties": {
        "config": {"type": "object"},
        "certified_C": {"type": "number"},
        "fit": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["slope", "intercept", "r_squared"],
                    "properties": {
                        "slope": {"type": "number"},
                        "intercept": {"type": "number"},
                        "r_squared": {"type": "number", "minimum": 0, "maximum": 1},
                    },
                },
            ]
        },
        "pass": {"type": "boolean"},
        "manifest": {
            "type": "object",
            "required": [
                "subcommand",
                "config",
                "seed",
                "out_dir",
                "version",
                "wall_clock_seconds",
            ],
            "properties": {
                "subcommand": {"type": "string"},
                "config": {"type": "object"},
                "seed": {"type": "integer"},
                "out_dir": {"type": "string"},
                "version": {"type": "string"},
                "wall_clock_seconds": {"type": "number"},
            },
        },
    },
    "additionalProperties": True,
}


@dataclass(frozen=True)
class RunManifest:
    """Provenance block echoed verbatim into every JSON report."""

    subcommand: str
    config: dict
    seed: int
    out_dir: str
    version: str
    wall_clock_seconds: float

    def payload(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "config": self.config,
            "seed": self.seed,
            "out_dir": self.out_dir,
            "version": self.version,
            "wall_clock_seconds": self.wall_clock_seconds,
        }


# ---------------------------------------------------------------------------
# argument parsing and layered resolution

_INT_KEYS = ("kmin", "j0", "grid_points", "log_per_decade", "seed", "workers", "nodes", "trials", "j_max")
_FLOAT_KEYS = ("p", "q", "a")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="varlat", description=__doc__)
    top.add_argument("--version", action="version", version=f"varlat {__version__}")
    subs = top.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub = subs.add_parser(name)
        sub.add_argument("--config", help="key=value file, one pair per line")
        sub.add_argument("--p", type=float)
        sub.add_argument("--q", type=float)
        sub.add_argument("--a", type=float)
        sub.add_argument("--kmin", type=int)
        sub.add_argument("--j0", type=int)
        sub.add_argument("--r-list", dest="r_list", help="comma-separated exponents")
        sub.add_argument("--j1-list", dest="j1_list", help="comma-separated depths")
        sub.add_argument("--grid-points", dest="grid_points", type=int)
        sub.add_argument("--log-per-decade", dest="log_per_decade", type=int)
        sub.add_argument("--seed", type=int)
        sub.add_argument("--out")
        sub.add_argument("--workers", type=int)
        sub.add_argument("--nodes", type=int)
        if name == "norm-transfer":
            sub.add_argument("--trials", type=int)
        if name == "key-estimate":
            sub.add_argument("--j-max", dest="j_max", type=int)
        if name == "variation":
            sub.add_argument("--values", required=True, help="file of comma/space separated values")
    return top


def _builtin_defaults() -> dict:
    return {
        "p": 2.0,
        "q": 3.0,
        "a": None,  # filled from cache or the built-in lacunary defaults
        "kmin": None,
        "j0": None,
        "r_list": (4.0, 8.0, 16.0, 32.0),
        "j1_list": None,
        "grid_points": 1501,
        "log_per_decade": 32,
        "seed": 0,
        "workers": os.cpu_count() or 1,
        "nodes": 2048,
        "trials": 100,
        "j_max": 30,
        "out": ".",
    }


def _cache_path() -> str | None:
    return os.environ.get("VARLAT_CACHE") or None


def _cache_overlay(resolved: dict) -> None:
    path = _cache_path()
    if not path or not os.path.exists(path):
        return
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for src, dst in (("a", "a"), ("k_min", "kmin"), ("j0", "j0")):
        if src in data:
            resolved[dst] = data[src]


def _parse_scalar(key: str, raw: str):
    if key in _INT_KEYS:
        return int(raw)
    if key in _FLOAT_KEYS:
        return float(raw)
    if key == "r_list":
        return tuple(float(tok) for tok in raw.split(",") if tok)
    if key == "j1_list":
        return tuple(int(tok) for tok in raw.split(",") if tok)
    if key == "out":
        return raw
    raise BadRange(f"unknown configuration key {key!r}")


def _config_file_overlay(resolved: dict, path: str) -> None:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise BadRange(f"{path}:{lineno}: expected key=value, got {stripped!r}")
            key, raw = (part.strip() for part in stripped.split("=", 1))
            resolved[key.replace("-", "_")] = _parse_scalar(key.replace("-", "_"), raw)


def _flag_overlay(resolved: dict, args: argparse.Namespace) -> None:
    for key in ("p", "q", "a", "kmin", "j0", "grid_points", "log_per_decade",
                "seed", "workers", "nodes", "trials", "j_max", "out"):
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    for key in ("r_list", "j1_list"):
        raw = getattr(args, key, None)
        if raw is not None:
            resolved[key] = _parse_scalar(key, raw)


def _resolve(args: argparse.Namespace) -> dict:
    resolved = _builtin_defaults()
    _cache_overlay(resolved)
    if getattr(args, "config", None):
        _config_file_overlay(resolved, args.config)
    _flag_overlay(resolved, args)
    if resolved["a"] is None or resolved["kmin"] is None or resolved["j0"] is None:
        base = default_lacunary()
        if resolved["a"] is None:
            resolved["a"] = base.a
        if resolved["kmin"] is None:
            resolved["kmin"] = base.k_min
        if resolved["j0"] is None:
            resolved["j0"] = base.j0
    return resolved


def _certified_constant(resolved: dict) -> float:
    table = key_estimate_table(resolved["a"], resolved["kmin"], max(resolved["j_max"], resolved["j0"]))
    return float(min(table[resolved["j0"] :]))


def _experiment_config(resolved: dict) -> ExperimentConfig:
    lac = LacunaryParams(
        a=float(resolved["a"]),
        k_min=int(resolved["kmin"]),
        j0=int(resolved["j0"]),
        key_constant=_certified_constant(resolved),
    )
    grid = GridSpec(
        lin_points=int(resolved["grid_points"]),
        log_points_per_decade=int(resolved["log_per_decade"]),
    )
    return ExperimentConfig(
        p=float(resolved["p"]),
        q=float(resolved["q"]),
        lacunary=lac,
        grid=grid,
        r_list=tuple(resolved["r_list"]),
        j1_rule=floor_r_times_j0(),
    )


def _j1_list(resolved: dict) -> tuple[int, ...]:
    if resolved["j1_list"] is not None:
        return tuple(int(j) for j in resolved["j1_list"])
    j0 = int(resolved["j0"])
    return tuple(j0 + gap for gap in (4, 8, 16, 32, 64))


def _config_payload(resolved: dict, config: ExperimentConfig | None) -> dict:
    payload = {
        "p": resolved["p"],
        "q": resolved["q"],
        "a": resolved["a"],
        "k_min": resolved["kmin"],
        "j0": resolved["j0"],
        "r_list": list(resolved["r_list"]),
        "j1_list": list(_j1_list(resolved)),
        "grid": {
            "lin_points": resolved["grid_points"],
            "log_points_per_decade": resolved["log_per_decade"],
        },
        "seed": resolved["seed"],
        "nodes": resolved["nodes"],
        "trials": resolved["trials"],
        "j_max": resolved["j_max"],
    }
    if config is not None:
        payload["key_constant"] = config.lacunary.key_constant
        payload["grid"]["x_min"] = config.grid.x_min
        payload["grid"]["x_max"] = config.grid.x_max
    return payload


# ---------------------------------------------------------------------------
# report writing


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: str, reports: Sequence[RatioReport]) -> None:
    lines = ["param,numerator,denominator,ratio,seconds"]
    for rep in reports:
        lines.append(
            f"{_fmt(rep.param)},{_fmt(rep.numerator)},{_fmt(rep.denominator)},"
            f"{_fmt(rep.ratio)},{rep.seconds:.6f}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _fit_payload(fit: GrowthFit | None) -> dict | None:
    if fit is None:
        return None
    return {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared}


def _write_json(
    path: str,
    manifest: RunManifest,
    certified_c: float,
    fit: GrowthFit | None,
    passed: bool,
    extras: dict | None = None,
) -> None:
    payload = {
        "config": manifest.config,
        "certified_C": certified_c,
        "fit": _fit_payload(fit),
        "pass": passed,
        "manifest": manifest.payload(),
    }
    if extras:
        payload["extras"] = extras
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_svg_loglog(reports: Sequence[RatioReport], path: str) -> None:
    """Standalone log-log scatter of (param, ratio) with its fitted line.

    Output bytes are a pure function of the report data columns, so repeated
    runs with the same inputs produce identical files.
    """
    if len(reports) < 2:
        raise EmptyInput("an SVG plot needs at least two reports")
    lx = [math.log(rep.param) for rep in reports]
    ly = [math.log(rep.ratio) for rep in reports]
    if len(reports) >= 3:
        fit = fit_power_law([rep.param for rep in reports], [rep.ratio for rep in reports])
        slope, intercept = fit.slope, fit.intercept
    else:
        slope = (ly[1] - ly[0]) / (lx[1] - lx[0])
        intercept = ly[0] - slope * lx[0]

    width, height, pad = 640.0, 440.0, 60.0
    x_lo, x_hi = min(lx), max(lx)
    y_lo, y_hi = min(ly), max(ly)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def px(v: float) -> float:
        return pad + (v - x_lo) / x_span * (width - 2 * pad)

    def py(v: float) -> float:
        return height - pad - (v - y_lo) / y_span * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{pad:.1f}" y1="{height - pad:.1f}" x2="{width - pad:.1f}" '
        f'y2="{height - pad:.1f}" stroke="black"/>',
        f'<line x1="{pad:.1f}" y1="{pad:.1f}" x2="{pad:.1f}" y2="{height - pad:.1f}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - pad / 3:.1f}" text-anchor="middle" '
        f'font-size="14">ln param</text>',
        f'<text x="{pad / 3:.1f}" y="{height / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 {pad / 3:.1f} {height / 2:.1f})">ln ratio</text>',
    ]
    fit_y0 = intercept + slope * x_lo
    fit_y1 = intercept + slope * x_hi
    parts.append(
        f'<line x1="{px(x_lo):.2f}" y1="{py(fit_y0):.2f}" x2="{px(x_hi):.2f}" '
        f'y2="{py(fit_y1):.2f}" stroke="steelblue" stroke-width="1.5"/>'
    )
    for vx, vy in zip(lx, ly):
        parts.append(f'<circle cx="{px(vx):.2f}" cy="{py(vy):.2f}" r="4" fill="crimson"/>')
    parts.append(
        f'<text x="{width - pad:.1f}" y="{pad / 1.5:.1f}" text-anchor="end" '
        f'font-size="14">slope={slope:.3f}</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# subcommand handlers


def _out_path(resolved: dict, name: str) -> str:
    out_dir = resolved["out"]
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _manifest(resolved: dict, subcommand: str, config: ExperimentConfig | None, t0: float) -> RunManifest:
    return RunManifest(
        subcommand=subcommand,
        config=_config_payload(resolved, config),
        seed=int(resolved["seed"]),
        out_dir=str(resolved["out"]),
        version=__version__,
        wall_clock_seconds=time.perf_counter() - t0,
    )


def _cmd_reduction_constant(resolved: dict, t0: float) -> int:
    value = exp_reduction_constant(int(resolved["nodes"]))
    passed = abs(value - 0.5) <= 1e-6
    print(f"{value:.12g}")
    config = _experiment_config(resolved)
    report = RatioReport(float(resolved["nodes"]), value, 0.5, value / 0.5, 0.0)
    _write_csv(_out_path(resolved, "reduction-constant.csv"), [report])
    manifest = _manifest(resolved, "reduction-constant", config, t0)
    _write_json(
        _out_path(resolved, "reduction-constant.json"),
        manifest,
        config.lacunary.key_constant,
        None,
        passed,
        extras={"value": value, "target": 0.5},
    )
    return 0 if passed else 1


def _cmd_key_estimate(resolved: dict, t0: float) -> int:
    # the certified constant is this subcommand's output, not its input: an
    # inadmissible truncation is a reportable FAIL here, not a usage error
    try:
        config = _experiment_config(resolved)
    except TruncationTooShallow as exc:
        with open(_out_path(resolved, "key-estimate.csv"), "w", encoding="utf-8") as fh:
            fh.write("j,D_j\n")
        manifest = _manifest(resolved, "key-estimate", None, t0)
        _write_json(
            _out_path(resolved, "key-estimate.json"),
            manifest,
            0.0,
            None,
            False,
            extras={"a": resolved["a"], "j0": resolved["j0"], "reason": str(exc)},
        )
        print(f"key-estimate: a={resolved['a']:g} C=n/a pass=False ({exc})")
        return 1
    result = exp_key_estimate(config, int(resolved["j_max"]))
    lines = ["j,D_j"]
    lines.extend(f"{j},{_fmt(d)}" for j, d in enumerate(result.table))
    with open(_out_path(resolved, "key-estimate.csv"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    manifest = _manifest(resolved, "key-estimate", config, t0)
    _write_json(
        _out_path(resolved, "key-estimate.json"),
        manifest,
        result.certified_c,
        None,
        result.passed,
        extras={"a": result.a, "j0": result.j0, "reason": result.reason},
    )
    cache = _cache_path()
    if cache and result.passed:
        with open(cache, "w", encoding="utf-8") as fh:
            json.dump(
                {
                    "a": result.a,
                    "k_min": config.lacunary.k_min,
                    "j0": result.j0,
                    "key_constant": result.certified_c,
                },
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")
    print(f"key-estimate: a={result.a:g} C={result.certified_c:.6g} pass={result.passed}")
    return 0 if result.passed else 1


def _cmd_linf_blowup(resolved: dict, t0: float) -> int:
    config = _experiment_config(resolved)
    result = exp_linf_blowup(config, _j1_list(resolved), workers=int(resolved["workers"]))
    _write_csv(_out_path(resolved, "linf-blowup.csv"), result.reports)
    emit_svg_loglog(result.reports, _out_path(resolved, "linf-blowup.svg"))
    manifest = _manifest(resolved, "linf-blowup", config, t0)
    _write_json(
        _out_path(resolved, "linf-blowup.json"),
        manifest,
        config.lacunary.key_constant,
        result.fit,
        result.passed,
        extras={"denominator_target": result.denominator_target},
    )
    slope = result.fit.slope if result.fit else float("nan")
    print(
        f"linf-blowup: slope={slope:.3f} target={1.0 / config.q:.3f} pass={result.passed}"
    )
    return 0 if result.passed else 1


def _cmd_maximal_contrast(resolved: dict, t0: float) -> int:
    config = _experiment_config(resolved)
    result = exp_maximal_contrast(config, _j1_list(resolved), workers=int(resolved["workers"]))
    _write_csv(_out_path(resolved, "maximal-contrast.csv"), result.reports)
    emit_svg_loglog(result.reports, _out_path(resolved, "maximal-contrast.svg"))
    manifest = _manifest(resolved, "maximal-contrast", config, t0)
    variation_fit = None
    if len(result.pairs) >= 3:
        variation_fit = fit_power_law(
            [pair.j1 - config.lacunary.j0 for pair in result.pairs],
            [pair.variation_ratio for pair in result.pairs],
        )
    _write_json(
        _out_path(resolved, "maximal-contrast.json"),
        manifest,
        config.lacunary.key_constant,
        variation_fit,
        result.passed,
        extras={
            "variation_growth": result.variation_growth,
            "maximal_spread": result.maximal_spread,
            "pairs": [
                {
                    "j1": pair.j1,
                    "variation_ratio": pair.variation_ratio,
                    "maximal_ratio": pair.maximal_ratio,
                }
                for pair in result.pairs
            ],
        },
    )
    print(
        f"maximal-contrast: spread={result.maximal_spread:.3f} "
        f"growth={result.variation_growth:.2f} pass={result.passed}"
    )
    return 0 if result.passed else 1


def _cmd_lr_growth(resolved: dict, t0: float) -> int:
    config = _experiment_config(resolved)
    result = exp_lr_growth(config, workers=int(resolved["workers"]))
    _write_csv(_out_path(resolved, "lr-growth.csv"), result.reports)
    emit_svg_loglog(result.reports, _out_path(resolved, "lr-growth.svg"))
    manifest = _manifest(resolved, "lr-growth", config, t0)
    _write_json(
        _out_path(resolved, "lr-growth.json"),
        manifest,
        config.lacunary.key_constant,
        result.fit,
        result.passed,
        extras={
            "delta_radius": result.delta_radius,
            "bounds": list(result.bound_values),
        },
    )
    slope = result.fit.slope if result.fit else float("nan")
    print(f"lr-growth: slope={slope:.3f} target={1.0 / config.q:.3f} pass={result.passed}")
    return 0 if result.passed else 1


def _cmd_hilbert_growth(resolved: dict, t0: float) -> int:
    config = _experiment_config(resolved)
    result = exp_hilbert_growth(config, workers=int(resolved["workers"]))
    _write_csv(_out_path(resolved, "hilbert-growth.csv"), result.reports)
    emit_svg_loglog(result.reports, _out_path(resolved, "hilbert-growth.svg"))
    manifest = _manifest(resolved, "hilbert-growth", config, t0)
    _write_json(
        _out_path(resolved, "hilbert-growth.json"),
        manifest,
        config.lacunary.key_constant,
        result.fit,
        result.passed,
        extras={"bounds": list(result.bound_values)},
    )
    slope = result.fit.slope if result.fit else float("nan")
    print(f"hilbert-growth: slope={slope:.3f} target=1.000 pass={result.passed}")
    return 0 if result.passed else 1


def _cmd_norm_transfer(resolved: dict, t0: float) -> int:
    config = _experiment_config(resolved)
    seed = int(resolved["seed"])
    trials = int(resolved["trials"])
    reports = []
    worst = 0.0
    for i in range(trials):
        trial_start = time.perf_counter()
        result = exp_norm_transfer(seed + i, p=config.p, q=config.q, r=config.r_list[0])
        worst = max(worst, result.max_rel_discrepancy)
        reports.append(
            RatioReport(
                float(seed + i),
                result.variation_integral,
                result.variation_sequence,
                result.variation_integral / result.variation_sequence,
                time.perf_counter() - trial_start,
            )
        )
    passed = worst <= 1e-10
    _write_csv(_out_path(resolved, "norm-transfer.csv"), reports)
    manifest = _manifest(resolved, "norm-transfer", config, t0)
    _write_json(
        _out_path(resolved, "norm-transfer.json"),
        manifest,
        config.lacunary.key_constant,
        None,
        passed,
        extras={"trials": trials, "max_rel_discrepancy": worst},
    )
    print(f"norm-transfer: trials={trials} worst={worst:.3e} pass={passed}")
    return 0 if passed else 1


def _cmd_variation(resolved: dict, args: argparse.Namespace) -> int:
    with open(args.values, "r", encoding="utf-8") as fh:
        text = fh.read()
    tokens = [tok for tok in re.split(r"[,\s]+", text.strip()) if tok]
    if not tokens:
        raise EmptyInput(f"no values found in {args.values}")
    certificate = qvariation([float(tok) for tok in tokens], float(resolved["q"]))
    print(f"{certificate.value:.12g}")
    print(" ".join(str(i) for i in certificate.subsequence))
    return 0


_HANDLERS: dict[str, Callable[[dict, float], int]] = {
    "reduction-constant": _cmd_reduction_constant,
    "key-estimate": _cmd_key_estimate,
    "linf-blowup": _cmd_linf_blowup,
    "lr-growth": _cmd_lr_growth,
    "hilbert-growth": _cmd_hilbert_growth,
    "norm-transfer": _cmd_norm_transfer,
    "maximal-contrast": _cmd_maximal_contrast,
}


def run(argv: Sequence[str]) -> int:
    """Parse arguments, dispatch, and map outcomes to exit codes."""
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    t0 = time.perf_counter()
    try:
        resolved = _resolve(args)
        if args.subcommand == "variation":
            return _cmd_variation(resolved, args)
        return _HANDLERS[args.subcommand](resolved, t0)
    except VarlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
