"""Command-line front end: gen, sweep, ensemble and states subcommands.

Exit codes: 0 success, 2 usage or configuration error, 3 I/O or file-format
error, 4 numeric or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import ensemble as ens
from . import states as states_mod
from .errors import (
    ConfigError,
    DomainError,
    FieldtopoError,
    FormatError,
)
from .grf import generate, load_field, sample_moments, save_field, smooth
from .spectrum import PowerSpectrumModel
from .topo2d import ExcursionMask, excursion_mask, hole_spectrum, topo_stats_from_spectrum
from .topo3d import betti3d

FWHM_PER_RS = math.sqrt(8.0 * math.log(2.0))


# ---------------------------------------------------------------------------
# run configuration (plain key = value file)


@dataclass
class RunConfig:
    """Everything an ensemble run needs; keys in a config file mirror these names."""

    amplitude: float = 1.0
    alpha: float = 0.0
    k_low_cutoff: float | None = None
    k_high_cutoff: float | None = None
    n: int = 256
    boxsize: float = 256.0
    dim: int = 2
    rs: float = 0.0
    n_realizations: int = 2
    thresholds: tuple[float, ...] = (0.0,)
    master_seed: int = 0
    sigma_mode: str | float = "sample"
    output_dir: str = "."
    workers: int = 1
    verbosity: int = 1

    def model(self) -> PowerSpectrumModel:
        return PowerSpectrumModel(
            amplitude=self.amplitude,
            alpha=self.alpha,
            k_low_cutoff=self.k_low_cutoff,
            k_high_cutoff=self.k_high_cutoff,
        )

    def ensemble_config(self) -> ens.EnsembleConfig:
        return ens.EnsembleConfig(
            model=self.model(),
            side=self.n,
            L=self.boxsize,
            dim=self.dim,
            rs=self.rs,
            n_realizations=self.n_realizations,
            thresholds=self.thresholds,
            master_seed=self.master_seed,
            sigma_mode=self.sigma_mode,
        )


def parse_run_config(path: str | Path) -> RunConfig:
    """Parse a `key = value` config file; '#' starts a comment.

    A `fwhm` key may be given instead of `rs` (fwhm = sqrt(8 ln 2) rs).
    """
    known = {f.name: f for f in fields(RunConfig)}
    values: dict[str, object] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "fwhm":
            values["rs"] = float(value) / FWHM_PER_RS
            continue
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, value)
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_value(key: str, value: str):
    if key in ("n", "dim", "n_realizations", "master_seed", "workers", "verbosity"):
        return int(value)
    if key in ("amplitude", "alpha", "boxsize", "rs"):
        return float(value)
    if key in ("k_low_cutoff", "k_high_cutoff"):
        return None if value.lower() in ("", "none") else float(value)
    if key == "thresholds":
        parts = value.replace(",", " ").split()
        if not parts:
            raise ConfigError("thresholds must list at least one value")
        return tuple(float(p) for p in parts)
    if key == "sigma_mode":
        if value == "sample":
            return "sample"
        return float(value)
    if key == "output_dir":
        return value
    raise ConfigError(f"unknown key {key!r}")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args: argparse.Namespace) -> int:
    model = PowerSpectrumModel(
        amplitude=args.amplitude,
        alpha=args.alpha,
        k_low_cutoff=args.klow,
        k_high_cutoff=args.khigh,
    )
    field = generate(model, args.n, args.boxsize, args.dim, seed=args.seed)
    if args.rs > 0:
        field = smooth(field, args.rs)
    save_field(field, args.out)
    moments = sample_moments(field)
    print(json.dumps({"mean": moments.mean, "sigma0": moments.sigma0,
                      "sigma1": moments.sigma1}))
    return 0


def _sweep_thresholds(nu_min: float, nu_max: float, nu_step: float) -> np.ndarray:
    if not nu_min < nu_max:
        raise ConfigError("--nu-min must be < --nu-max")
    if not nu_step > 0:
        raise ConfigError("--nu-step must be > 0")
    count = int(round((nu_max - nu_min) / nu_step)) + 1
    return nu_min + nu_step * np.arange(count)


def _sweep_row(mask: ExcursionMask) -> dict:
    if mask.dim == 2:
        hs = hole_spectrum(mask)
        st = topo_stats_from_spectrum(hs)
        spectrum = {str(j): m for j, m in sorted(hs.counts.items())}
        jmax = hs.jmax
    else:
        st = betti3d(mask)
        spectrum = {}
        jmax = 0
    return {
        "nu": mask.nu, "b0": st.b0, "b1": st.b1, "b2": st.b2,
        "chi": st.chi, "bsum": st.bsum, "jmax": jmax,
        "m_spectrum": json.dumps(spectrum, sort_keys=True),
    }


def _csv_quote(value: str) -> str:
    if "," in value or '"' in value:
        return '"' + value.replace('"', '""') + '"'
    return value


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _cmd_sweep(args: argparse.Namespace) -> int:
    field = load_field(args.field)
    rows = []
    if args.mask:
        bits = field.values > 0.5
        rows.append(_sweep_row(ExcursionMask(bits=bits, nu=math.nan, sigma_used=math.nan)))
    else:
        for nu in _sweep_thresholds(args.nu_min, args.nu_max, args.nu_step):
            rows.append(_sweep_row(excursion_mask(field, float(nu), args.sigma_mode)))
    cols = ["nu", "b0", "b1", "b2", "chi", "bsum", "jmax", "m_spectrum"]
    lines = [",".join(cols)]
    for row in rows:
        lines.append(
            ",".join(
                _csv_quote(v if isinstance(v, str) else _fmt(v))
                for v in (row[c] for c in cols)
            )
        )
    Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_ensemble(args: argparse.Namespace) -> int:
    run_cfg = parse_run_config(args.config)
    config = run_cfg.ensemble_config()
    outdir = Path(args.output_dir or run_cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    workers = args.workers or run_cfg.workers
    try:
        result = ens.run_ensemble(config, workers=workers)
        fits = ens.compute_fits(result)
        duality = ens.duality_check(result.summaries) if _symmetric(config.thresholds) else None
        ens.write_manifest(result, outdir / "manifest.json")
        ens.write_summary_csv(result, outdir / "summary.csv")
        ens.write_hist_csvs(result, outdir)
        ens.write_fits_csv(fits, outdir / "fits.csv", config.manifest_hash())
        if duality is not None:
            _write_duality_csv(duality, outdir / "duality.csv", config.manifest_hash())
    except Exception as exc:
        (outdir / "PARTIAL_OUTPUT").write_text(f"run aborted: {exc}\n")
        raise
    if run_cfg.verbosity > 0:
        print(f"wrote {outdir}/summary.csv ({config.n_realizations} realizations, "
              f"{len(config.thresholds)} thresholds)")
    return 0


def _symmetric(thresholds: tuple[float, ...]) -> bool:
    nus = np.asarray(thresholds)
    return bool(np.allclose(nus, -nus[::-1], atol=1e-9))


def _write_duality_csv(rows, path: Path, manifest_hash: str) -> None:
    lines = [f"# manifest_hash={manifest_hash}",
             "nu,mean_b0,mean_b1_mirror,diff,se_combined,systematic,z,ok,flag"]
    for r in rows:
        lines.append(",".join(_fmt(v) for v in [
            r.nu, r.mean_b0, r.mean_b1_mirror, r.diff, r.se_combined,
            r.systematic, r.z, int(r.ok), r.flag,
        ]))
    path.write_text("\n".join(lines) + "\n")


def _cmd_states(args: argparse.Namespace) -> int:
    jmax = args.jmax if args.jmax is not None else max(args.b1, 0)
    count = states_mod.count_all(args.b0, args.b1, jmax=jmax)
    payload = {
        "formula": count.formula_count,
        "vector": count.vector_count,
        "composition": count.composition_count,
        "discrepancy": count.discrepancy,
    }
    if args.list:
        _, vectors = states_mod.enumerate_vector_states(
            args.b0, args.b1, jmax, return_states=True
        )
        payload["states"] = [list(v) for v in vectors]
    print(json.dumps(payload))
    return 0


# ---------------------------------------------------------------------------
# parser and entry point


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fieldtopo",
        description="Topological statistics of excursion sets of Gaussian random fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a Gaussian random field dump")
    gen.add_argument("--amplitude", type=float, default=1.0)
    gen.add_argument("--alpha", type=float, default=0.0)
    gen.add_argument("--klow", type=float, default=None)
    gen.add_argument("--khigh", type=float, default=None)
    gen.add_argument("--n", type=int, required=True, help="grid side (power of two >= 32)")
    gen.add_argument("--boxsize", type=float, required=True)
    gen.add_argument("--rs", type=float, default=0.0, help="Gaussian smoothing length")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dim", type=int, choices=(2, 3), default=2)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_gen)

    sweep = sub.add_parser("sweep", help="threshold sweep of a stored field")
    sweep.add_argument("--field", required=True, help="binary field dump")
    sweep.add_argument("--nu-min", type=float, default=-3.0)
    sweep.add_argument("--nu-max", type=float, default=3.0)
    sweep.add_argument("--nu-step", type=float, default=0.5)
    sweep.add_argument("--sigma-mode", default="sample",
                       help="'sample' or a fixed sigma0 value")
    sweep.add_argument("--mask", action="store_true",
                       help="treat the stored values as a binary mask (one row)")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=_cmd_sweep)

    ensemble_p = sub.add_parser("ensemble", help="run an ensemble from a config file")
    ensemble_p.add_argument("--config", required=True)
    ensemble_p.add_argument("--output-dir", default=None,
                            help="override output_dir from the config file")
    ensemble_p.add_argument("--workers", type=int, default=None)
    ensemble_p.set_defaults(func=_cmd_ensemble)

    states_p = sub.add_parser("states", help="count coefficient states for (b0, b1)")
    states_p.add_argument("--b0", type=_nonnegative_int, required=True)
    states_p.add_argument("--b1", type=_nonnegative_int, required=True)
    states_p.add_argument("--jmax", type=_nonnegative_int, default=None)
    states_p.add_argument("--list", action="store_true",
                          help="also list the coefficient vectors")
    states_p.set_defaults(func=_cmd_states)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            args.sigma_mode = (
                "sample" if args.sigma_mode == "sample" else float(args.sigma_mode)
            )
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, FieldtopoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
