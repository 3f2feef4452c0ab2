"""Ensemble pipeline: per-threshold moments, Binomial fits and diagnostics.

`run_ensemble` drives n independent realizations (seeded as
(master_seed, index), so the result is reproducible and independent of how
work is scheduled) through generate -> smooth -> threshold -> hole spectrum,
and folds the per-realization integer statistics into per-threshold
summaries.  On top of the summaries sit the analytic Gaussian Euler
characteristic, the Binomial moment inversions for the three threshold
regimes, total-variation comparisons of empirical PMFs against Binomial and
Gaussian models, and the duality and normality diagnostics.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import special, stats as scipy_stats

from .errors import ConfigError, DomainError
from .grf import generate, sample_moments, smooth
from .spectrum import PowerSpectrumModel
from .topo2d import (
    HoleSpectrum,
    euler_closed_cell,
    excursion_mask,
    hole_spectrum,
    topo_stats_from_spectrum,
)
from .topo3d import betti3d

STAT_NAMES = ("b0", "b1", "b2", "chi", "bsum")

#: cap on the trials parameter when the moment inversion degenerates
N_TRIALS_CAP = 1.0e9

#: relative systematic allowance for boundary clipping in the duality check
DUALITY_SYSTEMATIC = 0.02


# ---------------------------------------------------------------------------
# configuration and result containers


@dataclass(frozen=True)
class EnsembleConfig:
    model: PowerSpectrumModel
    side: int
    L: float
    dim: int
    rs: float
    n_realizations: int
    thresholds: tuple[float, ...]
    master_seed: int
    sigma_mode: str | float = "sample"

    def __post_init__(self) -> None:
        if self.n_realizations < 2:
            raise ConfigError("an ensemble needs at least 2 realizations")
        nus = tuple(float(v) for v in self.thresholds)
        if any(b <= a for a, b in zip(nus, nus[1:])):
            raise ConfigError("thresholds must be strictly increasing")
        object.__setattr__(self, "thresholds", nus)
        if self.rs < 0:
            raise ConfigError("rs must be >= 0")

    @property
    def area(self) -> float:
        """Box measure (L^2 or L^3); the per-unit-area normalizer."""
        return self.L**self.dim

    def to_manifest(self) -> dict:
        return {
            "schema": "fieldtopo-run/1",
            "amplitude": self.model.amplitude,
            "alpha": self.model.alpha,
            "k_low_cutoff": self.model.k_low_cutoff,
            "k_high_cutoff": self.model.k_high_cutoff,
            "side": self.side,
            "L": self.L,
            "dim": self.dim,
            "rs": self.rs,
            "n_realizations": self.n_realizations,
            "thresholds": list(self.thresholds),
            "master_seed": self.master_seed,
            "sigma_mode": self.sigma_mode,
        }

    def manifest_hash(self) -> str:
        payload = json.dumps(self.to_manifest(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]


def config_from_manifest(manifest: dict) -> EnsembleConfig:
    model = PowerSpectrumModel(
        amplitude=manifest["amplitude"],
        alpha=manifest["alpha"],
        k_low_cutoff=manifest["k_low_cutoff"],
        k_high_cutoff=manifest["k_high_cutoff"],
    )
    return EnsembleConfig(
        model=model,
        side=manifest["side"],
        L=manifest["L"],
        dim=manifest["dim"],
        rs=manifest["rs"],
        n_realizations=manifest["n_realizations"],
        thresholds=tuple(manifest["thresholds"]),
        master_seed=manifest["master_seed"],
        sigma_mode=manifest["sigma_mode"],
    )


@dataclass
class ThresholdSummary:
    """Ensemble moments of the topological statistics at one threshold."""

    nu: float
    n_realizations: int
    mean_b0: float
    mean_b1: float
    mean_chi: float
    mean_bsum: float
    sd_b0: float
    sd_b1: float
    sd_chi: float
    sd_bsum: float
    cov_b0b1: float
    mean_mj: dict[int, float] = dataclass_field(default_factory=dict)
    var_mj: dict[int, float] = dataclass_field(default_factory=dict)
    histograms: dict[str, dict[int, int]] = dataclass_field(default_factory=dict)

    def se(self, stat: str) -> float:
        """Standard error of the ensemble mean of ``stat``."""
        sd = getattr(self, f"sd_{stat}")
        return sd / math.sqrt(self.n_realizations)


@dataclass
class EnsembleResult:
    config: EnsembleConfig
    summaries: list[ThresholdSummary]
    stats: dict[str, np.ndarray]  # (n_realizations, n_thresholds) int64 each
    mj_tables: list[np.ndarray]  # per threshold: (n_realizations, jmax+1)
    sigma0s: np.ndarray
    sigma1s: np.ndarray
    sigma_used: np.ndarray

    @property
    def area(self) -> float:
        return self.config.area

    @property
    def r_c_measured(self) -> float:
        """Mean of the per-realization sigma0/sigma1 ratios."""
        return float(np.mean(self.sigma0s / self.sigma1s))

    def nu_index(self, nu: float) -> int:
        nus = np.asarray(self.config.thresholds)
        idx = int(np.argmin(np.abs(nus - nu)))
        if abs(nus[idx] - nu) > 1e-9:
            raise DomainError(f"threshold {nu} not in the ensemble grid")
        return idx

    def samples(self, stat: str, nu: float) -> np.ndarray:
        """Per-realization values of one statistic at one threshold."""
        if stat not in self.stats:
            raise DomainError(f"unknown statistic {stat!r}")
        return self.stats[stat][:, self.nu_index(nu)]

    def summary_at(self, nu: float) -> ThresholdSummary:
        return self.summaries[self.nu_index(nu)]

    def spectrum_at(self, realization: int, nu: float) -> HoleSpectrum:
        row = self.mj_tables[self.nu_index(nu)][realization]
        counts = {j: int(m) for j, m in enumerate(row) if m > 0}
        return HoleSpectrum(nu=nu, counts=counts)


# ---------------------------------------------------------------------------
# the pipeline


def _realize(config: EnsembleConfig, index: int) -> dict:
    """Run one realization through the full topology chain."""
    field = generate(
        config.model, config.side, config.L, config.dim, seed=(config.master_seed, index)
    )
    field = smooth(field, config.rs)
    moments = sample_moments(field)

    n_nu = len(config.thresholds)
    table = np.zeros((n_nu, 7), dtype=np.int64)  # b0 b1 b2 chi bsum jmax chi_cell
    mj: list[dict[int, int]] = []
    sigma_used = math.nan
    for t, nu in enumerate(config.thresholds):
        mask = excursion_mask(field, nu, config.sigma_mode)
        sigma_used = mask.sigma_used
        if config.dim == 2:
            hs = hole_spectrum(mask)
            st = topo_stats_from_spectrum(hs)
            chi_cell = euler_closed_cell(mask)
            mj.append(hs.counts)
            jmax = hs.jmax
        else:
            st = betti3d(mask)
            chi_cell = st.chi
            mj.append({})
            jmax = 0
        table[t] = (st.b0, st.b1, st.b2, st.chi, st.bsum, jmax, chi_cell)
    return {
        "index": index,
        "sigma0": moments.sigma0,
        "sigma1": moments.sigma1,
        "sigma_used": sigma_used,
        "table": table,
        "mj": mj,
    }


def _realize_args(args: tuple[EnsembleConfig, int]) -> dict:
    return _realize(*args)


def _summarize(config: EnsembleConfig, rows: list[dict]) -> EnsembleResult:
    """Deterministic fold of the per-realization results, in index order."""
    rows = sorted(rows, key=lambda r: r["index"])
    n = len(rows)
    n_nu = len(config.thresholds)
    cube = np.stack([r["table"] for r in rows])  # (n, n_nu, 7)

    stats = {
        "b0": cube[:, :, 0],
        "b1": cube[:, :, 1],
        "b2": cube[:, :, 2],
        "chi": cube[:, :, 3],
        "bsum": cube[:, :, 4],
        "jmax": cube[:, :, 5],
        "chi_cell": cube[:, :, 6],
    }

    mj_tables = []
    for t in range(n_nu):
        jmax = 0
        for r in rows:
            if r["mj"][t]:
                jmax = max(jmax, max(r["mj"][t]))
        table = np.zeros((n, jmax + 1), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, m in r["mj"][t].items():
                table[i, j] = m
        mj_tables.append(table)

    summaries = []
    for t, nu in enumerate(config.thresholds):
        b0 = stats["b0"][:, t].astype(float)
        b1 = stats["b1"][:, t].astype(float)
        chi = stats["chi"][:, t].astype(float)
        bsum = stats["bsum"][:, t].astype(float)
        cov = float(np.cov(b0, b1)[0, 1])
        mjt = mj_tables[t]
        mean_mj = {j: float(m) for j, m in enumerate(mjt.mean(axis=0)) if m > 0}
        var_mj = {
            j: float(v)
            for j, v in enumerate(mjt.var(axis=0, ddof=1))
            if j in mean_mj
        }
        histograms = {}
        for name in STAT_NAMES:
            vals, counts = np.unique(stats[name][:, t], return_counts=True)
            histograms[name] = {int(v): int(c) for v, c in zip(vals, counts)}
        summaries.append(
            ThresholdSummary(
                nu=nu,
                n_realizations=n,
                mean_b0=float(b0.mean()),
                mean_b1=float(b1.mean()),
                mean_chi=float(chi.mean()),
                mean_bsum=float(bsum.mean()),
                sd_b0=float(b0.std(ddof=1)),
                sd_b1=float(b1.std(ddof=1)),
                sd_chi=float(chi.std(ddof=1)),
                sd_bsum=float(bsum.std(ddof=1)),
                cov_b0b1=cov,
                mean_mj=mean_mj,
                var_mj=var_mj,
                histograms=histograms,
            )
        )

    return EnsembleResult(
        config=config,
        summaries=summaries,
        stats=stats,
        mj_tables=mj_tables,
        sigma0s=np.array([r["sigma0"] for r in rows]),
        sigma1s=np.array([r["sigma1"] for r in rows]),
        sigma_used=np.array([r["sigma_used"] for r in rows]),
    )


def run_ensemble(config: EnsembleConfig, workers: int = 1) -> EnsembleResult:
    """Run the full ensemble; all realizations or nothing.

    The per-realization table and every derived summary are bitwise
    independent of ``workers``: realization i is seeded by
    (master_seed, i) and the fold is a fixed-order pass over indices.
    """
    indices = range(config.n_realizations)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(
                    _realize_args,
                    [(config, i) for i in indices],
                    chunksize=max(1, config.n_realizations // (4 * workers)),
                )
            )
    else:
        rows = [_realize(config, i) for i in indices]
    return _summarize(config, rows)


# ---------------------------------------------------------------------------
# analytic mean Euler characteristic (2D Gaussian field)


def analytic_chi_amplitude(r_c: float) -> float:
    """Amplitude of the mean Euler characteristic density: 1/(4 sqrt(2) pi^1.5 r_c^2)."""
    if r_c <= 0:
        raise DomainError("r_c must be positive")
    return 1.0 / (4.0 * math.sqrt(2.0) * math.pi**1.5 * r_c * r_c)


def analytic_chi_gaussian(nu: float, r_c: float) -> float:
    """Mean Euler characteristic per unit area of a 2D Gaussian field."""
    return analytic_chi_amplitude(r_c) * nu * math.exp(-0.5 * nu * nu)


# ---------------------------------------------------------------------------
# spectrum-level inequality diagnostic


@dataclass
class MjInequalityReport:
    nu: float
    total_sum: float
    total_negative: bool
    violating_j: list[int]
    per_j_margin: dict[int, float]


def check_mj_inequality(summary: ThresholdSummary) -> MjInequalityReport:
    """Evaluate the anti-correlation inequality on the m_j moments.

    The total is sum_j j (<m_j^2> - <m_j> sum_k <m_k>), which equals
    Cov(b0, b1) under cross-j independence, so it should come out negative
    for Gaussian fields.  The strict per-component condition
    <m_j> + var(m_j)/<m_j> < sum_k <m_k> is checked for every populated
    j >= 1; violations are compatible with a negative total.
    """
    if not summary.mean_mj:
        raise DomainError("summary has no m_j moments")
    total_mean = sum(summary.mean_mj.values())
    total = 0.0
    violating = []
    margins = {}
    for j, mean_j in summary.mean_mj.items():
        var_j = summary.var_mj.get(j, 0.0)
        second_moment = var_j + mean_j * mean_j
        total += j * (second_moment - mean_j * total_mean)
        if j >= 1 and mean_j > 0:
            # condition multiplied through by <m_j> to avoid the division
            margin = mean_j * mean_j + var_j - mean_j * total_mean
            margins[j] = margin
            if margin >= 0:
                violating.append(j)
    return MjInequalityReport(
        nu=summary.nu,
        total_sum=total,
        total_negative=total < 0,
        violating_j=violating,
        per_j_margin=margins,
    )


# ---------------------------------------------------------------------------
# Binomial modeling


@dataclass
class BinomialFit:
    """Result of a Binomial moment inversion for one statistic at one threshold."""

    nu: float
    regime: str  # high_positive | low_negative | intermediate
    N_fit: float
    p_fit: float
    valid: bool
    statistic: str
    note: str = ""

    @property
    def N_round(self) -> int:
        return max(1, int(round(self.N_fit)))


def _invert_moments(mu: float, variance: float) -> tuple[float, float, bool, str]:
    """Solve mu = N p, variance = N p (1 - p) for (N, p).

    Returns (N, p, valid, note).  variance >= mu has no Binomial solution;
    variance == mu is the Poisson limit, reported as a capped-N fit.
    """
    if not mu > 0:
        return 0.0, 0.0, False, "non-positive mean"
    if variance < 0:
        return 0.0, 0.0, False, "negative variance"
    denom = mu - variance
    if denom < 0:
        return 0.0, 0.0, False, "super-Poisson variance"
    if denom == 0 or mu * mu / denom > N_TRIALS_CAP:
        n = N_TRIALS_CAP
        return n, mu / n, True, "poisson-like (N capped)"
    n = mu * mu / denom
    if n < 1.0:
        return n, mu / n if n > 0 else 0.0, False, "N below one trial"
    return n, mu / n, True, ""


def fit_binomial_high_nu(
    nu: float, sd_chi_num: float, r_c: float, area: float
) -> BinomialFit:
    """High-threshold fit: the analytic mean chi plays the role of N p.

    At large positive nu the excursion set is dominated by simply connected
    components, so chi ~ b0 ~ m_0 and the analytic mean chi combined with the
    numerically measured sd of chi pins down (N, p).
    """
    if not nu > 0:
        raise DomainError("high-threshold fit requires nu > 0")
    if not sd_chi_num > 0:
        raise DomainError("sd_chi_num must be positive")
    mu = area * analytic_chi_gaussian(nu, r_c)
    n, p, valid, note = _invert_moments(mu, sd_chi_num * sd_chi_num)
    return BinomialFit(
        nu=nu, regime="high_positive", N_fit=n, p_fit=p, valid=valid,
        statistic="chi", note=note,
    )


def fit_binomial_low_nu(
    nu: float, sd_chi_num: float, r_c: float, area: float
) -> BinomialFit:
    """Low-threshold fit: mirror image of the high-threshold case.

    At large negative nu the excursion set tends to one multiply connected
    region and chi ~ -b1, so the magnitude of the analytic mean chi is
    inverted with the same algebra.
    """
    if not nu < 0:
        raise DomainError("low-threshold fit requires nu < 0")
    if not sd_chi_num > 0:
        raise DomainError("sd_chi_num must be positive")
    mu = -area * analytic_chi_gaussian(nu, r_c)
    n, p, valid, note = _invert_moments(mu, sd_chi_num * sd_chi_num)
    return BinomialFit(
        nu=nu, regime="low_negative", N_fit=n, p_fit=p, valid=valid,
        statistic="chi", note=note,
    )


def fit_binomial_moments(
    mean: float, variance: float, nu: float = math.nan, statistic: str = ""
) -> BinomialFit:
    """Intermediate-regime fit: treat the statistic itself as one Binomial.

    Method of moments: p = 1 - variance/mean, N = mean/p.  A non-positive
    mean or super-Poisson variance has no Binomial solution and is returned
    flagged invalid rather than raised.
    """
    if not math.isfinite(mean):
        raise DomainError("mean must be finite")
    n, p, valid, note = _invert_moments(mean, variance)
    return BinomialFit(
        nu=nu, regime="intermediate", N_fit=n, p_fit=p, valid=valid,
        statistic=statistic, note=note,
    )


# ---------------------------------------------------------------------------
# PDF comparison


@dataclass
class PdfComparison:
    bins: np.ndarray
    pmf_empirical: np.ndarray
    tv_binomial: float | None
    tv_gaussian: float


def pdf_compare(samples, fit: BinomialFit | None) -> PdfComparison:
    """Total-variation distances of the empirical PMF to the fitted models.

    The empirical distribution of the integer ``samples`` is compared to the
    fitted Binomial PMF (skipped when ``fit`` is missing or invalid) and to a
    Gaussian with the sample mean and standard deviation, integrated over the
    same integer bins.  A fitted real-valued N is evaluated at the nearest
    integer with p rescaled to preserve the fitted mean N p.
    """
    samples = np.asarray(samples)
    if samples.size < 100:
        raise DomainError("pdf_compare needs at least 100 samples")
    values = np.rint(samples).astype(np.int64)
    mean = float(values.mean())
    sd = float(values.std(ddof=1))
    sd = max(sd, 1e-9)  # sigma floor for degenerate ensembles

    lo = int(min(values.min(), math.floor(mean - 8 * sd), 0))
    hi = int(max(values.max(), math.ceil(mean + 8 * sd)))
    use_binomial = fit is not None and fit.valid
    if use_binomial:
        hi = max(hi, fit.N_round)
    bins = np.arange(lo, hi + 1)

    pmf_emp = np.bincount(values - lo, minlength=bins.size) / values.size

    tv_binomial = None
    if use_binomial:
        n_int = fit.N_round
        p_use = min(1.0, max(0.0, fit.N_fit * fit.p_fit / n_int))
        pmf_bin = scipy_stats.binom.pmf(bins, n_int, p_use)
        tv_binomial = float(0.5 * np.abs(pmf_emp - pmf_bin).sum())

    edges = np.concatenate([bins - 0.5, [bins[-1] + 0.5]])
    cdf = special.ndtr((edges - mean) / sd)
    pmf_gauss = np.diff(cdf)
    tv_gaussian = float(0.5 * np.abs(pmf_emp - pmf_gauss).sum())

    return PdfComparison(
        bins=bins, pmf_empirical=pmf_emp, tv_binomial=tv_binomial, tv_gaussian=tv_gaussian
    )


# ---------------------------------------------------------------------------
# duality and normality diagnostics


@dataclass
class DualityRow:
    nu: float
    mean_b0: float
    mean_b1_mirror: float
    diff: float
    se_combined: float
    systematic: float
    z: float
    ok: bool
    flag: str = ""


def duality_check(
    summaries: Sequence[ThresholdSummary], systematic_frac: float = DUALITY_SYSTEMATIC
) -> list[DualityRow]:
    """Compare <b0(nu)> against <b1(-nu)> across a symmetric threshold grid.

    The z-score is the excess of |difference| over the clipping systematic,
    in units of the combined standard error; |z| <= 3 is the pass mark.
    """
    nus = np.array([s.nu for s in summaries])
    order = np.argsort(nus)
    nus = nus[order]
    summaries = [summaries[i] for i in order]
    if not np.allclose(nus, -nus[::-1], atol=1e-9):
        raise ConfigError("duality check needs a threshold grid symmetric about 0")

    rows = []
    for i, s_pos in enumerate(summaries):
        s_neg = summaries[len(summaries) - 1 - i]  # summary at -nu
        diff = s_pos.mean_b0 - s_neg.mean_b1
        se = math.hypot(s_pos.se("b0"), s_neg.se("b1"))
        scale = max(abs(s_pos.mean_b0), abs(s_neg.mean_b1))
        systematic = systematic_frac * scale
        flag = ""
        if s_pos.n_realizations < 2:
            flag = "insufficient data"
            z = math.nan
            ok = False
        elif se == 0.0:
            excess = max(0.0, abs(diff) - systematic)
            z = 0.0 if excess == 0.0 else math.inf
            ok = z <= 3.0
        else:
            z = max(0.0, abs(diff) - systematic) / se
            ok = z <= 3.0
        rows.append(
            DualityRow(
                nu=s_pos.nu,
                mean_b0=s_pos.mean_b0,
                mean_b1_mirror=s_neg.mean_b1,
                diff=diff,
                se_combined=se,
                systematic=systematic,
                z=z,
                ok=ok,
                flag=flag,
            )
        )
    return rows


@dataclass
class NormalityRow:
    statistic: str
    nu: float
    sides: list[int]
    skewness: list[float]
    excess_kurtosis: list[float]
    abs_skew_decreasing: bool
    flags: list[str]


def normality_trend(
    results: Sequence[EnsembleResult], statistics: Sequence[str] = ("b0", "b1", "chi", "bsum")
) -> list[NormalityRow]:
    """Track skewness and excess kurtosis across grid sizes.

    All results must share the threshold grid; rows report, per statistic and
    threshold, whether |skewness| decreases monotonically as the grid side
    grows (the Gaussian-limit trend).  Constant statistics are flagged.
    """
    if len(results) < 2:
        raise ConfigError("normality trend needs at least 2 grid sizes")
    thresholds = results[0].config.thresholds
    for r in results[1:]:
        if r.config.thresholds != thresholds:
            raise ConfigError("all ensembles must share the threshold grid")
    results = sorted(results, key=lambda r: r.config.side)
    sides = [r.config.side for r in results]

    rows = []
    for stat in statistics:
        for nu in thresholds:
            skews, kurts, flags = [], [], []
            for r in results:
                x = r.samples(stat, nu).astype(float)
                if np.ptp(x) == 0.0:
                    skews.append(math.nan)
                    kurts.append(math.nan)
                    flags.append(f"constant at side {r.config.side}")
                else:
                    skews.append(float(scipy_stats.skew(x)))
                    kurts.append(float(scipy_stats.kurtosis(x)))
            finite = [abs(s) for s in skews if not math.isnan(s)]
            decreasing = len(finite) == len(skews) and all(
                b < a for a, b in zip(finite, finite[1:])
            )
            rows.append(
                NormalityRow(
                    statistic=stat,
                    nu=nu,
                    sides=sides,
                    skewness=skews,
                    excess_kurtosis=kurts,
                    abs_skew_decreasing=decreasing,
                    flags=flags,
                )
            )
    return rows


# ---------------------------------------------------------------------------
# regime-wise fit table (the fits.csv content)


@dataclass
class FitRow:
    fit: BinomialFit
    tv_binomial: float | None
    tv_gaussian: float | None


def compute_fits(
    result: EnsembleResult, r_c: float | None = None, regime_cut: float = 2.0
) -> list[FitRow]:
    """Produce the per-threshold fit table across the three regimes.

    nu >= regime_cut: analytic high-threshold inversion on chi;
    nu <= -regime_cut: the mirrored inversion on chi (sampled as -chi);
    in between: method-of-moments fits for each statistic.  TV distances are
    attached when there are enough realizations for a PDF comparison.
    """
    if r_c is None:
        r_c = result.r_c_measured
    area = result.area
    enough = result.config.n_realizations >= 100
    rows: list[FitRow] = []
    for summary in result.summaries:
        nu = summary.nu
        if nu >= regime_cut:
            fit = fit_binomial_high_nu(nu, summary.sd_chi, r_c, area)
            samples = result.samples("chi", nu)
            rows.append(_fit_row(fit, samples, enough))
        elif nu <= -regime_cut:
            fit = fit_binomial_low_nu(nu, summary.sd_chi, r_c, area)
            samples = -result.samples("chi", nu)
            rows.append(_fit_row(fit, samples, enough))
        else:
            for stat in ("b0", "b1", "chi", "bsum"):
                samples = result.samples(stat, nu)
                fit = fit_binomial_moments(
                    float(samples.mean()),
                    float(samples.var(ddof=1)),
                    nu=nu,
                    statistic=stat,
                )
                rows.append(_fit_row(fit, samples, enough))
    return rows


def _fit_row(fit: BinomialFit, samples: np.ndarray, enough: bool) -> FitRow:
    if not enough:
        return FitRow(fit=fit, tv_binomial=None, tv_gaussian=None)
    cmp = pdf_compare(samples, fit if fit.valid else None)
    return FitRow(fit=fit, tv_binomial=cmp.tv_binomial, tv_gaussian=cmp.tv_gaussian)


# ---------------------------------------------------------------------------
# file output (summary.csv, hist_*.csv, fits.csv, manifest)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_summary_csv(result: EnsembleResult, path: str | Path) -> None:
    """Write per-threshold moments; body is deterministic for a given manifest."""
    cols = [
        "nu", "n", "area",
        "mean_b0", "mean_b1", "mean_chi", "mean_bsum",
        "sd_b0", "sd_b1", "sd_chi", "sd_bsum", "cov_b0b1",
        "mean_b0_per_area", "mean_b1_per_area", "mean_chi_per_area",
        "mean_bsum_per_area",
    ]
    area = result.area
    lines = [f"# manifest_hash={result.config.manifest_hash()}", ",".join(cols)]
    for s in result.summaries:
        row = [
            s.nu, s.n_realizations, area,
            s.mean_b0, s.mean_b1, s.mean_chi, s.mean_bsum,
            s.sd_b0, s.sd_b1, s.sd_chi, s.sd_bsum, s.cov_b0b1,
            s.mean_b0 / area, s.mean_b1 / area, s.mean_chi / area, s.mean_bsum / area,
        ]
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_hist_csvs(result: EnsembleResult, outdir: str | Path) -> list[Path]:
    """One hist_<stat>_<nu>.csv per statistic and threshold."""
    outdir = Path(outdir)
    mh = result.config.manifest_hash()
    written = []
    for s in result.summaries:
        for stat in STAT_NAMES:
            hist = s.histograms.get(stat, {})
            path = outdir / f"hist_{stat}_{s.nu:g}.csv"
            lines = [f"# manifest_hash={mh}", "bin,count"]
            for value in sorted(hist):
                lines.append(f"{value},{hist[value]}")
            path.write_text("\n".join(lines) + "\n")
            written.append(path)
    return written


def write_fits_csv(rows: Sequence[FitRow], path: str | Path, manifest_hash: str) -> None:
    cols = ["nu", "statistic", "regime", "N", "p", "valid", "tv_binomial", "tv_gaussian"]
    lines = [f"# manifest_hash={manifest_hash}", ",".join(cols)]
    for row in rows:
        f = row.fit
        lines.append(
            ",".join(
                _fmt(v)
                for v in [
                    f.nu, f.statistic, f.regime, f.N_fit, f.p_fit,
                    int(f.valid), row.tv_binomial, row.tv_gaussian,
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_manifest(result: EnsembleResult, path: str | Path, extra: dict | None = None) -> None:
    manifest = result.config.to_manifest()
    manifest["manifest_hash"] = result.config.manifest_hash()
    if extra:
        manifest.update(extra)
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
