"""Monte Carlo experiments: convergence rates, exact identities, matched comparisons, limit laws.

Replication ``r`` draws its sample from ``SeedSequence([seed, r])`` for every
``T`` in the grid (common random numbers; noise is drawn time-major so a
longer sample extends a shorter one).  Per-replication work may run on a
thread pool; results are collected in replication order, so every output is
independent of the number of threads.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import asymptotics, estimators
from .covest import KernelConfig, sample_moment
from .dgp import DgpSpec, canonical_form, detrend, simulate
from .errors import ConfigError, IdentityViolation, RRRError, WffNotPositiveDefinite

KINDS = ("rate", "identity", "matched", "dist")
FAILURE_BUDGET = 0.05
DEGENERATE_STD = 1e-10

ZERO_ERROR_TOL = 1e-10
IDENTITY_TOL = {
    "beta_u_identity": 1e-10,
    "beta_u_correction": 1e-10,
    "rrr_vs_geneig": 1e-8,
    "factor_invariance": 1e-9,
    "full_rank_rrr_ols": 1e-10,
    "full_rank_fmrrr_fmols": 1e-10,
}

CSV_COLUMNS = ("experiment_id", "estimator", "T", "block", "statistic", "value", "reps", "failures")


@dataclass
class ExperimentConfig:
    spec: DgpSpec
    estimators: tuple = ("OLS", "RRR")
    n: int | None = None
    T_grid: tuple = (200, 400, 800)
    R: int = 200
    seed: int = 0
    kernel: KernelConfig = field(default_factory=KernelConfig)
    preprocessing: str = "none"
    limit_grid_N: int = 1000
    experiment_id: str = "experiment"
    kind: str = "rate"
    xi_sign: str = "shared"
    z_cov: str = "analytic"

    def __post_init__(self):
        self.estimators = tuple(self.estimators)
        self.T_grid = tuple(int(t) for t in self.T_grid)
        if self.n is None:
            self.n = self.spec.n

    def validate(self, prefix: str = "") -> "ExperimentConfig":
        def err(key, msg):
            raise ConfigError(prefix + key, msg)

        if self.kind not in KINDS:
            err("kind", f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        bad = [e for e in self.estimators if e not in estimators.METHODS]
        if bad or not self.estimators:
            err("estimators", f"unknown or empty estimator list {list(self.estimators)}")
        if not self.T_grid or any(b <= a for a, b in zip(self.T_grid, self.T_grid[1:])):
            err("T_grid", "must be strictly increasing")
        if self.kind == "rate" and len(self.T_grid) < 2:
            err("T_grid", "rate experiments need at least two sample sizes")
        if min(self.T_grid) <= self.spec.m + self.spec.q + 2:
            err("T_grid", "sample sizes too small for the number of regressors")
        if self.R < 50:
            err("R", f"need at least 50 replications, got {self.R}")
        if not 1 <= int(self.n) <= min(self.spec.s, self.spec.m_r):
            err("n", f"rank {self.n} outside [1, min(s, m_r)]")
        if self.preprocessing not in ("none", "demean", "detrend"):
            err("preprocessing", f"unknown mode {self.preprocessing!r}")
        if self.limit_grid_N < 10:
            err("limit_grid_N", "limit grid needs at least 10 steps")
        if self.xi_sign not in ("shared", "flipped"):
            err("xi_sign", "expected 'shared' or 'flipped'")
        if self.z_cov not in ("analytic", "proxy"):
            err("z_cov", "expected 'analytic' or 'proxy'")
        try:
            self.spec.validate(allow_noiseless=True)
        except RRRError as exc:
            err("spec", str(exc))
        return self


@dataclass
class McResult:
    experiment_id: str
    kind: str
    rows: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    plot_data: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    def add(self, estimator, T, block, statistic, value, reps, failures):
        self.rows.append({
            "experiment_id": self.experiment_id, "estimator": estimator, "T": T,
            "block": block, "statistic": statistic, "value": float(value),
            "reps": int(reps), "failures": int(failures),
        })

    def get(self, statistic, estimator=None, T=None, block=None) -> list:
        return [
            r["value"] for r in self.rows
            if r["statistic"] == statistic
            and (estimator is None or r["estimator"] == estimator)
            and (T is None or r["T"] == T)
            and (block is None or r["block"] == block)
        ]

    def value(self, statistic, estimator=None, T=None, block=None) -> float:
        vals = self.get(statistic, estimator, T, block)
        if len(vals) != 1:
            raise KeyError(f"{statistic}/{estimator}/{T}/{block}: {len(vals)} matches")
        return vals[0]

    def to_dict(self) -> dict:
        return {
            "experiment_id": self.experiment_id, "kind": self.kind, "rows": self.rows,
            "flags": self.flags,
            "plot_data": {k: v for k, v in sorted(self.plot_data.items())},
            "wall_clock_seconds": self.wall_clock,
        }


# ------------------------------------------------------------- plumbing


def _map(fn, items, threads: int):
    items = list(items)
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _rep_seed(seed: int, r: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), int(r)])


def _derived_seed(seed: int, tag: int) -> int:
    return int(np.random.SeedSequence([int(seed), 0xA5A5, tag]).generate_state(1)[0])


@dataclass
class _Context:
    cfg: ExperimentConfig
    canon: object
    T_zr_inv: np.ndarray

    @classmethod
    def build(cls, cfg):
        canon = canonical_form(cfg.spec)
        return cls(cfg, canon, np.linalg.inv(canon.T_zr))

    def sample(self, T, r):
        smp = simulate(self.cfg.spec, T, _rep_seed(self.cfg.seed, r), validate=False)
        return smp, estimators.RegressionSample(smp.y, smp.z_r, smp.z_u, self.cfg.preprocessing)

    def canonical_error(self, beta_r):
        return self.canon.T_y @ (beta_r - self.cfg.spec.b_r) @ self.T_zr_inv

    def estimate_all(self, smp, methods=None):
        out = {}
        for m in methods or self.cfg.estimators:
            try:
                out[m] = estimators.estimate(m, smp, self.cfg.n, self.cfg.kernel)
            except RRRError:
                out[m] = None
        return out


def _col_blocks(spec: DgpSpec):
    blocks = []
    if spec.c_r:
        blocks.append(("nonstationary/columns", slice(0, spec.c_r), 1.0))
    if spec.m_r - spec.c_r:
        blocks.append(("stationary/columns", slice(spec.c_r, spec.m_r), 0.5))
    return blocks


def _slope(logT, logv):
    """OLS slope of ``logv`` on ``logT`` and its standard error."""
    x, y = np.asarray(logT), np.asarray(logv)
    if x.size < 2 or not np.all(np.isfinite(y)):
        return math.nan, math.nan
    X = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    if x.size < 3:
        return float(coef[1]), math.nan
    resid = y - X @ coef
    s2 = resid @ resid / (x.size - 2)
    se = math.sqrt(s2 * np.linalg.inv(X.T @ X)[1, 1])
    return float(coef[1]), se


def _is_zero(x, scale=1.0):
    # rounding-level errors from a noiseless design count as exact zeros
    return bool(np.all(np.abs(np.asarray(x)) <= ZERO_ERROR_TOL * max(1.0, scale)))


def _check_budget(res: McResult, est, T, fails, R):
    if fails > FAILURE_BUDGET * R:
        res.flags.append(f"{est} T={T}: failure rate {fails}/{R} exceeds budget")
        return False
    return True


def ks_distance(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    return float(stats.ks_2samp(np.ravel(a), np.ravel(b), method="asymp").statistic)


# ------------------------------------------------------------ experiments


def run_rate_experiment(cfg: ExperimentConfig, threads: int = 1) -> McResult:
    """Median canonical error norms per block and their log-log slopes in ``T``."""
    t0 = time.perf_counter()
    cfg.validate()
    ctx = _Context.build(cfg)
    spec = cfg.spec
    res = McResult(cfg.experiment_id, "rate")
    blocks = _col_blocks(spec)
    medians = {(m, b[0]): [] for m in cfg.estimators for b in blocks}
    for T in cfg.T_grid:
        def one(r, T=T):
            _, smp = ctx.sample(T, r)
            ests = ctx.estimate_all(smp)
            out = {}
            for m, e in ests.items():
                if e is None:
                    out[m] = None
                    continue
                err = ctx.canonical_error(e.beta_r)
                out[m] = [np.linalg.norm(err[:, sl]) for _, sl, _ in blocks]
            return out

        reps = _map(one, range(cfg.R), threads)
        for m in cfg.estimators:
            vals = [x[m] for x in reps if x[m] is not None]
            fails = cfg.R - len(vals)
            ok = _check_budget(res, m, T, fails, cfg.R)
            arr = np.array(vals).reshape(len(vals), len(blocks))
            for bi, (name, _, power) in enumerate(blocks):
                med = float(np.median(arr[:, bi])) if ok and len(vals) else math.nan
                res.add(m, T, name, "median_norm", med, cfg.R, fails)
                res.add(m, T, name, "median_scaled_norm", med * T**power, cfg.R, fails)
                medians[(m, name)].append(med)
    logT = np.log(np.array(cfg.T_grid, dtype=float))
    for (m, name), meds in medians.items():
        meds = np.array(meds)
        if not np.all(np.isfinite(meds)):
            slope, se = math.nan, math.nan
            res.flags.append(f"{m} {name}: missing medians, slope undefined")
        elif _is_zero(meds, np.linalg.norm(cfg.spec.b_r)):
            slope, se = math.nan, math.nan
            res.flags.append(f"{m} {name}: zero errors, slope undefined")
        elif np.all(meds > 0):
            slope, se = _slope(logT, np.log(meds))
            res.plot_data[f"{m}__{name}"] = [[float(a), float(b)] for a, b in zip(logT, np.log(meds))]
        else:
            slope, se = math.nan, math.nan
            res.flags.append(f"{m} {name}: zero errors, slope undefined")
        res.add(m, "all", name, "rate_slope", slope, cfg.R, 0)
        res.add(m, "all", name, "rate_slope_se", se, cfg.R, 0)
    res.wall_clock = time.perf_counter() - t0
    return res


def _resid(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))


def identity_residuals(smp: estimators.RegressionSample, eps_loaded: np.ndarray, spec: DgpSpec,
                       n: int, kernel: KernelConfig) -> dict:
    """Residuals of the exact algebraic identities on one sample (``None`` = not applicable)."""
    y, z_r, z_u = smp.prepared()
    u = eps_loaded if smp.preprocessing == "none" else detrend(eps_loaded, smp.preprocessing)
    out = {}
    r = estimators.rrr(smp, n)
    if smp.m_u:
        Guu = sample_moment(z_u, z_u)
        rhs = (sample_moment(u, z_u) + (spec.b_r - r.beta_r) @ sample_moment(z_r, z_u)) @ np.linalg.inv(Guu)
        out["beta_u_identity"] = _resid(r.beta_u - spec.b_u, rhs)
        o = estimators.ols(smp)
        corr = (o.beta_r - r.beta_r) @ sample_moment(z_r, z_u) @ np.linalg.inv(Guu)
        out["beta_u_correction"] = _resid(r.beta_u - o.beta_u, corr)
    else:
        out["beta_u_identity"] = out["beta_u_correction"] = None
    out["rrr_vs_geneig"] = _resid(estimators.rrr_geneig(smp, n).beta, r.beta)
    out["factor_invariance"] = _resid(estimators.rrr(smp, n, weight="cholesky").beta, r.beta)
    full = min(smp.s, smp.m_r)
    out["full_rank_rrr_ols"] = _resid(estimators.rrr(smp, full).beta, estimators.ols(smp).beta)
    try:
        fm_full = estimators.fm_rrr(smp, full, kernel).beta
    except WffNotPositiveDefinite:
        # an indefinite sample weight leaves FM-RRR undefined on this draw
        out["full_rank_fmrrr_fmols"] = None
    else:
        out["full_rank_fmrrr_fmols"] = _resid(fm_full, estimators.fm_ols(smp, kernel).beta)
    return out


def run_identity_checks(cfg: ExperimentConfig, threads: int = 1, raise_on_violation: bool = True) -> McResult:
    """Maximum residual of each exact identity over all replications and sample sizes.

    Raises :class:`IdentityViolation` (carrying the result as ``.result``) if
    any residual exceeds its tolerance.
    """
    t0 = time.perf_counter()
    cfg.validate()
    ctx = _Context.build(cfg)
    res = McResult(cfg.experiment_id, "identity")
    violations = []
    for T in cfg.T_grid:
        def one(r, T=T):
            raw, smp = ctx.sample(T, r)
            try:
                return identity_residuals(smp, cfg.spec.Lambda @ raw.eps, cfg.spec, cfg.n, cfg.kernel)
            except RRRError:
                return None

        reps = _map(one, range(cfg.R), threads)
        good = [x for x in reps if x is not None]
        fails = cfg.R - len(good)
        _check_budget(res, "identity", T, fails, cfg.R)
        for name, tol in IDENTITY_TOL.items():
            vals = [x[name] for x in good if x[name] is not None]
            if vals and len(vals) < len(good):
                res.add("all", T, "identity", f"{name}_inapplicable", len(good) - len(vals), cfg.R, fails)
            if not vals:
                res.add("all", T, "identity", f"{name}_skipped", 1.0, cfg.R, fails)
                continue
            worst = max(vals)
            res.add("all", T, "identity", name, worst, cfg.R, fails)
            if not worst <= tol:
                violations.append(f"{name} at T={T}: {worst:.3e} > {tol:.0e}")
    res.flags.extend(violations)
    res.wall_clock = time.perf_counter() - t0
    if violations and raise_on_violation:
        exc = IdentityViolation("; ".join(violations))
        exc.result = res
        raise exc
    return res


def _doubling_ratios(Ts, meds):
    out = []
    for (T1, a), (T2, b) in zip(zip(Ts, meds), list(zip(Ts, meds))[1:]):
        if a > 0 and np.isfinite(a) and np.isfinite(b):
            out.append((b / a) ** (1.0 / math.log2(T2 / T1)))
        else:
            out.append(math.nan)
    return out


def run_matched_comparison(cfg: ExperimentConfig, threads: int = 1) -> McResult:
    """Structure of ``beta_RRR - beta_OLS`` on common samples, and FM-OLS vs RRR in distribution.

    ``A_T = O2^dagger [0, I] D_st sqrt(T)`` and
    ``B_T = [0, I] D_st <z3^pi, z3^pi> Gamma32 sqrt(T)`` where ``D_st`` is the
    stationary-column block of ``T_y (beta_RRR - beta_OLS) T_zr^{-1}``.
    """
    t0 = time.perf_counter()
    cfg.validate()
    ctx = _Context.build(cfg)
    spec, canon = cfg.spec, ctx.canon
    res = McResult(cfg.experiment_id, "matched")
    proj = asymptotics.correction_projectors(spec, canon)
    c_r, c_y = spec.c_r, canon.c_y
    with_fm = "FM_OLS" in cfg.estimators and c_r > 0
    methods = ("OLS", "RRR", "FM_OLS") if with_fm else ("OLS", "RRR")
    degenerate_rows = asymptotics.fm_degenerate_rows(spec, canon) if with_fm else None
    medA, medB = [], []
    for T in cfg.T_grid:
        def one(r, T=T):
            _, smp = ctx.sample(T, r)
            ests = ctx.estimate_all(smp, methods)
            if any(e is None for e in ests.values()):
                return None
            D = ctx.canonical_error(ests["RRR"].beta_r) - ctx.canonical_error(ests["OLS"].beta_r)
            Dst = D[c_y:, c_r:]
            out = {"A": math.nan, "B": math.nan, "full": float(np.abs(D).max())}
            if Dst.size and proj.O2_dagger.size:
                out["A"] = float(np.linalg.norm(proj.O2_dagger @ Dst) * math.sqrt(T))
            if Dst.size and canon.Gamma32.size:
                y, z_r, z_u = smp.prepared()
                z3 = (canon.T_zr @ z_r)[c_r:]
                z3p = estimators.project_out(z3, z_u)
                out["B"] = float(np.linalg.norm(Dst @ sample_moment(z3p, z3p) @ canon.Gamma32) * math.sqrt(T))
            if with_fm:
                out["fm"] = T * ctx.canonical_error(ests["FM_OLS"].beta_r)[:, :c_r]
                out["rrr"] = T * ctx.canonical_error(ests["RRR"].beta_r)[:, :c_r]
            return out

        reps = _map(one, range(cfg.R), threads)
        good = [x for x in reps if x is not None]
        fails = cfg.R - len(good)
        _check_budget(res, "RRR-OLS", T, fails, cfg.R)
        a = float(np.median([g["A"] for g in good])) if good else math.nan
        b = float(np.median([g["B"] for g in good])) if good else math.nan
        medA.append(a)
        medB.append(b)
        res.add("RRR-OLS", T, "stationary/columns", "median_A_T", a, cfg.R, fails)
        res.add("RRR-OLS", T, "stationary/columns", "median_B_T", b, cfg.R, fails)
        res.add("RRR-OLS", T, "all", "max_abs_difference", max(g["full"] for g in good), cfg.R, fails)
        if with_fm and good:
            fm = np.array([g["fm"] for g in good])
            rr = np.array([g["rrr"] for g in good])
            ks = []
            for i in range(spec.s):
                if degenerate_rows[i]:
                    res.flags.append(f"T={T}: output row {i + 1} has a degenerate FM limit; excluded from KS")
                    continue
                for j in range(c_r):
                    ks.append(ks_distance(fm[:, i, j], rr[:, i, j]))
            res.add("FM_OLS-RRR", T, "nonstationary/columns", "max_ks",
                    max(ks) if ks else math.nan, cfg.R, fails)
            res.add("FM_OLS-RRR", T, "nonstationary/columns", "ks_coordinates", len(ks), cfg.R, fails)
    for label, meds in (("A_T", medA), ("B_T", medB)):
        for T, ratio in zip(cfg.T_grid[1:], _doubling_ratios(cfg.T_grid, meds)):
            res.add("RRR-OLS", T, "stationary/columns", f"ratio_per_doubling_{label}", ratio, cfg.R, 0)
    res.wall_clock = time.perf_counter() - t0
    return res


def _limit_for(draws: asymptotics.LimitDraws, method: str) -> np.ndarray:
    return {
        "OLS": draws.M_r,
        "RRR": draws.M_r + draws.correction,
        "FM_OLS": draws.M_r_plus,
        "FM_RRR": draws.M_r_plus + draws.correction_plus,
    }[method]


def kron_target(spec: DgpSpec) -> np.ndarray:
    """``(E z z')^{-1} kron Lambda Sigma Lambda'`` for a purely stationary spec (column-major vec)."""
    lr = asymptotics.true_long_run(spec)
    k = spec.k
    Gnu = lr.gamma0[k:, k:]
    import scipy.linalg as sla

    H = sla.block_diag(spec.H_r, spec.H_u) if spec.m_u else spec.H_r
    Ezz = H @ Gnu @ H.T
    Su = spec.Lambda @ spec.Sigma @ spec.Lambda.T
    return np.kron(np.linalg.inv(Ezz), Su)


def run_dist_experiment(cfg: ExperimentConfig, threads: int = 1) -> McResult:
    """Compare scaled estimation errors with their limit laws.

    Purely stationary specs: covariance of ``vec(sqrt(T)(beta - b))`` against
    the Kronecker formula.  Specs with integrated regressors: per-coordinate
    KS distances of ``T``-scaled nonstationary-column errors against limit
    draws (``R`` draws on a ``limit_grid_N`` grid), and of ``sqrt(T)``-scaled
    stationary columns of OLS/FM-OLS against ``Z_r`` draws.  Coordinates whose
    limit draws are constant are excluded and flagged.
    """
    t0 = time.perf_counter()
    cfg.validate()
    ctx = _Context.build(cfg)
    spec, canon = cfg.spec, ctx.canon
    res = McResult(cfg.experiment_id, "dist")
    stationary = spec.c_r == 0 and spec.c_u == 0
    draws = None
    if not stationary:
        draws = asymptotics.limit_sampler(
            spec, canon, cfg.limit_grid_N, cfg.R, _derived_seed(cfg.seed, 1),
            preprocessing=cfg.preprocessing, xi_sign=cfg.xi_sign, z_cov=cfg.z_cov)
        res.add("limit", "all", "all", "limit_resamples", draws.resamples, cfg.R, 0)
    target = kron_target(spec) if stationary else None
    c_r = spec.c_r
    for T in cfg.T_grid:
        def one(r, T=T):
            _, smp = ctx.sample(T, r)
            out = {}
            for m, e in ctx.estimate_all(smp).items():
                if e is None:
                    out[m] = None
                elif stationary:
                    out[m] = math.sqrt(T) * (e.beta - np.hstack([spec.b_r, spec.b_u])).ravel(order="F")
                else:
                    out[m] = ctx.canonical_error(e.beta_r)
            return out

        reps = _map(one, range(cfg.R), threads)
        for m in cfg.estimators:
            vals = [x[m] for x in reps if x[m] is not None]
            fails = cfg.R - len(vals)
            if not _check_budget(res, m, T, fails, cfg.R):
                continue
            if stationary:
                V = np.array(vals)
                C = np.cov(V.T, bias=False).reshape(target.shape)
                rel = np.linalg.norm(C - target) / np.linalg.norm(target)
                res.add(m, T, "all", "cov_rel_frobenius", rel, cfg.R, fails)
                continue
            E = np.array(vals)
            if _is_zero(E, np.linalg.norm(cfg.spec.b_r)):
                res.flags.append(f"{m} T={T}: zero errors, KS undefined")
                continue
            blocks = [("nonstationary/columns", T * E[:, :, :c_r], _limit_for(draws, m))]
            if m in ("OLS", "FM_OLS") and spec.m_r > c_r:
                blocks.append(("stationary/columns", math.sqrt(T) * E[:, :, c_r:], draws.Z_r))
            for name, emp, lim in blocks:
                ks, skipped = [], 0
                for i in range(emp.shape[1]):
                    for j in range(emp.shape[2]):
                        if lim[:, i, j].std() < DEGENERATE_STD:
                            skipped += 1
                            continue
                        ks.append(ks_distance(emp[:, i, j], lim[:, i, j]))
                if skipped:
                    res.flags.append(f"{m} T={T} {name}: {skipped} coordinate(s) with degenerate limit excluded")
                res.add(m, T, name, "max_ks", max(ks) if ks else math.nan, cfg.R, fails)
                res.add(m, T, name, "ks_coordinates", len(ks), cfg.R, fails)
    res.wall_clock = time.perf_counter() - t0
    return res


RUNNERS = {
    "rate": run_rate_experiment,
    "identity": run_identity_checks,
    "matched": run_matched_comparison,
    "dist": run_dist_experiment,
}


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> McResult:
    return RUNNERS[cfg.kind](cfg, threads=threads)


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_results(results: list, out_dir) -> list:
    """Write ``results.csv``, ``summary.json`` and plot-data files; return the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    csv_path = os.path.join(out_dir, "results.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for res in results:
            for row in res.rows:
                w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    paths.append(csv_path)
    js_path = os.path.join(out_dir, "summary.json")
    with open(js_path, "w") as fh:
        json.dump({"experiments": [r.to_dict() for r in results]}, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    paths.append(js_path)
    for res in results:
        for key, pts in sorted(res.plot_data.items()):
            est, block = key.split("__")
            name = f"plot_{res.experiment_id}_{est}_{block.replace('/', '-')}.csv"
            p = os.path.join(out_dir, name)
            with open(p, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["log_T", "log_median_norm"])
                for a, b in pts:
                    w.writerow([repr(a), repr(b)])
            paths.append(p)
    return paths
