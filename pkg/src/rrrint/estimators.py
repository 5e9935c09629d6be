"""OLS, reduced-rank (RRR), fully modified OLS and fully modified RRR estimators.

All estimators take a :class:`RegressionSample` holding ``(dim, T)`` arrays and
return an :class:`Estimate`.  Sample moments are ``<a, b> = T^{-1} sum a_t b_t'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .covest import KernelConfig, bandwidth, difference, long_run, sample_moment
from .dgp import detrend
from .errors import (
    NotPositiveDefinite,
    RankTooLarge,
    SelectorSingular,
    SingularGram,
    SingularLongRun,
    WffNotPositiveDefinite,
)

METHODS = ("OLS", "RRR", "FM_OLS", "FM_RRR")


@dataclass(frozen=True)
class RegressionSample:
    y: np.ndarray
    z_r: np.ndarray
    z_u: np.ndarray | None = None
    preprocessing: str = "none"

    def __post_init__(self):
        y = np.atleast_2d(np.asarray(self.y, dtype=float))
        z_r = np.atleast_2d(np.asarray(self.z_r, dtype=float))
        T = y.shape[1]
        z_u = np.zeros((0, T)) if self.z_u is None else np.asarray(self.z_u, dtype=float).reshape(-1, T)
        if z_r.shape[1] != T or z_u.shape[1] != T:
            raise ValueError("y, z_r and z_u must have the same length")
        if T <= z_r.shape[0] + z_u.shape[0]:
            raise ValueError("T must exceed the number of regressors")
        if self.preprocessing not in ("none", "demean", "detrend"):
            raise ValueError(f"unknown preprocessing {self.preprocessing!r}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z_r", z_r)
        object.__setattr__(self, "z_u", z_u)

    @property
    def T(self) -> int:
        return self.y.shape[1]

    @property
    def s(self) -> int:
        return self.y.shape[0]

    @property
    def m_r(self) -> int:
        return self.z_r.shape[0]

    @property
    def m_u(self) -> int:
        return self.z_u.shape[0]

    def prepared(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        mode = self.preprocessing
        if mode == "none":
            return self.y, self.z_r, self.z_u
        return detrend(self.y, mode), detrend(self.z_r, mode), detrend(self.z_u, mode)


@dataclass(frozen=True)
class Estimate:
    method: str
    beta_r: np.ndarray
    beta_u: np.ndarray
    O_hat: np.ndarray
    Gamma_hat: np.ndarray
    singvals: np.ndarray
    n: int
    extras: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def beta(self) -> np.ndarray:
        return np.hstack([self.beta_r, self.beta_u])


def _solve_right(A: np.ndarray, G: np.ndarray, what: str = "Gram") -> np.ndarray:
    """``A G^{-1}`` for a symmetric Gram matrix ``G``."""
    if G.shape[0] == 0:
        return np.zeros((A.shape[0], 0))
    if not linalg.is_well_conditioned(G):
        raise SingularGram(f"{what} matrix is singular")
    return np.linalg.solve(G, A.T).T


def project_out(a, b) -> np.ndarray:
    """Residuals ``a - <a,b><b,b>^{-1} b`` of a regression of ``a`` on ``b``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1, a.shape[1])
    if b.shape[0] == 0:
        return a
    coef = _solve_right(sample_moment(a, b), sample_moment(b, b))
    return a - coef @ b


def _unrestricted(method, beta, m_r, singvals=None, extras=None) -> Estimate:
    s = beta.shape[0]
    return Estimate(
        method, beta[:, :m_r], beta[:, m_r:], np.zeros((s, 0)), np.zeros((m_r, 0)),
        np.asarray([] if singvals is None else singvals), min(s, m_r), extras or {},
    )


def ols(sample: RegressionSample) -> Estimate:
    y, z_r, z_u = sample.prepared()
    z = np.vstack([z_r, z_u])
    beta = _solve_right(sample_moment(y, z), sample_moment(z, z))
    return _unrestricted("OLS", beta, sample.m_r)


def _beta_u_given_r(y, z_r, z_u, beta_r) -> np.ndarray:
    if z_u.shape[0] == 0:
        return np.zeros((y.shape[0], 0))
    return _solve_right(sample_moment(y - beta_r @ z_r, z_u), sample_moment(z_u, z_u))


def _check_rank(n: int, s: int, m_r: int) -> None:
    if not 1 <= n <= min(s, m_r):
        raise RankTooLarge(f"n={n} not in [1, min(s, m_r)={min(s, m_r)}]")


def _spd(M: np.ndarray, what: str) -> None:
    try:
        linalg.sym_sqrt(M)
    except NotPositiveDefinite as exc:
        raise SingularGram(f"{what} is not positive definite") from exc
    if not linalg.is_well_conditioned(M):
        raise SingularGram(f"{what} is singular")


def rrr(sample: RegressionSample, n: int, weight: str = "symmetric") -> Estimate:
    """Rank-``n`` restricted least squares via a weighted truncated SVD.

    ``weight`` selects the factor of ``<y^pi, y^pi>^{-1}`` (see
    :func:`linalg.gram_factor`); ``beta_r`` does not depend on it.
    """
    y, z_r, z_u = sample.prepared()
    _check_rank(n, sample.s, sample.m_r)
    y_pi, z_pi = project_out(y, z_u), project_out(z_r, z_u)
    Syy, Szz = sample_moment(y_pi, y_pi), sample_moment(z_pi, z_pi)
    _spd(Syy, "<y^pi, y^pi>")
    _spd(Szz, "<z^pi, z^pi>")
    beta_ols_r = _solve_right(sample_moment(y_pi, z_pi), Szz)
    Wf = linalg.gram_factor(Syy, weight)
    Wp = linalg.sym_sqrt(Szz)
    tsvd = linalg.truncated_svd(Wf @ beta_ols_r @ Wp, n)
    O_hat = np.linalg.solve(Wf, tsvd.U @ tsvd.S)
    Kp = np.linalg.solve(Wp, tsvd.V)  # Wp symmetric: Kp' = V' Wp^{-1}
    beta_r = O_hat @ Kp.T
    beta_u = _beta_u_given_r(y, z_r, z_u, beta_r)
    return Estimate("RRR", beta_r, beta_u, O_hat, Kp, tsvd.singvals, n,
                    {"beta_ols_r": beta_ols_r, "degenerate": tsvd.degenerate})


def rrr_geneig(sample: RegressionSample, n: int) -> Estimate:
    """Same estimator as :func:`rrr`, computed from the generalized eigenproblem

    ``<z,z> K S^2 = <z,y><y,y>^{-1}<y,z> K`` (all moments after partialling
    out ``z_u``); the loading is the regression of ``y^pi`` on ``K' z^pi``.
    """
    y, z_r, z_u = sample.prepared()
    _check_rank(n, sample.s, sample.m_r)
    y_pi, z_pi = project_out(y, z_u), project_out(z_r, z_u)
    Syy, Szz = sample_moment(y_pi, y_pi), sample_moment(z_pi, z_pi)
    _spd(Syy, "<y^pi, y^pi>")
    _spd(Szz, "<z^pi, z^pi>")
    Szy = sample_moment(z_pi, y_pi)
    Q = Szy @ np.linalg.solve(Syy, Szy.T)
    Kp, lam = linalg.gen_eig_sym((Q + Q.T) / 2, Szz, n)
    f = Kp.T @ z_pi
    O_hat = _solve_right(sample_moment(y_pi, f), sample_moment(f, f))
    beta_r = O_hat @ Kp.T
    beta_u = _beta_u_given_r(y, z_r, z_u, beta_r)
    return Estimate("RRR", beta_r, beta_u, O_hat, Kp, np.sqrt(np.clip(lam, 0, None)), n,
                    {"route": "geneig"})


@dataclass(frozen=True)
class _FMParts:
    beta: np.ndarray
    u_hat: np.ndarray
    dz: np.ndarray
    omega_u_dz: np.ndarray
    omega_dz_dz: np.ndarray
    K: int


def _fm_parts(y, z, cfg: KernelConfig) -> _FMParts:
    T = y.shape[1]
    dz = difference(z)
    K = bandwidth(T, cfg)
    lr_dzdz = long_run(dz, dz, cfg, K)
    Odz = lr_dzdz.omega
    if not np.all(np.isfinite(Odz)) or np.abs(Odz).max() == 0 or not linalg.is_well_conditioned(Odz):
        raise SingularLongRun("long-run covariance of the regressor increments is singular")
    Szz = sample_moment(z, z)
    beta_ols = _solve_right(sample_moment(y, z), Szz)
    u_hat = y - beta_ols @ z
    lr_udz = long_run(u_hat, dz, cfg, K)
    corr = np.linalg.solve(Odz.T, lr_udz.omega.T).T  # Omega_{u,dz} Omega_{dz,dz}^{-1}
    num = sample_moment(y, z) - lr_udz.delta - corr @ (sample_moment(dz, z) - lr_dzdz.delta)
    beta = _solve_right(num, Szz)
    return _FMParts(beta, u_hat, dz, lr_udz.omega, Odz, K)


def fm_ols(sample: RegressionSample, cfg: KernelConfig | None = None) -> Estimate:
    """Fully modified OLS with kernel long-run corrections (OLS residuals, no iteration)."""
    cfg = cfg or KernelConfig()
    y, z_r, z_u = sample.prepared()
    parts = _fm_parts(y, np.vstack([z_r, z_u]), cfg)
    return _unrestricted("FM_OLS", parts.beta, sample.m_r, extras={"K": parts.K})


def fm_weight_matrix(y_pi, parts: _FMParts, cfg: KernelConfig) -> np.ndarray:
    """Inner matrix of the FM-RRR output weight (before ``^{-1/2}``).

    ``<y,y> - L - L'`` with ``L = Omega_{u,dz} Omega_{dz,dz}^{-1} (<dz,y> - Delta_{dz,dy})``.
    The second correction term is taken as the transpose of the first: the
    one-sided ``Delta_{dy,dz}`` does not estimate ``lim <y, dz>`` for
    stationary ``y`` and leaves the matrix indefinite.
    """
    dz = parts.dz
    corr = np.linalg.solve(parts.omega_dz_dz.T, parts.omega_u_dz.T).T
    left = corr @ (sample_moment(dz, y_pi) - long_run(dz, difference(y_pi), cfg, parts.K).delta)
    M = sample_moment(y_pi, y_pi) - left - left.T
    return (M + M.T) / 2


def fm_rrr(sample: RegressionSample, n: int, cfg: KernelConfig | None = None) -> Estimate:
    cfg = cfg or KernelConfig()
    y, z_r, z_u = sample.prepared()
    _check_rank(n, sample.s, sample.m_r)
    m_r = sample.m_r
    parts = _fm_parts(y, np.vstack([z_r, z_u]), cfg)
    beta_r_plus, beta_u_plus = parts.beta[:, :m_r], parts.beta[:, m_r:]
    M = fm_weight_matrix(project_out(y, z_u), parts, cfg)
    try:
        Wff = linalg.inv_sym_sqrt(M)
    except NotPositiveDefinite as exc:
        raise WffNotPositiveDefinite(str(exc)) from exc
    Srr = sample_moment(z_r, z_r)
    _spd(Srr, "<z_r, z_r>")
    Zh = linalg.sym_sqrt(Srr)
    tsvd = linalg.truncated_svd(Wff @ beta_r_plus @ Zh, n)
    O_hat = np.linalg.solve(Wff, tsvd.U @ tsvd.S)
    Gamma_hat = np.linalg.solve(Zh, tsvd.V)
    beta_r = O_hat @ Gamma_hat.T
    if z_u.shape[0]:
        coef = _solve_right(sample_moment(z_r, z_u), sample_moment(z_u, z_u))
        beta_u = beta_u_plus - (beta_r_plus - beta_r) @ coef
    else:
        beta_u = beta_u_plus
    return Estimate("FM_RRR", beta_r, beta_u, O_hat, Gamma_hat, tsvd.singvals, n,
                    {"beta_plus_r": beta_r_plus, "K": parts.K})


def estimate(method: str, sample: RegressionSample, n: int, cfg: KernelConfig | None = None) -> Estimate:
    if method == "OLS":
        return ols(sample)
    if method == "RRR":
        return rrr(sample, n)
    if method == "FM_OLS":
        return fm_ols(sample, cfg)
    if method == "FM_RRR":
        return fm_rrr(sample, n, cfg)
    raise ValueError(f"unknown estimator {method!r}")


def normalize_factors(O, Gamma) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Renormalise ``O Gamma'`` so that ``Gamma_norm' S_p = I_n``.

    Rows of ``Gamma`` are picked by Gaussian elimination with complete
    pivoting; ``S_p`` holds the corresponding columns of the identity (in
    increasing row order).  The product ``O Gamma'`` is unchanged.
    """
    O = np.atleast_2d(np.asarray(O, dtype=float))
    G = np.atleast_2d(np.asarray(Gamma, dtype=float))
    m, n = G.shape
    if n == 0:
        return O, G, np.zeros((m, 0))
    work = G.copy()
    rows_left, cols_left = list(range(m)), list(range(n))
    chosen = []
    for _ in range(n):
        sub = np.abs(work[np.ix_(rows_left, cols_left)])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        r, c = rows_left[i], cols_left[j]
        piv = work[r, c]
        if piv == 0:
            raise SelectorSingular("Gamma does not have full column rank")
        for rr in rows_left:
            if rr != r:
                work[rr, :] -= work[rr, c] / piv * work[r, :]
        chosen.append(r)
        rows_left.remove(r)
        cols_left.remove(c)
    chosen.sort()
    Sp = np.eye(m)[:, chosen]
    A = Sp.T @ G
    if np.linalg.cond(A) >= 1e10:
        raise SelectorSingular("selected rows of Gamma are ill-conditioned")
    G_norm = np.linalg.solve(A.T, G.T).T
    O_norm = O @ A.T
    return O_norm, G_norm, Sp
