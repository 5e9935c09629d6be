"""Scaling matrices, analytic long-run moments and limit-distribution samplers.

Population moments are exact: the innovation filter is written as a linear
state-space system and its stationary covariance obtained from a discrete
Lyapunov equation.  Stochastic integrals use left-point (Ito) Riemann sums on
an ``N``-step grid over ``[0, 1]``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import linalg
from .dgp import CanonicalForm, DgpSpec
from .errors import InvalidSpec, SingularGram, SingularMoment

T_PROXY = 20000
PROXY_REPS = 500
MAX_RESAMPLE = 20


# ------------------------------------------------------------------ scaling


@dataclass(frozen=True)
class ScalingScheme:
    T: int
    D_zr: np.ndarray
    D_zu: np.ndarray
    D_y: np.ndarray

    @property
    def D_z(self) -> np.ndarray:
        return sla.block_diag(self.D_zr, self.D_zu)


def _scale_diag(n_int: int, dim: int, T: int) -> np.ndarray:
    return np.diag(np.r_[np.full(n_int, T ** -1.0), np.full(dim - n_int, T ** -0.5)])


def scaling(canon: CanonicalForm, spec: DgpSpec, T: int) -> ScalingScheme:
    """``D_{z,r} = diag(T^-1 I_{c_r}, T^-1/2 I)``, likewise ``D_{z,u}`` and ``D_y`` (with ``c_y``)."""
    if T < 2:
        raise ValueError("T must be at least 2")
    return ScalingScheme(
        int(T),
        _scale_diag(spec.c_r, spec.m_r, T),
        _scale_diag(spec.c_u, spec.m_u, T),
        _scale_diag(canon.c_y, spec.s, T),
    )


# ------------------------------------------------------- analytic moments


@dataclass(frozen=True)
class TrueLongRun:
    """Moments of ``x_t = [eps_t; nu_t]`` (``k + m`` rows, ``eps`` first)."""

    omega: np.ndarray
    delta: np.ndarray
    gamma0: np.ndarray
    c1: np.ndarray
    k: int

    def autocov(self, j: int) -> np.ndarray:
        return self._acov(j)

    _acov: object = field(default=None, repr=False, compare=False)


def _state_space(spec: DgpSpec):
    """``xi_t = F xi_{t-1} + G eps_{t-1}``, ``nu_t = H xi_t``.

    ``xi_t = [nu_t, ..., nu_{t-p'+1}, eps_{t-1}, ..., eps_{t-q+1}]`` with
    ``p' = max(p, 1)``.
    """
    m, k, p, q = spec.m, spec.k, spec.p, spec.q
    pe = max(p, 1)
    dn, de = m * pe, k * (q - 1)
    F = np.zeros((dn + de, dn + de))
    G = np.zeros((dn + de, k))
    for i, A in enumerate(spec.ar_coeffs):
        F[:m, i * m:(i + 1) * m] = A
    for j, C in enumerate(spec.ma_coeffs[1:]):
        F[:m, dn + j * k: dn + (j + 1) * k] = C
    if pe > 1:
        F[m:dn, : dn - m] = np.eye(dn - m)
    if de:
        G[dn: dn + k] = np.eye(k)
        F[dn + k:, dn: dn + de - k] = np.eye(de - k)
    G[:m] = spec.ma_coeffs[0]
    H = np.zeros((m, dn + de))
    H[:, :m] = np.eye(m)
    return F, G, H


def true_long_run(spec: DgpSpec) -> TrueLongRun:
    """Exact ``Omega``, ``Delta`` and ``Gamma(0)`` of ``[eps; nu]`` and ``c(1)``.

    ``Omega = sum_j Gamma(j)``, ``Delta = sum_{j>=0} Gamma(j)`` with
    ``Gamma(j) = E x_j x_0'``.  Only the stationary filter enters, i.e. these
    are the moments of the innovations and hence of the differenced
    integrated coordinates.
    """
    F, G, H = _state_space(spec)
    k, m = spec.k, spec.m
    if F.size and np.max(np.abs(np.linalg.eigvals(F))) >= 1:
        raise InvalidSpec("innovation filter is not stable")
    S = spec.Sigma
    P = sla.solve_discrete_lyapunov(F, G @ S @ G.T) if F.size else np.zeros((0, 0))
    P = (P + P.T) / 2
    Hx = np.vstack([np.zeros((k, F.shape[0])), H])
    J = np.vstack([np.eye(k), np.zeros((m, k))])
    g0 = Hx @ P @ Hx.T + J @ S @ J.T
    g0 = (g0 + g0.T) / 2
    # sum_{j>=1} Gamma(j) = Hx (I-F)^{-1} [F P Hx' + G S J']
    inner = F @ P @ Hx.T + G @ S @ J.T
    tail = Hx @ np.linalg.solve(np.eye(F.shape[0]) - F, inner)
    delta = g0 + tail
    omega = g0 + tail + tail.T

    def acov(j: int) -> np.ndarray:
        if j == 0:
            return g0.copy()
        if j < 0:
            return acov(-j).T
        Fj1 = np.linalg.matrix_power(F, j - 1)
        return Hx @ Fj1 @ inner

    return TrueLongRun(omega, delta, g0, spec.c1(), k, acov)


# ------------------------------------------------------ projector constants


@dataclass(frozen=True)
class Projectors:
    Xi: np.ndarray
    P: np.ndarray
    O2_dagger: np.ndarray
    Gamma32_dagger: np.ndarray
    Ey2: np.ndarray
    Ez3: np.ndarray
    annihilator: np.ndarray  # I - O2 O2^dagger


def _selector(rows, dim: int) -> np.ndarray:
    L = np.zeros((len(rows), dim))
    L[np.arange(len(rows)), rows] = 1.0
    return L


def _population_pieces(spec: DgpSpec, canon: CanonicalForm, lr: TrueLongRun):
    """Linear maps from ``x_t = [eps; nu]`` to ``z~3``, ``z~2^u`` and ``y~2``."""
    k, m_r, c_r, c_y = spec.k, spec.m_r, spec.c_r, canon.c_y
    dim = k + spec.m
    L_z3 = _selector(k + np.arange(c_r, m_r), dim)
    L_zu = _selector(k + m_r + np.arange(spec.c_u, spec.m_u), dim)
    b23 = canon.b_tilde_r[c_y:, c_r:]
    TyL = (canon.T_y @ spec.Lambda)[c_y:]
    L_eps = np.hstack([np.eye(k), np.zeros((k, spec.m))])
    L_y2 = b23 @ L_z3 + TyL @ L_eps
    G0 = lr.gamma0

    def project(L):
        if L_zu.shape[0] == 0:
            return L
        Euu = L_zu @ G0 @ L_zu.T
        if not linalg.is_well_conditioned(Euu):
            raise SingularMoment("E z2u z2u' is singular")
        return L - (L @ G0 @ L_zu.T) @ np.linalg.solve(Euu, L_zu)

    return L_z3, L_zu, L_y2, L_eps, project


def correction_projectors(spec: DgpSpec, canon: CanonicalForm, lr: TrueLongRun | None = None) -> Projectors:
    """Population ``Xi``, ``P``, ``O2^dagger`` and ``Gamma32^dagger``."""
    lr = lr or true_long_run(spec)
    G0 = lr.gamma0
    L_z3, _, L_y2, L_eps, project = _population_pieces(spec, canon, lr)
    Pz3, Py2 = project(L_z3), project(L_y2)
    Ez3 = Pz3 @ G0 @ Pz3.T
    Ey2 = Py2 @ G0 @ Py2.T
    for name, E in (("E z3 z3'", Ez3), ("E y2 y2'", Ey2)):
        if E.size and (np.linalg.eigvalsh(E)[0] <= 0 or not linalg.is_well_conditioned(E)):
            raise SingularMoment(f"{name} is singular")
    c_y = canon.c_y
    s = spec.s
    O2, G32 = canon.O2, canon.Gamma32
    r2 = O2.shape[1]
    if r2:
        O2d = linalg.weighted_pinv(O2, linalg.inv_sym_sqrt(Ey2))
        N = G32.T @ Ez3 @ G32
        if not linalg.is_well_conditioned(N):
            raise SingularMoment("Gamma32' E z3 z3' Gamma32 is singular")
        G32d = np.linalg.solve(N, G32.T)
        P = np.eye(Ez3.shape[0]) - Ez3 @ G32 @ G32d
    else:
        O2d = np.zeros((0, s - c_y))
        G32d = np.zeros((0, spec.m_r - spec.c_r))
        P = np.eye(spec.m_r - spec.c_r)
    annihilator = np.eye(s - c_y) - O2 @ O2d
    if c_y and s - c_y:
        TyL1 = (canon.T_y @ spec.Lambda)[:c_y]
        E_eps_y2 = L_eps @ G0 @ L_y2.T
        Xi = -TyL1 @ E_eps_y2 @ np.linalg.inv(Ey2)
    else:
        Xi = np.zeros((c_y, s - c_y))
    return Projectors(Xi, P, O2d, G32d, Ey2, Ez3, annihilator)


def stationary_cov(spec: DgpSpec, canon: CanonicalForm, lr: TrueLongRun | None = None) -> np.ndarray:
    """``E z~3^Pi z~3^Pi'``: covariance of the stationary ``z^r`` directions net of ``z~2^u``."""
    lr = lr or true_long_run(spec)
    L_z3, _, _, _, project = _population_pieces(spec, canon, lr)
    Pz3 = project(L_z3)
    return Pz3 @ lr.gamma0 @ Pz3.T


# -------------------------------------------------------- Brownian paths


def brownian_paths(dim: int, N: int, seed, cov) -> np.ndarray:
    """``dim x (N+1)`` Brownian path on ``[0,1]`` with ``W(0) = 0`` and ``Var W(1) = cov``."""
    if N < 10:
        raise ValueError("N must be at least 10")
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    if cov.shape != (dim, dim):
        raise ValueError("cov must be dim x dim")
    linalg.sym_sqrt(cov)  # SPD guard
    rng = np.random.default_rng(seed)
    L = np.linalg.cholesky((cov + cov.T) / 2)
    inc = L @ rng.standard_normal((N, dim)).T / np.sqrt(N)
    W = np.zeros((dim, N + 1))
    np.cumsum(inc, axis=1, out=W[:, 1:])
    return W


def path_gram(W: np.ndarray, V: np.ndarray | None = None) -> np.ndarray:
    """``int W V'`` as ``N^-1 sum_{i<N} W_i V_i'``."""
    V = W if V is None else V
    N = W.shape[1] - 1
    return W[:, :-1] @ V[:, :-1].T / N


def functional_f(E: np.ndarray, W: np.ndarray) -> np.ndarray:
    """``f(E, W) = int dE W' (int W W')^{-1}`` with left-point sums."""
    E, W = np.atleast_2d(E), np.atleast_2d(W)
    if E.shape[1] != W.shape[1]:
        raise ValueError("paths must share the grid")
    if W.shape[0] == 0:
        return np.zeros((E.shape[0], 0))
    G = path_gram(W)
    if not linalg.is_well_conditioned(G):
        raise SingularGram("int W W' is singular")
    S = np.diff(E, axis=1) @ W[:, :-1].T
    return np.linalg.solve(G, S.T).T


def path_project(Wz: np.ndarray, Wu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``W_z - int W_z W_u' (int W_u W_u')^{-1} W_u`` and the coefficient ``N_r``."""
    if Wu.shape[0] == 0 or Wz.shape[0] == 0:
        return Wz, np.zeros((Wz.shape[0], Wu.shape[0]))
    Guu = path_gram(Wu)
    if not linalg.is_well_conditioned(Guu):
        raise SingularGram("int W_u W_u' is singular")
    Nr = np.linalg.solve(Guu, path_gram(Wu, Wz)).T
    return Wz - Nr @ Wu, Nr


def demean_path(W: np.ndarray) -> np.ndarray:
    return W - W[:, :-1].mean(axis=1, keepdims=True)


def detrend_path(W: np.ndarray) -> np.ndarray:
    """``W - (int W)(4 - 6w) - (int s W)(12 w - 6)``."""
    N = W.shape[1] - 1
    w = np.arange(N + 1) / N
    iW = W[:, :-1].mean(axis=1, keepdims=True)
    isW = (W[:, :-1] * w[:-1]).mean(axis=1, keepdims=True)
    return W - iW * (4 - 6 * w) - isW * (12 * w - 6)


def _preprocess_path(W: np.ndarray, mode: str) -> np.ndarray:
    if mode == "none" or W.shape[0] == 0:
        return W
    if mode == "demean":
        return demean_path(W)
    if mode == "detrend":
        return detrend_path(W)
    raise ValueError(f"unknown preprocessing {mode!r}")


# ---------------------------------------------------------------- sampler


@dataclass
class LimitDraws:
    """Stacked draws (leading axis = draw) plus the projector constants.

    The RRR limit of the nonstationary ``z^r`` columns is ``M_r + correction``
    and the FM-RRR one ``M_r_plus + correction_plus``.
    """

    M_r: np.ndarray
    M_u: np.ndarray
    N_r: np.ndarray
    Z_r: np.ndarray
    Z_u: np.ndarray
    M_r_plus: np.ndarray
    M_u_plus: np.ndarray
    correction: np.ndarray
    correction_plus: np.ndarray
    Xi: np.ndarray
    P: np.ndarray
    O2_dagger: np.ndarray
    Gamma32_dagger: np.ndarray
    resamples: int = 0

    MATRIX_FIELDS = ("M_r", "M_u", "N_r", "Z_r", "Z_u", "M_r_plus", "M_u_plus",
                     "correction", "correction_plus")

    @property
    def R(self) -> int:
        return self.M_r.shape[0]

    def write_csv(self, path, names=None) -> None:
        """One row per draw; columns ``<name>_<i>_<j>`` (1-based)."""
        names = names or self.MATRIX_FIELDS
        header, blocks = [], []
        for nm in names:
            A = getattr(self, nm)
            _, r, c = A.shape
            header += [f"{nm}_{i + 1}_{j + 1}" for i in range(r) for j in range(c)]
            blocks.append(A.reshape(A.shape[0], -1))
        data = np.hstack(blocks) if blocks else np.zeros((0, 0))
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in data:
                w.writerow([repr(float(x)) for x in row])


def read_draws_csv(path) -> dict[str, np.ndarray]:
    """Inverse of :meth:`LimitDraws.write_csv`: ``{name: (R, rows, cols)}``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], np.array(rows[1:], dtype=float).reshape(len(rows) - 1, len(rows[0]))
    out: dict[str, list] = {}
    for col, h in enumerate(header):
        nm, i, j = h.rsplit("_", 2)
        out.setdefault(nm, []).append((int(i), int(j), col))
    result = {}
    for nm, entries in out.items():
        r = max(e[0] for e in entries)
        c = max(e[1] for e in entries)
        A = np.zeros((data.shape[0], r, c))
        for i, j, col in entries:
            A[:, i - 1, j - 1] = data[:, col]
        result[nm] = A
    return result


def _gains(spec: DgpSpec, canon: CanonicalForm, lr: TrueLongRun):
    """Long-run gains of the nonstationary canonical regressors."""
    c_r, m_r, c_u = spec.c_r, spec.m_r, spec.c_u
    Cinv = (canon.T_zr @ spec.H_r)[:c_r, :c_r]
    cz = Cinv @ lr.c1[:c_r]
    cu = lr.c1[m_r: m_r + c_u]
    return cz, cu, Cinv


def fm_correction_factor(spec: DgpSpec, canon: CanonicalForm, lr: TrueLongRun | None = None) -> np.ndarray:
    """``Omega_{u,dz}^{:,n} (Omega_{dz,dz}^{n,n})^{-1}`` for the canonical integrated regressors."""
    lr = lr or true_long_run(spec)
    k = spec.k
    _, _, Cinv = _gains(spec, canon, lr)
    ints = spec.integrated_rows
    if ints.size == 0:
        return np.zeros((spec.s, 0))
    Gm = sla.block_diag(Cinv, np.eye(spec.c_u))
    O = lr.omega
    O_en = O[:k, k + ints] @ Gm.T
    O_nn = Gm @ O[np.ix_(k + ints, k + ints)] @ Gm.T
    if not linalg.is_well_conditioned(O_nn):
        raise SingularMoment("long-run covariance of the integrated increments is singular")
    return spec.Lambda @ np.linalg.solve(O_nn.T, O_en.T).T


def fm_degenerate_rows(spec: DgpSpec, canon: CanonicalForm, tol: float = 1e-10) -> np.ndarray:
    """Boolean mask of canonical output rows where the FM limit ``T_y B`` vanishes identically."""
    lr = true_long_run(spec)
    cz, cu, _ = _gains(spec, canon, lr)
    load = canon.T_y @ (spec.Lambda - fm_correction_factor(spec, canon, lr) @ np.vstack([cz, cu]))
    scale = max(1.0, np.abs(canon.T_y @ spec.Lambda).max())
    return np.linalg.norm(load, axis=1) < tol * scale


def _rrr_correction(E, WzP, c_y, Xi, annihilator, sign):
    """``-[sign*Xi; I] (I - O2 O2^dagger) M_{r,2} [-Y21 Y11^{-1}, I]``."""
    s = E.shape[0]
    c_r = WzP.shape[0]
    if c_r - c_y == 0 or s - c_y == 0:
        return np.zeros((s, c_r))
    W1, W2 = WzP[:c_y], WzP[c_y:]
    if c_y:
        Y11 = path_gram(W1)
        if not linalg.is_well_conditioned(Y11):
            raise SingularGram("Y11 is singular")
        coef = np.linalg.solve(Y11, path_gram(W1, W2)).T  # Y21 Y11^{-1}
        V = W2 - coef @ W1
    else:
        coef = np.zeros((c_r, 0))
        V = W2
    M2 = functional_f(E[c_y:], V)
    right = np.hstack([-coef, np.eye(c_r - c_y)])
    left = np.vstack([sign * Xi, np.eye(s - c_y)])
    return -left @ annihilator @ M2 @ right


def _z_covariance(spec, canon, lr, method, seed, T_proxy, reps):
    """Covariance of ``[vec Z_r; vec Z_u]`` (column-major vec)."""
    TyL = canon.T_y @ spec.Lambda
    Se = TyL @ spec.Sigma @ TyL.T
    L_z3, L_zu, _, _, project = _population_pieces(spec, canon, lr)
    d3, du = L_z3.shape[0], L_zu.shape[0]
    if method == "analytic":
        Pz3 = project(L_z3)
        blocks = []
        for L in (Pz3, L_zu):
            if L.shape[0] == 0:
                continue
            E = L @ lr.gamma0 @ L.T
            if not linalg.is_well_conditioned(E):
                raise SingularMoment("stationary regressor covariance is singular")
            blocks.append(np.kron(np.linalg.inv(E), Se))
        return sla.block_diag(*blocks) if blocks else np.zeros((0, 0))
    if method != "proxy":
        raise ValueError(f"unknown z covariance method {method!r}")
    return z_covariance_proxy(spec, canon, seed, T_proxy, reps)


def z_covariance_proxy(spec: DgpSpec, canon: CanonicalForm, seed=0, T_proxy: int = T_PROXY,
                       reps: int = PROXY_REPS) -> np.ndarray:
    """Covariance of ``[vec Z_r; vec Z_u]`` from the finite-``T`` defining expressions.

    ``Z_r = sqrt(T) <T_y Lambda eps, z3^pi><z3^pi, z3^pi>^{-1}`` and
    ``Z_u = sqrt(T) <T_y Lambda eps, z2u><z2u, z2u>^{-1}`` averaged over ``reps``
    simulated samples of length ``T_proxy``.
    """
    from .dgp import simulate
    from .estimators import project_out
    from .covest import sample_moment

    TyL = canon.T_y @ spec.Lambda
    c_r, c_u = spec.c_r, spec.c_u
    vecs = []
    for rep in range(reps):
        smp = simulate(spec, T_proxy, np.random.SeedSequence([int(seed), 0x5A, rep]), validate=False)
        e = TyL @ smp.eps
        z3 = (canon.T_zr @ smp.z_r)[c_r:]
        z2u = (canon.T_zu @ smp.z_u)[c_u:] if spec.m_u else np.zeros((0, T_proxy))
        z3p = project_out(z3, z2u)
        parts = []
        for z in (z3p, z2u):
            if z.shape[0]:
                Z = np.sqrt(T_proxy) * np.linalg.solve(sample_moment(z, z), sample_moment(z, e)).T
                parts.append(Z.ravel(order="F"))
        vecs.append(np.concatenate(parts) if parts else np.zeros(0))
    V = np.array(vecs)
    if V.shape[1] == 0:
        return np.zeros((0, 0))
    return V.T @ V / reps  # mean zero by construction


def limit_sampler(spec: DgpSpec, canon: CanonicalForm, N: int, R: int, seed, *,
                  preprocessing: str = "none", xi_sign: str = "shared",
                  z_cov: str = "analytic", T_proxy: int = T_PROXY,
                  proxy_reps: int = PROXY_REPS) -> LimitDraws:
    """Draw ``R`` realisations of every limit matrix from the same Brownian paths.

    Draw ``r`` uses the seed ``SeedSequence([seed, r])`` so results do not
    depend on evaluation order.  ``xi_sign`` chooses the sign of ``Xi`` in
    the FM-RRR correction: ``"shared"`` uses the same ``[-Xi; I]`` block as
    the RRR correction, ``"flipped"`` the opposite sign ``[Xi; I]``.
    """
    if xi_sign not in ("shared", "flipped"):
        raise ValueError("xi_sign must be 'shared' or 'flipped'")
    lr = true_long_run(spec)
    if np.any(spec.Lambda):
        proj = correction_projectors(spec, canon, lr)
    else:
        # no noise: every limit matrix is zero and the projectors are never used
        d3, r2 = spec.m_r - spec.c_r, canon.O2.shape[1]
        sy = spec.s - canon.c_y
        proj = Projectors(np.zeros((canon.c_y, sy)), np.eye(d3), np.zeros((r2, sy)),
                          np.zeros((r2, d3)), np.zeros((sy, sy)), np.zeros((d3, d3)), np.eye(sy))
    cz, cu, _ = _gains(spec, canon, lr)
    corr_fac = fm_correction_factor(spec, canon, lr)
    gain_n = np.vstack([cz, cu])
    TyL = canon.T_y @ spec.Lambda
    s, c_r, c_u, c_y = spec.s, spec.c_r, spec.c_u, canon.c_y
    k = spec.k
    sign_fm = -1.0 if xi_sign == "shared" else 1.0

    def one(r: int):
        attempts = 0
        while True:
            try:
                W = brownian_paths(k, N, np.random.SeedSequence([int(seed), r, attempts]), spec.Sigma)
                Wz = _preprocess_path(cz @ W, preprocessing)
                Wu = _preprocess_path(cu @ W, preprocessing)
                WzP, Nr = path_project(Wz, Wu)
                E = TyL @ W
                B = canon.T_y @ (spec.Lambda @ W - corr_fac @ (gain_n @ W))
                out = (
                    functional_f(E, WzP), functional_f(E, Wu), Nr,
                    functional_f(B, WzP), functional_f(B, Wu),
                    _rrr_correction(E, WzP, c_y, proj.Xi, proj.annihilator, -1.0),
                    _rrr_correction(B, WzP, c_y, proj.Xi, proj.annihilator, sign_fm),
                )
                return out, attempts
            except SingularGram:
                attempts += 1
                if attempts > MAX_RESAMPLE:
                    raise

    results = [one(r) for r in range(R)]
    resamples = sum(a for _, a in results)
    stack = [np.array([res[i] for res, _ in results]).reshape(R, *results[0][0][i].shape) for i in range(7)]
    M_r, M_u, N_r, M_rp, M_up, corr, corr_p = stack

    Vz = _z_covariance(spec, canon, lr, z_cov, seed, T_proxy, proxy_reps)
    d3, du = spec.m_r - c_r, spec.m_u - c_u
    if Vz.size:
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), 0xC0, R]))
        lam, Q = np.linalg.eigh((Vz + Vz.T) / 2)
        root = Q * np.sqrt(np.clip(lam, 0, None))
        draws = rng.standard_normal((R, Vz.shape[0])) @ root.T
    else:
        draws = np.zeros((R, 0))
    Z_r = draws[:, : s * d3].reshape(R, d3, s).transpose(0, 2, 1)
    Z_u = draws[:, s * d3: s * (d3 + du)].reshape(R, du, s).transpose(0, 2, 1)
    return LimitDraws(M_r, M_u, N_r, Z_r, Z_u, M_rp, M_up, corr, corr_p,
                      proj.Xi, proj.P, proj.O2_dagger, proj.Gamma32_dagger, resamples)


def limit_sampler_ols(spec: DgpSpec, canon: CanonicalForm, N: int, R: int, seed, **kw) -> LimitDraws:
    """Limit draws for the OLS and RRR displays (``M_r``, ``M_u``, ``N_r``, ``Z``, corrections)."""
    return limit_sampler(spec, canon, N, R, seed, **kw)


def limit_sampler_fm(spec: DgpSpec, canon: CanonicalForm, N: int, R: int, seed, **kw) -> LimitDraws:
    """Limit draws for the fully modified estimators; see ``M_r_plus`` and ``M_u_plus``.

    Same Brownian paths as :func:`limit_sampler_ols` for the same seed.
    """
    return limit_sampler(spec, canon, N, R, seed, **kw)
