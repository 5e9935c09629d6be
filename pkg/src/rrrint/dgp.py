"""Data generating processes with mixed stationary / integrated regressors.

The regression is ``y_t = b_r z_t^r + b_u z_t^u + Lambda eps_t``.  Rotated
regressors ``H_r' z^r`` and ``H_u' z^u`` have their leading ``c_r`` (``c_u``)
coordinates integrated; the stacked innovations / stationary parts
``nu_t = [v_t; w_t]`` follow the filter

    nu_t = sum_i A_i nu_{t-i} + sum_{j>=1} C_j eps_{t-j},

started from zero (``eps_t = 0`` and ``nu_t = 0`` for ``t <= 0``).  Setting no
``A_i`` gives the finite moving average case.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import linalg
from .errors import (
    InfeasibleDimensions,
    InvalidSpec,
    NotI1,
    RankDeficiencyAmbiguous,
    TooShort,
    UnstableBlock,
)

MAX_MA_ORDER = 50
ORTHO_TOL = 1e-10
CY_TOL = 1e-10
CY_AMBIGUOUS = 1e-8


def _mat(x, rows=None, cols=None) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim == 1:
        if rows is not None and cols == a.size:
            a = a.reshape(rows, cols)
        else:
            a = a.reshape(-1, 1) if cols == 1 else a.reshape(1, -1)
    if rows is not None and cols is not None and a.size == 0:
        a = a.reshape(rows, cols)
    return a


@dataclass
class DgpSpec:
    """Full description of a data generating process.

    ``ma_coeffs`` are the ``C_1..C_q`` blocks (``(m_r+m_u) x k``); ``ar_coeffs``
    optional autoregressive blocks on ``nu``.  ``burn_in`` runs the filter for
    that many periods before ``t = 1``; integrated coordinates still start at
    zero.
    """

    Lambda: np.ndarray
    Sigma: np.ndarray
    b_r: np.ndarray
    b_u: np.ndarray
    H_r: np.ndarray
    H_u: np.ndarray
    ma_coeffs: list
    c_r: int
    c_u: int
    n: int
    ar_coeffs: list = field(default_factory=list)
    noise: str = "gaussian"
    burn_in: int = 0
    # lagged-difference regressors make c(1) rank deficient; only the rows of
    # the integrated directions are then required to have full row rank
    allow_singular_c1: bool = False
    name: str = ""

    def __post_init__(self):
        self.Lambda = _mat(self.Lambda)
        self.Sigma = _mat(self.Sigma)
        s = self.Lambda.shape[0]
        self.b_r = _mat(self.b_r)
        m_r = self.b_r.shape[1]
        self.H_r = _mat(self.H_r, m_r, m_r) if m_r else np.zeros((0, 0))
        self.b_u = _mat(self.b_u, s, 0) if np.size(self.b_u) == 0 else _mat(self.b_u)
        m_u = self.b_u.shape[1]
        self.H_u = _mat(self.H_u, m_u, m_u) if m_u else np.zeros((0, 0))
        k = self.Lambda.shape[1]
        self.ma_coeffs = [_mat(C, m_r + m_u, k) for C in self.ma_coeffs]
        self.ar_coeffs = [_mat(A, m_r + m_u, m_r + m_u) for A in self.ar_coeffs]
        self.c_r, self.c_u, self.n = int(self.c_r), int(self.c_u), int(self.n)
        self.burn_in = int(self.burn_in)

    # dimensions
    @property
    def s(self) -> int:
        return self.Lambda.shape[0]

    @property
    def k(self) -> int:
        return self.Lambda.shape[1]

    @property
    def m_r(self) -> int:
        return self.b_r.shape[1]

    @property
    def m_u(self) -> int:
        return self.b_u.shape[1]

    @property
    def q(self) -> int:
        return len(self.ma_coeffs)

    @property
    def p(self) -> int:
        return len(self.ar_coeffs)

    @property
    def m(self) -> int:
        return self.m_r + self.m_u

    @property
    def integrated_rows(self) -> np.ndarray:
        """Indices of ``nu`` rows that are cumulated into integrated regressors."""
        return np.r_[np.arange(self.c_r), self.m_r + np.arange(self.c_u)].astype(int)

    @property
    def stationary_rows(self) -> np.ndarray:
        return np.r_[np.arange(self.c_r, self.m_r), self.m_r + np.arange(self.c_u, self.m_u)].astype(int)

    def c1(self) -> np.ndarray:
        """Long-run gain ``c(1) = (I - sum A_i)^{-1} sum C_j``."""
        Csum = sum(self.ma_coeffs, np.zeros((self.m, self.k)))
        Asum = sum(self.ar_coeffs, np.zeros((self.m, self.m)))
        return np.linalg.solve(np.eye(self.m) - Asum, Csum)

    def companion(self) -> np.ndarray:
        m, p = self.m, self.p
        F = np.zeros((m * p, m * p))
        F[:m] = np.hstack(self.ar_coeffs)
        F[m:, :-m] = np.eye(m * (p - 1))
        return F

    def validate(self, allow_noiseless: bool = False) -> "DgpSpec":
        """Check every structural invariant; raise :class:`InvalidSpec` on failure.

        ``allow_noiseless`` admits Lambda = 0, the degenerate case the Monte Carlo
        harness reports as flagged rather than rejecting.
        """
        s, k, m_r, m_u = self.s, self.k, self.m_r, self.m_u
        if self.b_r.shape[0] != s or self.b_u.shape[0] != s:
            raise InvalidSpec("b_r and b_u must have s rows")
        if m_r < 1:
            raise InvalidSpec("m_r must be positive")
        if not 0 <= self.c_r <= m_r or not 0 <= self.c_u <= m_u:
            raise InvalidSpec("c_r / c_u out of range")
        if self.Sigma.shape != (k, k):
            raise InvalidSpec("Sigma must be k x k")
        if not (1 <= self.q <= MAX_MA_ORDER):
            raise InvalidSpec(f"MA order must be in [1, {MAX_MA_ORDER}]")
        if self.noise not in ("gaussian", "uniform"):
            raise InvalidSpec(f"unknown noise {self.noise!r}")
        if self.burn_in < 0:
            raise InvalidSpec("burn_in must be nonnegative")
        for name, H, d in (("H_r", self.H_r, m_r), ("H_u", self.H_u, m_u)):
            if H.shape != (d, d) or not np.allclose(H.T @ H, np.eye(d), atol=ORTHO_TOL, rtol=0):
                raise InvalidSpec(f"{name} is not orthogonal")
        arrays = [self.Lambda, self.Sigma, self.b_r, self.b_u, *self.ma_coeffs, *self.ar_coeffs]
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise InvalidSpec("non-finite entries")
        try:
            linalg.sym_sqrt(self.Sigma)
        except Exception as exc:
            raise InvalidSpec(f"Sigma not SPD: {exc}") from exc
        if np.linalg.matrix_rank(self.Lambda) < s and not (allow_noiseless and not np.any(self.Lambda)):
            raise InvalidSpec("Lambda must have full row rank")
        sv = np.linalg.svd(self.b_r, compute_uv=False)
        if not 1 <= self.n <= min(s, m_r):
            raise InvalidSpec("n must be in [1, min(s, m_r)]")
        tol = 1e-10 * max(sv[0], 1e-300)
        if sv[self.n - 1] <= tol or (self.n < sv.size and sv[self.n] > tol):
            raise InvalidSpec(f"rank(b_r) differs from n={self.n}")
        if self.p:
            rho = np.max(np.abs(np.linalg.eigvals(self.companion())))
            if rho >= 1:
                raise InvalidSpec(f"autoregressive filter unstable (spectral radius {rho:.4f})")
        c1 = self.c1()
        rows = c1 if not self.allow_singular_c1 else c1[self.integrated_rows]
        if rows.shape[0] and np.linalg.matrix_rank(rows, tol=1e-10 * max(1.0, np.abs(c1).max())) < rows.shape[0]:
            raise InvalidSpec("c(1) does not have full row rank")
        st = self.stationary_rows
        if st.size:
            from .asymptotics import true_long_run

            G0 = true_long_run(self).gamma0
            off = self.k
            cov = G0[np.ix_(off + st, off + st)]
            if np.linalg.eigvalsh(cov)[0] <= 1e-8:
                raise InvalidSpec("covariance of stationary regressor directions is singular")
        return self

    def to_dict(self) -> dict:
        out = {}
        for key in ("Lambda", "Sigma", "b_r", "b_u", "H_r", "H_u"):
            out[key] = getattr(self, key).tolist()
        out["ma_coeffs"] = [C.tolist() for C in self.ma_coeffs]
        out["ar_coeffs"] = [A.tolist() for A in self.ar_coeffs]
        for key in ("c_r", "c_u", "n", "noise", "burn_in", "allow_singular_c1", "name"):
            out[key] = getattr(self, key)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "DgpSpec":
        return cls(**d)


@dataclass(frozen=True)
class Sample:
    y: np.ndarray
    z_r: np.ndarray
    z_u: np.ndarray
    eps: np.ndarray

    def __iter__(self):
        return iter((self.y, self.z_r, self.z_u, self.eps))


def make_rng(seed) -> np.random.Generator:
    """Generator from an int, a sequence of ints (e.g. ``[seed, rep]``) or a SeedSequence."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _draw_noise(spec: DgpSpec, rng: np.random.Generator, length: int) -> np.ndarray:
    # time-major draws keep outputs prefix-consistent in T
    if spec.noise == "gaussian":
        e = rng.standard_normal((length, spec.k))
    else:
        e = rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=(length, spec.k))
    L = np.linalg.cholesky(spec.Sigma)
    return L @ e.T


def _filter(spec: DgpSpec, eps: np.ndarray) -> np.ndarray:
    m, L = spec.m, eps.shape[1]
    nu = np.zeros((m, L))
    for j, C in enumerate(spec.ma_coeffs, start=1):
        if j < L:
            nu[:, j:] += C @ eps[:, : L - j]
    if spec.ar_coeffs:
        A = spec.ar_coeffs
        for t in range(1, L):
            acc = nu[:, t]
            for i in range(1, min(len(A), t) + 1):
                acc = acc + A[i - 1] @ nu[:, t - i]
            nu[:, t] = acc
    return nu


def simulate(spec: DgpSpec, T: int, seed, validate: bool = True) -> Sample:
    """Draw ``(y, z_r, z_u, eps)`` for ``t = 1..T``; each is a ``(dim, T)`` array."""
    if validate:
        spec.validate()
    if T <= spec.q:
        raise InvalidSpec(f"T={T} must exceed the MA order {spec.q}")
    rng = make_rng(seed)
    B = spec.burn_in
    eps_all = _draw_noise(spec, rng, B + T)
    nu_all = _filter(spec, eps_all)
    eps, nu = eps_all[:, B:], nu_all[:, B:]
    # integrated coordinates start from zero at t = 0 even after a burn-in
    m_r, c_r, c_u = spec.m_r, spec.c_r, spec.c_u
    v, w = nu[:m_r], nu[m_r:]
    zr_rot = np.vstack([np.cumsum(v[:c_r], axis=1), v[c_r:]])
    zu_rot = np.vstack([np.cumsum(w[:c_u], axis=1), w[c_u:]])
    z_r = spec.H_r @ zr_rot
    z_u = spec.H_u @ zu_rot if spec.m_u else np.zeros((0, T))
    y = spec.b_r @ z_r + spec.b_u @ z_u + spec.Lambda @ eps
    return Sample(y, z_r, z_u, eps)


def simulate_nu(spec: DgpSpec, T: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Innovations ``nu`` and noise ``eps`` exactly as used by :func:`simulate`."""
    rng = make_rng(seed)
    eps_all = _draw_noise(spec, rng, spec.burn_in + T)
    nu_all = _filter(spec, eps_all)
    return nu_all[:, spec.burn_in:], eps_all[:, spec.burn_in:]


@dataclass(frozen=True)
class CanonicalForm:
    """Coordinates separating integrated from stationary directions.

    ``T_y b_r T_zr^{-1} = [[I_cy, 0, 0], [0, 0, O2 Gamma32']]`` and
    ``T_zu = H_u'``.
    """

    T_y: np.ndarray
    T_zr: np.ndarray
    T_zu: np.ndarray
    c_y: int
    b_tilde_r: np.ndarray
    O2: np.ndarray
    Gamma32: np.ndarray
    selector: np.ndarray

    def pattern(self, c_r: int) -> np.ndarray:
        s, m_r = self.b_tilde_r.shape
        P = np.zeros((s, m_r))
        P[: self.c_y, : self.c_y] = np.eye(self.c_y)
        P[self.c_y:, c_r:] = self.O2 @ self.Gamma32.T
        return P

    @property
    def T_zr_inv(self) -> np.ndarray:
        return np.linalg.inv(self.T_zr)


def canonical_form(spec: DgpSpec) -> CanonicalForm:
    s, m_r, c_r = spec.s, spec.m_r, spec.c_r
    H_par, H_perp = spec.H_r[:, :c_r], spec.H_r[:, c_r:]
    c_y = 0
    T_y = np.eye(s)
    C = np.eye(c_r)
    if c_r:
        M = spec.b_r @ H_par
        U, sv, Vt = np.linalg.svd(M)
        # thresholds relative to b_r itself: b_r H_par may be pure round-off
        smax = np.linalg.norm(spec.b_r, 2)
        if sv.size and sv[0] > CY_TOL * smax:
            c_y = int(np.sum(sv > CY_TOL * smax))
            nxt = sv[c_y] if c_y < sv.size else 0.0
            if sv[c_y - 1] - nxt < CY_AMBIGUOUS * smax or np.any((sv > CY_TOL * smax) & (sv < CY_AMBIGUOUS * smax)):
                raise RankDeficiencyAmbiguous("c_y is numerically ambiguous")
            if c_y:
                T_y = U.T
                scale = np.ones(c_r)
                scale[:c_y] = 1.0 / sv[:c_y]
                C = Vt.T * scale
    T_bar = sla.block_diag(np.linalg.inv(C), np.eye(m_r - c_r)) @ spec.H_r.T
    bt = T_y @ spec.b_r @ np.linalg.inv(T_bar)
    b13 = bt[:c_y, c_r:]
    upper = np.eye(m_r)
    upper[:c_y, c_r:] = b13
    T_zr = upper @ T_bar
    b_tilde = T_y @ spec.b_r @ np.linalg.inv(T_zr)
    b23 = b_tilde[c_y:, c_r:]
    r2 = spec.n - c_y
    if r2 > 0:
        from .estimators import normalize_factors

        tsvd = linalg.truncated_svd(b23, r2)
        O2, G32, Sp = normalize_factors(tsvd.U @ tsvd.S, tsvd.V)
    else:
        O2 = np.zeros((s - c_y, 0))
        G32 = np.zeros((m_r - c_r, 0))
        Sp = np.zeros((m_r - c_r, 0))
    T_zu = spec.H_u.T.copy() if spec.m_u else np.zeros((0, 0))
    canon = CanonicalForm(T_y, T_zr, T_zu, c_y, b_tilde, O2, G32, Sp)
    target = canon.pattern(c_r)
    scale = max(1.0, np.abs(spec.b_r).max())
    if np.abs(b_tilde - target).max() > 1e-10 * scale * max(1.0, np.linalg.cond(T_zr)):
        raise InvalidSpec("canonical transformation failed to reach the block pattern")
    return canon


# ---------------------------------------------------------------- builders


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 0:
        return np.zeros((0, 0))
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return Q * np.sign(np.diag(R))


def make_anderson_var1(Upsilon22, Sigma_W, c_y_block: int) -> DgpSpec:
    """VAR(1) ``dX_t = diag(0, Upsilon22) X_{t-1} + W_t`` with ``X_0 = 0``.

    ``y_t = dX_t`` and ``z_t^r = X_{t-1}``; the first ``c_y_block`` coordinates
    of ``X`` are random walks, the rest a stable AR(1).
    """
    U22 = _mat(Upsilon22)
    S = _mat(Sigma_W)
    c = int(c_y_block)
    d2 = U22.shape[0]
    s = c + d2
    if U22.shape != (d2, d2) or S.shape != (s, s):
        raise InvalidSpec("dimension mismatch between Upsilon22, Sigma_W and c_y_block")
    rho = np.max(np.abs(np.linalg.eigvals(np.eye(d2) + U22))) if d2 else 0.0
    if rho >= 1:
        raise UnstableBlock(f"spectral radius of I + Upsilon22 is {rho:.4f}")
    Ups = np.zeros((s, s))
    Ups[c:, c:] = U22
    A = np.zeros((s, s))
    A[c:, c:] = np.eye(d2) + U22
    return DgpSpec(
        Lambda=np.eye(s), Sigma=S, b_r=Ups, b_u=np.zeros((s, 0)),
        H_r=np.eye(s), H_u=np.zeros((0, 0)), ma_coeffs=[np.eye(s)], ar_coeffs=[A],
        c_r=c, c_u=0, n=d2, name="anderson-var1",
    )


def _orth_complement(X: np.ndarray) -> np.ndarray:
    d = X.shape[0]
    if X.shape[1] == 0:
        return np.eye(d)
    return sla.null_space(X.T)


def make_johansen_vecm(alpha, beta, lag_coeffs, Sigma) -> DgpSpec:
    """Cointegrated VAR ``dX_t = alpha beta' X_{t-1} + sum_i G_i dX_{t-i} + eps_t``.

    Regression layout: ``y = dX_t``, ``z^r = X_{t-1}``,
    ``z^u = [dX_{t-1}; ...; dX_{t-p+1}]`` with ``p = len(lag_coeffs) + 1``.
    """
    alpha, beta = _mat(alpha), _mat(beta)
    Sigma = _mat(Sigma)
    s = alpha.shape[0]
    if alpha.shape[1] != beta.shape[1] or beta.shape[0] != s:
        raise InvalidSpec("alpha and beta must both be s x r")
    G = [_mat(g) for g in lag_coeffs]
    r = alpha.shape[1]
    if r == 0 or np.linalg.matrix_rank(alpha) < r or np.linalg.matrix_rank(beta) < r:
        raise NotI1("alpha and beta must have full column rank r >= 1")
    Pi = alpha @ beta.T
    a_perp, b_perp = _orth_complement(alpha), _orth_complement(beta)
    Gsum = sum(G, np.zeros((s, s)))
    if s > r:
        Gam = a_perp.T @ (np.eye(s) - Gsum) @ b_perp
        if np.linalg.svd(Gam, compute_uv=False)[-1] < 1e-8:
            raise NotI1("alpha_perp' Gamma beta_perp is singular")
    # levels companion: X_t = (I + Pi + G1) X_{t-1} + sum (G_i - G_{i-1}) X_{t-i} - G_{p-1} X_{t-p}
    p = len(G) + 1
    Ak = [np.eye(s) + Pi + (G[0] if G else 0)]
    for i in range(1, p):
        nxt = G[i] if i < len(G) else np.zeros((s, s))
        Ak.append(nxt - G[i - 1])
    Fx = np.zeros((s * p, s * p))
    Fx[:s] = np.hstack(Ak)
    Fx[s:, :-s] = np.eye(s * (p - 1))
    eig = np.linalg.eigvals(Fx)
    unit = np.abs(eig - 1.0) < 1e-8
    if unit.sum() != s - r or np.max(np.abs(eig[~unit]), initial=0.0) >= 1 - 1e-10:
        raise NotI1("VAR is not I(1) with cointegrating rank r")
    c_r = s - r
    H_par = sla.orth(b_perp) if c_r else np.zeros((s, 0))
    H_perp = sla.orth(beta)
    H_r = np.hstack([H_par, H_perp])
    m_u = s * (p - 1)
    m = s + m_u
    # nu_t = [H_par' dX_{t-1}; H_perp' X_{t-1}; dX_{t-1}; ...; dX_{t-p+1}] is a VAR(1):
    # dX_{t-1} = alpha beta' H_perp (H_perp' X_{t-2}) + sum_i G_i dX_{t-1-i} + eps_{t-1}
    dx_row = np.zeros((s, m))
    dx_row[:, c_r:s] = Pi @ H_perp
    for i, Gi in enumerate(G, start=1):
        dx_row[:, s + (i - 1) * s: s + i * s] = Gi
    keep_level = np.zeros((r, m))
    keep_level[:, c_r:s] = np.eye(r)
    A = np.zeros((m, m))
    C1 = np.zeros((m, s))
    A[:c_r] = H_par.T @ dx_row
    A[c_r:s] = keep_level + H_perp.T @ dx_row
    C1[:c_r] = H_par.T
    C1[c_r:s] = H_perp.T
    if p > 1:
        A[s: 2 * s] = dx_row
        C1[s: 2 * s] = np.eye(s)
        A[2 * s:, s: m - s] = np.eye(m - 2 * s)
    return DgpSpec(
        Lambda=np.eye(s), Sigma=Sigma, b_r=Pi, b_u=np.hstack(G) if G else np.zeros((s, 0)),
        H_r=H_r, H_u=np.eye(m_u) if m_u else np.zeros((0, 0)), ma_coeffs=[C1], ar_coeffs=[A],
        c_r=c_r, c_u=0, n=r, allow_singular_c1=p > 1, name="johansen-vecm",
    )


def make_cy_positive_spec(s, m_r, m_u, c_r, c_u, n, c_y, seed) -> DgpSpec:
    """Random (seeded) spec where ``rank(b_r H_r_par) = c_y >= 1``.

    ``b_r H_r = O [G1; G2]'`` with ``G1 = A B'`` of rank ``c_y``.  Innovations
    follow an MA(2) whose first coefficient is a random orthogonal block, so
    the regressor increments correlate with lagged regression noise.
    """
    s, m_r, m_u, c_r, c_u, n, c_y = (int(x) for x in (s, m_r, m_u, c_r, c_u, n, c_y))
    if (
        c_y < 1 or c_y > min(n, c_r) or n > min(s, m_r) or n - c_y > m_r - c_r
        or c_r > m_r or not 0 <= c_u <= m_u
    ):
        raise InfeasibleDimensions(
            f"need 1 <= c_y <= min(n, c_r), n <= min(s, m_r), n - c_y <= m_r - c_r "
            f"(got s={s}, m_r={m_r}, c_r={c_r}, n={n}, c_y={c_y})"
        )
    rng = np.random.default_rng(seed)
    H_r = random_orthogonal(m_r, rng)
    H_u = random_orthogonal(m_u, rng)
    O = random_orthogonal(s, rng)[:, :n] * np.linspace(1.0, 0.6, n)
    G1 = rng.standard_normal((c_r, c_y)) @ rng.standard_normal((n, c_y)).T
    G2 = rng.standard_normal((m_r - c_r, n))
    G = np.vstack([G1, G2])
    G = G / np.linalg.norm(G, 2)
    b_r = O @ G.T @ H_r.T
    b_u = 0.5 * rng.standard_normal((s, m_u))
    m = m_r + m_u
    k = max(s, m)
    # correlated noise loading so the output-side moments are not spherical
    L = np.eye(s) + np.tril(0.5 * rng.standard_normal((s, s)), -1)
    Lambda = np.hstack([L, np.zeros((s, k - s))])
    C1 = random_orthogonal(k, rng)[:m]
    C2 = 0.3 * rng.standard_normal((m, k)) / np.sqrt(k)
    spec = DgpSpec(
        Lambda=Lambda, Sigma=np.eye(k), b_r=b_r, b_u=b_u, H_r=H_r, H_u=H_u,
        ma_coeffs=[C1, C2], c_r=c_r, c_u=c_u, n=n, name="cy-positive",
    )
    got = np.linalg.matrix_rank(b_r @ H_r[:, :c_r], tol=1e-10 * np.linalg.norm(b_r, 2))
    if got != c_y:
        raise InfeasibleDimensions(f"construction produced c_y={got}, wanted {c_y}")
    return spec.validate()


def detrend(a, mode: str = "demean") -> np.ndarray:
    """Remove the sample mean (``demean``) or mean and linear trend (``detrend``)."""
    a = np.asarray(a, dtype=float)
    if mode == "none":
        return a
    T = a.shape[-1]
    if mode == "demean":
        if T < 2:
            raise TooShort("demeaning needs T >= 2")
        return a - a.mean(axis=-1, keepdims=True)
    if mode == "detrend":
        if T < 3:
            raise TooShort("detrending needs T >= 3")
        d = np.vstack([np.ones(T), np.arange(1, T + 1, dtype=float)])
        coef = np.linalg.solve(d @ d.T, d @ a.T)
        return a - coef.T @ d
    raise ValueError(f"unknown preprocessing mode {mode!r}")


def write_series_csv(path, a) -> None:
    """One row per variable: label ``var_<i>`` followed by values for t = 1..T."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i, row in enumerate(a, start=1):
            writer.writerow([f"var_{i}", *(repr(float(x)) for x in row)])


def read_series_csv(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if rec:
                rows.append([float(x) for x in rec[1:]])
    return np.array(rows, dtype=float)
