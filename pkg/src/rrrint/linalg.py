"""Dense matrix utilities used by the estimators and the asymptotic machinery.

All routines are pure functions on ``numpy`` arrays.  Nonsingularity gates use a
condition-number threshold of ``COND_LIMIT``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    NotPositiveDefinite,
    NotSymmetric,
    RankDeficient,
    RankTooLarge,
    SingularBlock,
    SingularNormalMatrix,
    SingularSchurComplement,
)

COND_LIMIT = 1e12
SYM_TOL = 1e-10
GAP_TOL = 1e-12


class DegenerateSpectrumWarning(UserWarning):
    """The truncation point of an SVD falls inside a (near) tie of singular values."""


def _check_symmetric(M: np.ndarray, name: str = "M") -> None:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric(f"{name} must be square, got shape {M.shape}")
    scale = max(np.linalg.norm(M), 1.0)
    if np.max(np.abs(M - M.T), initial=0.0) > SYM_TOL * scale:
        raise NotSymmetric(f"{name} is not symmetric")


def _spd_eigh(M: np.ndarray, name: str = "M") -> tuple[np.ndarray, np.ndarray]:
    M = np.asarray(M, dtype=float)
    _check_symmetric(M, name)
    lam, Q = np.linalg.eigh((M + M.T) / 2)
    if lam.size and lam[0] <= 0:
        raise NotPositiveDefinite(f"{name} has smallest eigenvalue {lam[0]:.3e}")
    return lam, Q


def is_well_conditioned(M: np.ndarray, limit: float = COND_LIMIT) -> bool:
    if M.size == 0:
        return True
    c = np.linalg.cond(M)
    return bool(np.isfinite(c) and c < limit)


def sym_sqrt(M: np.ndarray) -> np.ndarray:
    """Symmetric square root of a symmetric positive definite matrix."""
    lam, Q = _spd_eigh(M)
    S = (Q * np.sqrt(lam)) @ Q.T
    return (S + S.T) / 2


def inv_sym_sqrt(M: np.ndarray) -> np.ndarray:
    """Symmetric inverse square root ``M^{-1/2}``."""
    lam, Q = _spd_eigh(M)
    S = (Q / np.sqrt(lam)) @ Q.T
    return (S + S.T) / 2


def gram_factor(M: np.ndarray, convention: str = "symmetric") -> np.ndarray:
    """Return a factor ``W`` of ``M^{-1}``.

    ``convention="symmetric"`` (default) gives the symmetric root of ``M^{-1}``,
    so ``W W' = W' W = M^{-1}``.

    ``convention="cholesky"`` gives the lower triangular ``W = L^{-1}`` with
    ``M = L L'``.  This factor satisfies ``W' W = M^{-1}``, which is the
    quantity a weighted least-squares criterion ``tr(W E E' W')`` depends on;
    it differs from the symmetric root by a left orthogonal rotation.
    """
    M = np.asarray(M, dtype=float)
    if convention == "symmetric":
        return inv_sym_sqrt(M)
    if convention == "cholesky":
        _spd_eigh(M)
        L = np.linalg.cholesky((M + M.T) / 2)
        return sla.solve_triangular(L, np.eye(M.shape[0]), lower=True)
    raise ValueError(f"unknown factor convention {convention!r}")


def _fix_signs(U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # largest-|.| entry of each column of U made positive (first one on ties)
    if U.size == 0:
        return U, V
    idx = np.argmax(np.abs(U), axis=0)
    sgn = np.sign(U[idx, np.arange(U.shape[1])])
    sgn[sgn == 0] = 1.0
    return U * sgn, V * sgn


@dataclass(frozen=True)
class TruncatedSvd:
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    R: np.ndarray
    singvals: np.ndarray
    degenerate: bool = False

    @property
    def approx(self) -> np.ndarray:
        return (self.U * np.diag(self.S)) @ self.V.T


def truncated_svd(A: np.ndarray, n: int) -> TruncatedSvd:
    """Best rank-``n`` approximation ``A = U_n S_n V_n' + R_n``.

    ``singvals`` holds the full spectrum of ``A``.  When the gap between the
    n-th and (n+1)-th singular values is below ``1e-12 * sigma_1`` the result
    is flagged ``degenerate`` and a :class:`DegenerateSpectrumWarning` is issued.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError("A must be two-dimensional")
    if not 1 <= n <= min(A.shape):
        raise RankTooLarge(f"rank {n} not in [1, {min(A.shape)}]")
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    if s[n - 1] <= 1e-14 * s[0] or s[n - 1] == 0:
        raise RankDeficient(f"singular value {n} of A is numerically zero")
    Un, Vn = _fix_signs(U[:, :n], Vt[:n].T)
    Sn = np.diag(s[:n])
    approx = (Un * s[:n]) @ Vn.T
    nxt = s[n] if n < s.size else 0.0
    degenerate = bool(n < s.size and s[n - 1] - nxt < GAP_TOL * s[0])
    if degenerate:
        warnings.warn(
            f"singular values {n} and {n + 1} nearly tie; truncation not unique",
            DegenerateSpectrumWarning,
            stacklevel=2,
        )
    return TruncatedSvd(Un, Sn, Vn, A - approx, s, degenerate)


def gen_eig_sym(Q: np.ndarray, M: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Leading ``n`` solutions of ``Q v = lambda M v`` for symmetric ``Q`` and SPD ``M``.

    Returns ``(V, lam)`` with eigenvalues in decreasing order and eigenvectors
    normalised so that ``V' M V = I``.
    """
    Q = np.asarray(Q, dtype=float)
    M = np.asarray(M, dtype=float)
    _check_symmetric(Q, "Q")
    _spd_eigh(M, "M")
    m = M.shape[0]
    if not 1 <= n <= m:
        raise RankTooLarge(f"n={n} not in [1, {m}]")
    lam, V = sla.eigh((Q + Q.T) / 2, (M + M.T) / 2, subset_by_index=[m - n, m - 1])
    lam = lam[::-1]
    V = V[:, ::-1]
    idx = np.argmax(np.abs(V), axis=0)
    sgn = np.sign(V[idx, np.arange(n)])
    sgn[sgn == 0] = 1.0
    return V * sgn, lam


def weighted_pinv(O: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Weighted left inverse ``(O' W2 O)^{-1} O' W2`` with ``W2 = W' W``.

    For the symmetric weights used throughout ``W' W`` equals ``W @ W``.
    """
    O = np.asarray(O, dtype=float)
    W = np.asarray(W, dtype=float)
    W2 = W.T @ W
    N = O.T @ W2 @ O
    if not is_well_conditioned(N):
        raise SingularNormalMatrix("O' W^2 O is singular")
    return np.linalg.solve(N, O.T @ W2)


def block_inverse(A, B, C, D) -> np.ndarray:
    """Inverse of ``[[A, B], [C, D]]`` via the Schur complement of ``A``.

    ``inv = diag(A^{-1}, 0) + [-A^{-1}B; I] (D - C A^{-1} B)^{-1} [-C A^{-1}, I]``
    """
    A, B, C, D = (np.atleast_2d(np.asarray(x, dtype=float)) for x in (A, B, C, D))
    if not is_well_conditioned(A):
        raise SingularBlock("A is singular")
    Ainv = np.linalg.inv(A)
    S = D - C @ Ainv @ B
    if not is_well_conditioned(S):
        raise SingularSchurComplement("D - C A^{-1} B is singular")
    p, q = A.shape[0], D.shape[0]
    left = np.vstack([-Ainv @ B, np.eye(q)])
    right = np.hstack([-C @ Ainv, np.eye(q)])
    out = left @ np.linalg.solve(S, right)
    out[:p, :p] += Ainv
    return out
