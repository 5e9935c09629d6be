"""Sample moments and kernel long-run covariance estimators.

Series are ``(dim, T)`` arrays: one row per variable, one column per time
point.  Lagged covariances treat observations outside ``1..T`` as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, LagOutOfRange, LengthMismatch

KERNELS = ("quartic", "parzen")


@dataclass(frozen=True)
class KernelConfig:
    """Kernel choice and bandwidth rule ``K = round(c * T**b)``."""

    kernel: str = "quartic"
    b: float = 1 / 3
    c: float = 1.0

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ConfigError("kernel.kernel", f"unknown kernel {self.kernel!r}")
        if not 0.25 < self.b < 2 / 3:
            raise ConfigError("kernel.b", f"exponent {self.b} outside (1/4, 2/3)")
        if not self.c > 0:
            raise ConfigError("kernel.c", f"scale {self.c} must be positive")


@dataclass(frozen=True)
class LongRunSet:
    omega: np.ndarray
    delta: np.ndarray
    K_used: int


def _as_series(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    return a


def _check_lengths(a: np.ndarray, b: np.ndarray) -> int:
    if a.shape[1] != b.shape[1]:
        raise LengthMismatch(f"series lengths differ: {a.shape[1]} vs {b.shape[1]}")
    return a.shape[1]


def sample_moment(a, b) -> np.ndarray:
    """``<a, b> = T^{-1} sum_t a_t b_t'``."""
    a, b = _as_series(a), _as_series(b)
    T = _check_lengths(a, b)
    return a @ b.T / T


def lagged_cov(a, b, j: int) -> np.ndarray:
    """``T^{-1} sum_{t=1}^T a_t b_{t-j}'`` with zero padding outside the sample."""
    a, b = _as_series(a), _as_series(b)
    T = _check_lengths(a, b)
    if abs(j) > T - 1:
        raise LagOutOfRange(f"|j|={abs(j)} exceeds T-1={T - 1}")
    if j >= 0:
        return a[:, j:] @ b[:, : T - j].T / T
    return a[:, : T + j] @ b[:, -j:].T / T


def kernel_weight(x: float, cfg: KernelConfig | None = None) -> float:
    cfg = cfg or KernelConfig()
    ax = abs(x)
    if ax >= 1.0:
        return 0.0
    if cfg.kernel == "quartic":
        return (1.0 - ax * ax) ** 2
    # Parzen
    if ax <= 0.5:
        return 1.0 - 6.0 * ax * ax + 6.0 * ax**3
    return 2.0 * (1.0 - ax) ** 3


def bandwidth(T: int, cfg: KernelConfig | None = None) -> int:
    cfg = cfg or KernelConfig()
    K = max(1, math.floor(cfg.c * T**cfg.b + 0.5))
    return int(min(K, max(T - 1, 1)))


def long_run(a, b, cfg: KernelConfig | None = None, K: int | None = None) -> LongRunSet:
    """Kernel estimates of the long-run and one-sided long-run covariance.

    ``omega = sum_{j=1-T}^{T-1} w(j/K) G(j)`` and
    ``delta = sum_{j=0}^{T-1} w(j/K) G(j)`` where ``G(j) = lagged_cov(a, b, j)``.
    Lags with zero weight are skipped.
    """
    cfg = cfg or KernelConfig()
    a, b = _as_series(a), _as_series(b)
    T = _check_lengths(a, b)
    K = bandwidth(T, cfg) if K is None else int(K)
    delta = lagged_cov(a, b, 0)
    omega = delta.copy()
    for j in range(1, min(K, T)):
        w = kernel_weight(j / K, cfg)
        if w == 0.0:
            continue
        g_pos = lagged_cov(a, b, j)
        delta = delta + w * g_pos
        omega = omega + w * (g_pos + lagged_cov(a, b, -j))
    return LongRunSet(omega, delta, K)


def omega_hat(a, b, cfg: KernelConfig | None = None, K: int | None = None) -> np.ndarray:
    return long_run(a, b, cfg, K).omega


def delta_hat(a, b, cfg: KernelConfig | None = None, K: int | None = None) -> np.ndarray:
    return long_run(a, b, cfg, K).delta


def difference(a) -> np.ndarray:
    """First difference with the zero pre-sample convention ``a_0 = 0``."""
    a = _as_series(a)
    out = a.copy()
    out[:, 1:] -= a[:, :-1]
    return out
