import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrrint import dgp, estimators as E, linalg
from rrrint.covest import KernelConfig, sample_moment
from rrrint.errors import RankTooLarge, SelectorSingular, SingularGram, SingularLongRun
from rrrint.presets import PRESETS

seeds = st.integers(0, 2**32 - 1)


def random_sample(seed, s=3, m_r=3, m_u=1, T=80):
    rng = np.random.default_rng(seed)
    z_r = rng.standard_normal((m_r, T)).cumsum(axis=1) * 0.3 + rng.standard_normal((m_r, T))
    z_u = rng.standard_normal((m_u, T))
    y = rng.standard_normal((s, m_r)) @ z_r + rng.standard_normal((s, m_u)) @ z_u + rng.standard_normal((s, T))
    return E.RegressionSample(y, z_r, z_u)


def cy_sample(seed, T=300):
    spec = dgp.make_cy_positive_spec(3, 3, 1, 2, 1, 2, 1, 5)
    s = dgp.simulate(spec, T, seed)
    return spec, E.RegressionSample(s.y, s.z_r, s.z_u)


def objective(sample, beta_r):
    """Weighted residual criterion tr(<y,y>^{-1} <e,e>) after partialling out z_u."""
    y, z_r, z_u = sample.prepared()
    y_pi, z_pi = E.project_out(y, z_u), E.project_out(z_r, z_u)
    e = y_pi - beta_r @ z_pi
    return float(np.trace(np.linalg.solve(sample_moment(y_pi, y_pi), sample_moment(e, e))))


# OLS and projections


def test_ols_trivial():
    z = np.random.default_rng(0).standard_normal((1, 20))
    assert np.allclose(E.ols(E.RegressionSample(2 * z, z)).beta, [[2.0]])
    Z = np.random.default_rng(1).standard_normal((3, 20))
    assert np.allclose(E.ols(E.RegressionSample(Z, Z)).beta, np.eye(3))


def test_ols_normal_equation_oracle():
    smp = random_sample(2)
    z = np.vstack([smp.z_r, smp.z_u])
    oracle = (smp.y @ z.T) @ np.linalg.inv(z @ z.T)
    assert np.allclose(E.ols(smp).beta, oracle, atol=1e-9)


def test_ols_singular_gram():
    z = np.ones((2, 10))
    with pytest.raises(SingularGram):
        E.ols(E.RegressionSample(np.ones((1, 10)), z))


def test_project_out():
    rng = np.random.default_rng(3)
    a, b = rng.standard_normal((2, 30)), rng.standard_normal((2, 30))
    assert np.array_equal(E.project_out(a, np.zeros((0, 30))), a)
    assert np.allclose(E.project_out(b, b), 0, atol=1e-12)
    assert np.allclose(sample_moment(E.project_out(a, b), b), 0, atol=1e-10)


# RRR


def test_rrr_full_rank_is_ols():
    smp = random_sample(4)
    assert np.allclose(E.rrr(smp, 3).beta, E.ols(smp).beta, atol=1e-10)


def test_rrr_exact_low_rank_fit():
    # s = n keeps <y, y> nonsingular while rank n < m_r still binds
    rng = np.random.default_rng(5)
    O, G = rng.standard_normal((2, 2)), rng.standard_normal((4, 2))
    z = rng.standard_normal((4, 50))
    est = E.rrr(E.RegressionSample(O @ G.T @ z, z), 2)
    assert np.allclose(est.beta_r, O @ G.T, atol=1e-8)


def test_rrr_als_oracle():
    rng = np.random.default_rng(6)
    z = rng.standard_normal((3, 60))
    y = np.outer(rng.standard_normal(3), rng.standard_normal(3)) @ z + 0.8 * rng.standard_normal((3, 60))
    smp = E.RegressionSample(y, z)
    best = objective(smp, E.rrr(smp, 1).beta_r)
    Syy, Syz, Szz = sample_moment(y, y), sample_moment(y, z), sample_moment(z, z)
    W = np.linalg.inv(Syy)
    Bols = Syz @ np.linalg.inv(Szz)
    als = []
    for start in range(100):
        g = np.random.default_rng(start).standard_normal((3, 1))
        for _ in range(200):
            f = g.T @ z
            o = sample_moment(y, f) / sample_moment(f, f)
            g = (np.linalg.solve(o.T @ W @ o, o.T @ W @ Bols)).T
        als.append(objective(smp, o @ g.T))
    assert best <= min(als) + 1e-10


def test_rrr_rank_checks():
    smp = random_sample(7)
    with pytest.raises(RankTooLarge):
        E.rrr(smp, 4)
    with pytest.raises(RankTooLarge):
        E.fm_rrr(smp, 0)


@given(seeds, st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_rrr_invariants(seed, n):
    smp = random_sample(seed)
    r = E.rrr(smp, n)
    assert np.allclose(r.beta_r, r.O_hat @ r.Gamma_hat.T, atol=1e-10)
    assert np.linalg.matrix_rank(r.beta_r, tol=1e-8) <= n
    # route equivalence and factor-choice invariance
    assert np.allclose(E.rrr_geneig(smp, n).beta, r.beta, atol=1e-8)
    assert np.allclose(E.rrr(smp, n, weight="cholesky").beta, r.beta, atol=1e-9)
    # beta_u correction identity
    o = E.ols(smp)
    coef = sample_moment(smp.z_r, smp.z_u) @ np.linalg.inv(sample_moment(smp.z_u, smp.z_u))
    assert np.allclose(r.beta_u - o.beta_u, (o.beta_r - r.beta_r) @ coef, atol=1e-10)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_rrr_monotone_fit(seed):
    smp = random_sample(seed)
    vals = [objective(smp, E.rrr(smp, n).beta_r) for n in (1, 2, 3)]
    assert vals[0] >= vals[1] - 1e-12 and vals[1] >= vals[2] - 1e-12


def test_rrr_geneig_full_rank_is_ols():
    smp = random_sample(8)
    assert np.allclose(E.rrr_geneig(smp, 3).beta, E.ols(smp).beta, atol=1e-9)


@pytest.mark.parametrize("method", ["OLS", "RRR", "FM_OLS", "FM_RRR"])
def test_preprocessing_commutation(method):
    """Detrending first equals adding [1, t] as unrestricted regressors."""
    spec, smp = cy_sample(9, T=200)
    T = smp.T
    d = np.vstack([np.ones(T), np.arange(1, T + 1)])
    pre = E.RegressionSample(smp.y, smp.z_r, smp.z_u, "detrend")
    aug = E.RegressionSample(smp.y, smp.z_r, np.vstack([smp.z_u, d]))
    if method in ("OLS", "RRR"):
        a = E.estimate(method, pre, 2).beta_r
        b = E.estimate(method, aug, 2).beta_r
        assert np.allclose(a, b, atol=1e-9)
    else:
        # FM corrections use z_u differences too, so only the detrended route is defined
        assert np.all(np.isfinite(E.estimate(method, pre, 2).beta))


# FM-OLS / FM-RRR


def test_fm_ols_rejects_constant_regressor_increments():
    y = np.random.default_rng(0).standard_normal((1, 30))
    with pytest.raises(SingularLongRun):
        E.fm_ols(E.RegressionSample(y, np.zeros((1, 30))))


def test_fm_ols_hand_sum_oracle():
    y = np.array([[0.3, -1.2, 2.0, 0.7]])
    z = np.array([[1.0, 0.5, 2.5, 1.5]])
    cfg = KernelConfig(c=0.6)  # K = round(0.6 * 4^(1/3)) = 1
    est = E.fm_ols(E.RegressionSample(y, z), cfg)
    assert est.extras["K"] == 1
    T = 4
    dz = np.array([z[0, 0], *np.diff(z[0])])
    Szz = sum(z[0] ** 2) / T
    b_ols = sum(y[0] * z[0]) / T / Szz
    u = y[0] - b_ols * z[0]
    # with K = 1 every long-run quantity is the contemporaneous moment
    o_udz = sum(u * dz) / T
    o_dzdz = sum(dz * dz) / T
    num = sum(y[0] * z[0]) / T - o_udz - o_udz / o_dzdz * (sum(dz * z[0]) / T - o_dzdz)
    assert est.beta[0, 0] == pytest.approx(num / Szz, abs=1e-10)


def test_fm_rrr_full_rank_and_rank_bound():
    spec, smp = cy_sample(10)
    assert np.allclose(E.fm_rrr(smp, 3).beta, E.fm_ols(smp).beta, atol=1e-10)
    est = E.fm_rrr(smp, 2)
    assert np.linalg.svd(est.beta_r, compute_uv=False)[2] < 1e-10
    assert np.allclose(est.beta_r, est.O_hat @ est.Gamma_hat.T, atol=1e-10)


def test_fm_rrr_full_svd_oracle():
    spec, smp = cy_sample(11)
    n = 2
    est = E.fm_rrr(smp, n)
    y, z_r, z_u = smp.prepared()
    parts = E._fm_parts(y, np.vstack([z_r, z_u]), KernelConfig())
    Wff = linalg.inv_sym_sqrt(E.fm_weight_matrix(E.project_out(y, z_u), parts, KernelConfig()))
    Zh = linalg.sym_sqrt(sample_moment(z_r, z_r))
    A = Wff @ parts.beta[:, :3] @ Zh
    U, s, Vt = np.linalg.svd(A)
    best = U[:, :n] @ np.diag(s[:n]) @ Vt[:n]
    oracle = np.linalg.solve(Wff, best) @ np.linalg.inv(Zh)
    assert np.allclose(est.beta_r, oracle, atol=1e-10)
    # beta_u definition
    coef = sample_moment(z_r, z_u) @ np.linalg.inv(sample_moment(z_u, z_u))
    assert np.allclose(est.beta_u, parts.beta[:, 3:] - (parts.beta[:, :3] - est.beta_r) @ coef, atol=1e-12)


def test_fm_weight_matrix_is_positive_definite():
    spec, smp = cy_sample(12, T=2000)
    y, z_r, z_u = smp.prepared()
    parts = E._fm_parts(y, np.vstack([z_r, z_u]), KernelConfig())
    M = E.fm_weight_matrix(E.project_out(y, z_u), parts, KernelConfig())
    assert np.allclose(M, M.T)
    assert np.linalg.eigvalsh(M)[0] > 0


def test_fm_ols_close_to_ols_when_stationary():
    """Stationary regressors: the FM correction is small relative to the sampling error."""
    spec = dgp.DgpSpec.from_dict(PRESETS["stationary"]["config"]["experiments"][0]["spec"])
    b = np.hstack([spec.b_r, spec.b_u])
    gap, err = [], []
    for r in range(200):
        s = dgp.simulate(spec, 5000, [31, r], validate=False)
        smp = E.RegressionSample(s.y, s.z_r, s.z_u)
        o, f = E.ols(smp), E.fm_ols(smp)
        gap.append(np.linalg.norm(f.beta - o.beta))
        err.append(np.linalg.norm(o.beta - b))
    assert np.median(gap) < 0.1 * np.median(err)


# factor normalisation


def test_normalize_factors_examples():
    O = np.random.default_rng(13).standard_normal((3, 2))
    On, Gn, Sp = E.normalize_factors(O, np.eye(2))
    assert np.allclose(Gn, np.eye(2)) and np.allclose(Sp, np.eye(2)) and np.allclose(On, O)
    On, Gn, _ = E.normalize_factors(O, 2 * np.eye(2))
    assert np.allclose(Gn, np.eye(2)) and np.allclose(On, 2 * O)
    with pytest.raises(SelectorSingular):
        E.normalize_factors(O, np.zeros((3, 2)))


@given(seeds, st.integers(1, 4), st.integers(0, 3))
@settings(max_examples=50, deadline=None)
def test_normalize_factors_preserves_product(seed, n, extra):
    rng = np.random.default_rng(seed)
    O = rng.standard_normal((4, n))
    G = rng.standard_normal((n + extra, n))
    On, Gn, Sp = E.normalize_factors(O, G)
    assert np.allclose(On @ Gn.T, O @ G.T, atol=1e-12 * max(1, np.abs(O @ G.T).max()) * 10)
    assert np.allclose(Gn.T @ Sp, np.eye(n), atol=1e-10)
