import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from rrrint import asymptotics as A, dgp, linalg
from rrrint.errors import NotPositiveDefinite, SingularGram
from rrrint.presets import PRESETS


def stationary_spec():
    return dgp.DgpSpec.from_dict(PRESETS["stationary"]["config"]["experiments"][0]["spec"])


def anderson(S12=0.3, u=-0.5):
    return dgp.make_anderson_var1([[u]], [[1.0, S12], [S12, 1.0]], 1)


def cy_spec():
    return dgp.make_cy_positive_spec(3, 3, 1, 2, 1, 2, 1, 5)


def scalar_ma(coeffs, sigma2=1.0):
    return dgp.DgpSpec(Lambda=[[1.0]], Sigma=[[sigma2]], b_r=[[1.0]], b_u=np.zeros((1, 0)),
                       H_r=[[1.0]], H_u=np.zeros((0, 0)), ma_coeffs=[[[c]] for c in coeffs],
                       c_r=1, c_u=0, n=1)


def random_walk_spec():
    return scalar_ma([1.0])


# Brownian paths and the functional


def test_brownian_paths_guards():
    with pytest.raises(NotPositiveDefinite):
        A.brownian_paths(1, 100, 0, [[0.0]])
    with pytest.raises(ValueError):
        A.brownian_paths(1, 5, 0, [[1.0]])


def test_brownian_cumsum_oracle():
    N = 10
    W = A.brownian_paths(1, N, 3, [[2.0]])
    inc = np.sqrt(2.0) * np.random.default_rng(3).standard_normal((N, 1)).T / np.sqrt(N)
    assert W[0, 0] == 0.0
    assert np.array_equal(W[:, 1:], np.cumsum(inc, axis=1))


def test_brownian_terminal_variance():
    cov = np.array([[1.0, 0.4], [0.4, 2.0]])
    ends = np.array([A.brownian_paths(2, 10, [s, 1], cov)[:, -1] for s in range(10000)])
    assert np.allclose(np.cov(ends.T), cov, rtol=0.05, atol=0.05)


def ramp(N):
    t = np.linspace(0, 1, N + 1)[None]
    return A.functional_f(t, t)[0, 0]


def test_functional_ramp_and_order_one_over_n():
    assert ramp(1000) == pytest.approx(1.5, abs=0.01)
    assert ramp(1000) == pytest.approx(3 * 1000 / (2 * 1000 - 1), rel=1e-12)
    assert abs(ramp(2000) - 1.5) < 0.6 * abs(ramp(1000) - 1.5)


def test_functional_constant_integrator_is_zero():
    N = 100
    t = np.linspace(0, 1, N + 1)
    W = np.vstack([np.sin(2 * np.pi * t), np.cos(2 * np.pi * t)])
    assert np.allclose(A.functional_f(np.ones((1, N + 1)), W), 0)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_functional_naive_sum_and_linearity(seed):
    rng = np.random.default_rng(seed)
    N = 50
    E1, E2 = rng.standard_normal((2, 2, N + 1)).cumsum(axis=2)
    W = rng.standard_normal((2, N + 1)).cumsum(axis=1)
    S = np.zeros((2, 2))
    G = np.zeros((2, 2))
    for i in range(N):
        S += np.outer(E1[:, i + 1] - E1[:, i], W[:, i])
        G += np.outer(W[:, i], W[:, i]) / N
    assert np.allclose(A.functional_f(E1, W), S @ np.linalg.inv(G), atol=1e-12 * max(1, np.abs(S).max()) * 100)
    lhs = A.functional_f(E1 + E2, W)
    assert np.allclose(lhs, A.functional_f(E1, W) + A.functional_f(E2, W), atol=1e-10)


def test_functional_singular_gram():
    with pytest.raises(SingularGram):
        A.functional_f(np.ones((1, 11)), np.zeros((1, 11)))


def test_path_preprocessing_orthogonality():
    W = np.random.default_rng(0).standard_normal((2, 401)).cumsum(axis=1)
    w = np.arange(401) / 400
    assert np.allclose(A.demean_path(W)[:, :-1].mean(axis=1), 0, atol=1e-12)
    D = A.detrend_path(W)
    # orthogonal to 1 and w up to the O(1/N) discretization of the projection
    assert np.allclose(D[:, :-1].mean(axis=1), 0, atol=0.05 * np.abs(W).max())
    assert np.allclose((D[:, :-1] * w[:-1]).mean(axis=1), 0, atol=0.05 * np.abs(W).max())


# analytic long-run moments


def test_true_long_run_white():
    spec = dgp.DgpSpec(Lambda=np.eye(2), Sigma=np.eye(2), b_r=[[1.0, 0.0], [0.0, 0.0]],
                       b_u=np.zeros((2, 0)), H_r=np.eye(2), H_u=np.zeros((0, 0)),
                       ma_coeffs=[np.eye(2)], c_r=1, c_u=0, n=1)
    lr = A.true_long_run(spec)
    nu = slice(2, 4)
    assert np.allclose(lr.omega[nu, nu], np.eye(2))
    assert np.allclose(lr.delta[nu, nu], np.eye(2))


def test_true_long_run_ma2_lag_sum():
    lr = A.true_long_run(scalar_ma([1.0, 0.5], sigma2=2.0))
    assert lr.omega[1, 1] == pytest.approx(2.25 * 2.0)
    # brute-force lags of nu_t = e_{t-1} + 0.5 e_{t-2}
    g = {0: 2.0 * 1.25, 1: 2.0 * 0.5}
    assert lr.autocov(0)[1, 1] == pytest.approx(g[0])
    assert lr.autocov(1)[1, 1] == pytest.approx(g[1])
    assert lr.autocov(2)[1, 1] == pytest.approx(0.0, abs=1e-14)
    assert lr.delta[1, 1] == pytest.approx(g[0] + g[1])


@pytest.mark.parametrize("make", [stationary_spec, cy_spec, anderson,
                                  lambda: dgp.make_johansen_vecm([[-0.3], [0.2], [0.1]], [[1.0], [-1.0], [0.0]],
                                                                 [0.2 * np.eye(3)], np.eye(3))])
def test_true_long_run_identities(make):
    spec = make()
    lr = A.true_long_run(spec)
    assert np.allclose(lr.omega, lr.delta + lr.delta.T - lr.gamma0, atol=1e-12)
    # direct lag sum converges to the closed form
    tot = lr.gamma0 + sum(lr.autocov(j) + lr.autocov(j).T for j in range(1, 400))
    assert np.allclose(tot, lr.omega, atol=1e-8)
    assert np.allclose(lr.c1, spec.c1())


def test_true_long_run_matches_simulation():
    spec = cy_spec()
    nu, eps = dgp.simulate_nu(spec, 200_000, 1)
    x = np.vstack([eps, nu])
    lr = A.true_long_run(spec)
    assert np.allclose(np.cov(x), lr.gamma0, atol=0.02)


# scaling


@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 3), st.integers(2, 10**6))
@settings(max_examples=40, deadline=None)
def test_scaling_structure(m_r, c_r_extra, m_u, T):
    c_r = min(c_r_extra, m_r)
    spec = dgp.DgpSpec(Lambda=np.eye(1), Sigma=np.eye(1), b_r=np.ones((1, m_r)), b_u=np.zeros((1, m_u)),
                       H_r=np.eye(m_r), H_u=np.eye(m_u), ma_coeffs=[np.ones((m_r + m_u, 1))],
                       c_r=c_r, c_u=0, n=1)

    class Canon:
        c_y = 0

    sc = A.scaling(Canon, spec, T)
    d = np.diag(sc.D_zr)
    assert d.size == m_r and np.all(d > 0)
    assert np.allclose(d[:c_r], 1 / T) and np.allclose(d[c_r:], T ** -0.5)
    assert sc.D_z.shape == (m_r + m_u, m_r + m_u)
    assert np.allclose(np.diag(sc.D_zu), T ** -0.5)
    with pytest.raises(ValueError):
        A.scaling(Canon, spec, 1)


# projectors


def test_anderson_projector_identity():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        X = rng.standard_normal((2, 2))
        S = X @ X.T + 0.2 * np.eye(2)
        spec = dgp.make_anderson_var1([[-0.5]], S, 1)
        c = dgp.canonical_form(spec)
        p = A.correction_projectors(spec, c)
        lhs = c.O2 @ p.O2_dagger
        S11inv = linalg.block_inverse(S[:1, :1], np.zeros((1, 0)), np.zeros((0, 1)), np.zeros((0, 0)))
        rhs = np.array([[0.0], [1.0]]) @ np.hstack([-S[1:, :1] @ S11inv, np.eye(1)])
        assert np.allclose(lhs, rhs, atol=1e-10)
        assert np.allclose(p.P, 0, atol=1e-10)


@pytest.mark.parametrize("make", [stationary_spec, cy_spec, anderson])
def test_projector_algebra(make):
    spec = make()
    c = dgp.canonical_form(spec)
    p = A.correction_projectors(spec, c)
    assert np.allclose(p.annihilator @ c.O2, 0, atol=1e-8)
    assert np.allclose(p.P @ p.Ez3 @ c.Gamma32, 0, atol=1e-8)
    assert np.allclose(A.stationary_cov(spec, c), p.Ez3)


def test_square_o2_annihilator_vanishes():
    spec = stationary_spec()
    spec2 = dgp.DgpSpec.from_dict({**spec.to_dict(), "b_r": [[1.0, 0.5, -0.5], [0.0, 1.0, 0.3]], "n": 2})
    p = A.correction_projectors(spec2, dgp.canonical_form(spec2))
    assert np.allclose(p.annihilator, 0, atol=1e-10)


# FM ingredients


def test_anderson_fm_correction_factor():
    for s12 in (0.0, 0.3, -0.6):
        spec = anderson(S12=s12)
        fac = A.fm_correction_factor(spec, dgp.canonical_form(spec))
        assert np.allclose(fac, [[1.0], [s12]], atol=1e-12)


def test_anderson_fm_degenerate_row():
    spec = anderson()
    assert list(A.fm_degenerate_rows(spec, dgp.canonical_form(spec))) == [True, False]


def test_fm_linearity_matched_draws():
    spec = cy_spec()
    c = dgp.canonical_form(spec)
    d = A.limit_sampler(spec, c, 200, 20, 4)
    lr = A.true_long_run(spec)
    cz, cu, _ = A._gains(spec, c, lr)
    fac = A.fm_correction_factor(spec, c, lr)
    for r in range(20):
        W = A.brownian_paths(spec.k, 200, np.random.SeedSequence([4, r, 0]), spec.Sigma)
        WzP, _ = A.path_project(cz @ W, cu @ W)
        diff = A.functional_f(-c.T_y @ fac @ (np.vstack([cz, cu]) @ W), WzP)
        assert np.allclose(d.M_r_plus[r] - d.M_r[r], diff, atol=1e-10)


def test_vanishing_correction_gives_identical_draws():
    # noise loads only on eps components that never enter the regressors
    spec = dgp.DgpSpec(Lambda=[[0.0, 1.0]], Sigma=np.eye(2), b_r=[[1.0]], b_u=np.zeros((1, 0)),
                       H_r=[[1.0]], H_u=np.zeros((0, 0)), ma_coeffs=[[[1.0, 0.0]]], c_r=1, c_u=0, n=1)
    c = dgp.canonical_form(spec)
    assert np.allclose(A.fm_correction_factor(spec, c), 0)
    d = A.limit_sampler_fm(spec, c, 100, 30, 2)
    assert np.array_equal(d.M_r_plus, d.M_r)


def test_zero_lambda_gives_zero_m():
    spec = cy_spec()
    spec.Lambda = np.zeros_like(spec.Lambda)
    d = A.limit_sampler(spec, dgp.canonical_form(spec), 100, 10, 0)
    assert np.all(d.M_r == 0) and np.all(d.M_u == 0)


def test_stationary_sampler_blocks_and_covariance():
    spec = stationary_spec()
    c = dgp.canonical_form(spec)
    R = 4000
    d = A.limit_sampler_ols(spec, c, 50, R, 1)
    assert d.M_r.shape == (R, 2, 0) and d.N_r.shape == (R, 0, 0)
    # coefficient-scale limit: [Z_r, Z_u - Z_r N] with N the population regression of z^r on z^u
    G0 = A.true_long_run(spec).gamma0
    k = spec.k
    Eru = G0[k:k + 3, k + 3:]
    N = Eru @ np.linalg.inv(G0[k + 3:, k + 3:])
    beta = np.concatenate([d.Z_r, d.Z_u - d.Z_r @ N], axis=2)
    vec = beta.transpose(0, 2, 1).reshape(R, -1)
    from rrrint.mc import kron_target
    target = kron_target(spec)
    emp = vec.T @ vec / R
    assert np.linalg.norm(emp - target) / np.linalg.norm(target) < 0.1


def test_z_covariance_proxy_agrees_with_analytic():
    spec = cy_spec()
    c = dgp.canonical_form(spec)
    lr = A.true_long_run(spec)
    ana = A._z_covariance(spec, c, lr, "analytic", 0, 0, 0)
    prox = A.z_covariance_proxy(spec, c, seed=3, T_proxy=4000, reps=300)
    assert np.linalg.norm(prox - ana) / np.linalg.norm(ana) < 0.2


def test_sampler_deterministic_and_random_walk_two_resolution():
    spec = random_walk_spec()
    c = dgp.canonical_form(spec)
    a = A.limit_sampler(spec, c, 500, 2000, 9)
    b = A.limit_sampler(spec, c, 500, 2000, 9)
    assert np.array_equal(a.M_r, b.M_r)
    fine = A.limit_sampler(spec, c, 2000, 2000, 10)
    assert np.isfinite(np.median(np.abs(a.M_r)))
    assert stats.ks_2samp(a.M_r.ravel(), fine.M_r.ravel()).statistic < 0.05


def test_limit_draws_csv_round_trip(tmp_path):
    spec = cy_spec()
    d = A.limit_sampler(spec, dgp.canonical_form(spec), 50, 5, 0)
    path = tmp_path / "draws.csv"
    d.write_csv(path)
    back = A.read_draws_csv(path)
    for nm in ("M_r", "Z_r", "correction"):
        assert np.array_equal(back[nm], getattr(d, nm))
    assert path.read_text().split(",")[0] == "M_r_1_1"
