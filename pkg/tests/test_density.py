import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from vnskew import density as dn


def test_hermite_values():
    assert dn.hermite(0, 1.7) == 1.0
    assert dn.hermite(1, 1.7) == 1.7
    assert dn.hermite(2, 2.0) == 3.0
    assert dn.hermite(3, 1.0) == -2.0
    assert dn.hermite(4, 2.0) == 16 - 24 + 3
    with pytest.raises(ValueError):
        dn.hermite(-1, 0.0)


def test_hermite_orthogonality():
    for j in range(5):
        for k in range(5):
            val, _ = integrate.quad(lambda x: dn.hermite(j, x) * dn.hermite(k, x) * dn.gaussian_pdf(x), -np.inf, np.inf)
            assert val == pytest.approx(math.factorial(k) if j == k else 0.0, abs=1e-8)


@given(st.floats(-2.0, 2.0))
def test_gram_charlier_moments(g1):
    def moment(p):
        return integrate.quad(lambda x: x ** p * dn.gram_charlier_pdf(x, g1), -np.inf, np.inf)[0]

    assert moment(0) == pytest.approx(1.0, abs=1e-9)
    assert moment(1) == pytest.approx(0.0, abs=1e-9)
    assert moment(2) == pytest.approx(1.0, abs=1e-9)
    assert moment(3) == pytest.approx(g1, abs=1e-8)


def test_gram_charlier_is_third_derivative_correction():
    x = np.linspace(-3, 3, 13)
    h = 1e-3
    third = (dn.gaussian_pdf(x + 2 * h) - 2 * dn.gaussian_pdf(x + h) + 2 * dn.gaussian_pdf(x - h)
             - dn.gaussian_pdf(x - 2 * h)) / (2 * h ** 3)
    g1 = -0.4
    assert np.allclose(dn.gram_charlier_pdf(x, g1), dn.gaussian_pdf(x) - g1 / 6 * third, atol=1e-6)


def test_gram_charlier_tail_not_clipped():
    assert dn.gram_charlier_pdf(4.0, -3.0) < 0


def test_standardize():
    z = dn.standardize([1.0, 3.0], 2.0, 4.0)
    assert list(z) == [-0.5, 0.5]
    with pytest.raises(ValueError):
        dn.standardize([1.0], 0.0, 0.0)


def test_kde_recovers_normal():
    rng = np.random.default_rng(4)
    grid = dn.default_grid()
    est = dn.estimate_density(rng.standard_normal(100_000), grid)
    assert np.max(np.abs(est - dn.gaussian_pdf(grid))) < 0.02
    assert np.trapezoid(est, grid) == pytest.approx(1.0, abs=1e-3)


def test_kde_binning_matches_direct_sum():
    rng = np.random.default_rng(8)
    s = rng.standard_normal(10_000)
    grid = np.linspace(-3, 3, 41)
    h = dn.silverman_bandwidth(s)
    direct = dn.gaussian_pdf((grid[:, None] - s[None]) / h).sum(axis=1) / (s.size * h)
    assert np.allclose(dn.estimate_density(s, grid), direct, atol=1e-4)


def test_kde_rejects_small_samples():
    with pytest.raises(ValueError):
        dn.estimate_density(np.zeros(9999), dn.default_grid())


def test_silverman_bandwidth():
    s = np.random.default_rng(2).standard_normal(10_000)
    assert dn.silverman_bandwidth(s) == pytest.approx(0.9 * 10_000 ** -0.2, rel=0.05)


@pytest.mark.parametrize("g1", [-0.8, -0.1, 0.3])
def test_l1_between_models_is_analytic(g1):
    grid = np.linspace(-10, 10, 20001)
    got = dn.l1_distance(grid, dn.gaussian_pdf(grid), dn.gram_charlier_pdf(grid, g1))
    ref = abs(g1) / 6 * integrate.quad(lambda x: abs(dn.hermite(3, x)) * dn.gaussian_pdf(x), -12, 12,
                                       points=[-math.sqrt(3), 0, math.sqrt(3)])[0]
    assert got == pytest.approx(ref, rel=1e-6)


def test_l1_shape_check():
    with pytest.raises(ValueError):
        dn.l1_distance(np.arange(3.0), np.zeros(3), np.zeros(4))


def test_table_csv():
    rng = np.random.default_rng(1)
    t = dn.density_table(rng.standard_normal(20_000) * 2 + 1, 1.0, 4.0, 0.0)
    assert set(t.curves) == set(dn.CURVES)
    assert t.mass("gaussian") == pytest.approx(1.0, abs=1e-5)
    assert t.distance("gaussian", "gram_charlier") == 0.0
    buf = io.StringIO()
    t.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,empirical,gaussian,gram_charlier"
    assert len(lines) == 402
    assert lines[1].split(",")[0] == "-5"


def test_table_validation():
    with pytest.raises(ValueError):
        dn.DensityTable(np.array([0.0, 0.0]))
    t = dn.DensityTable(np.linspace(0, 1, 3))
    with pytest.raises(ValueError):
        t.add("other", np.zeros(3))
    with pytest.raises(ValueError):
        t.add("gaussian", np.zeros(4))


def test_gaussian_basics():
    assert dn.gaussian_pdf(0.0) == 1 / math.sqrt(2 * math.pi)
    x = np.linspace(0, 4, 9)
    assert np.array_equal(dn.gaussian_pdf(x), dn.gaussian_pdf(-x))
    assert integrate.quad(dn.gaussian_pdf, -np.inf, np.inf)[0] == pytest.approx(1.0, abs=1e-10)


@given(st.floats(-1.0, 1.0))
def test_gram_charlier_mass_and_zero_correction(g1):
    assert integrate.quad(lambda x: dn.gram_charlier_pdf(x, g1), -np.inf, np.inf)[0] == pytest.approx(1.0, abs=1e-10)
    x = np.linspace(-4, 4, 17)
    assert np.array_equal(dn.gram_charlier_pdf(x, 0.0), dn.gaussian_pdf(x))


def test_standardize_identities():
    assert np.all(dn.standardize(np.full(5, 0.7), 0.7, 2.0) == 0.0)
    z = np.random.default_rng(3).standard_normal(50)
    assert np.array_equal(dn.standardize(z, 0.0, 1.0), z)


def test_identical_curves_have_zero_distance():
    g = dn.default_grid()
    assert dn.l1_distance(g, dn.gaussian_pdf(g), dn.gaussian_pdf(g)) == 0.0


@pytest.fixture(scope="module")
def entropy_table():
    from vnskew import cumulants as cm, ensemble as ens

    d = (4, 8)
    stats = ens.run_batch(d, 100_000, seed=17, keep_samples=True)
    k1, k2 = cm.kappa1(d).to_float(), cm.kappa2(d).to_float()
    return stats, dn.density_table(stats.samples, k1, k2, cm.skewness(d)), (k1, k2)


def test_standardized_entropy_stream(entropy_table):
    from vnskew import ensemble as ens

    stats, _, (k1, k2) = entropy_table
    z = dn.standardize(stats.samples, k1, k2)
    est = ens.empirical_cumulants(ens.SampleStats.from_values(z))
    assert abs(est.z_scores((0.0, 1.0, 0.0))[0]) < 4
    assert abs(est.z_scores((0.0, 1.0, 0.0))[1]) < 4


def test_entropy_density_shape(entropy_table):
    _, table, _ = entropy_table
    for c in dn.CURVES:
        assert table.mass(c) == pytest.approx(1.0, abs=0.02)
    emp, grid = table.curves["empirical"], table.grid
    mode = int(np.argmax(emp))
    assert np.all(np.diff(emp[:mode]) >= -1e-3) and np.all(np.diff(emp[mode:]) <= 1e-3)
    left = np.trapezoid(emp[:mode + 1], grid[:mode + 1])
    assert left > 0.5
    assert table.distance("empirical", "gram_charlier") < table.distance("empirical", "gaussian")
