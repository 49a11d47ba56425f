import numpy as np
import pytest

from scr.config.numerics import SIGMA_FLOOR
from scr.noise.statistics import (GroupNoiseStats, estimate_sigma_j, estimate_sigma_c, relative_weight,
                                  estimate_group_stats)
from scr.noise.weights import build_weights, ablation_weights
from scr.solvers.admm import DiagonalWeights


def _stats(
        sigma_c: list[float],
        sigma_j: list[float],
        p: float,
        patch_size: int = 2
) -> GroupNoiseStats:
    return GroupNoiseStats(sigma_c=np.array(sigma_c), sigma_j=np.array(sigma_j), p=p,
                           sigma0=np.array(sigma_c), patch_size=patch_size)


def test_estimate_sigma_j_examples() -> None:
    rng = np.random.default_rng(0)
    Y = rng.standard_normal((12, 5))

    np.testing.assert_allclose(estimate_sigma_j(Y, Y, [7., 7., 7.]), 7.)

    # residual power equals mean(sigma0^2) -> zero
    sigma0 = np.array([3., 4., 5.])
    Xhat = Y - np.sqrt(np.mean(sigma0 ** 2))
    np.testing.assert_allclose(estimate_sigma_j(Y, Xhat, sigma0), 0., atol=1e-6)

    Y = np.ones((3, 1))
    assert estimate_sigma_j(Y, np.zeros_like(Y), sigma0)[0] == pytest.approx(np.sqrt(47. / 3.), abs=1e-12)
    assert estimate_sigma_j(Y, np.zeros_like(Y), sigma0)[0] == pytest.approx(3.9581, abs=1e-4)


def test_estimate_sigma_c_examples() -> None:
    rng = np.random.default_rng(1)
    Y = rng.standard_normal((27, 4))
    np.testing.assert_allclose(estimate_sigma_c(Y, Y, [1., 2., 3.]), [1., 2., 3.])

    # d = 1, N = 2, red residuals 3 and 1
    Y = np.array([[3., 1.], [0., 0.], [0., 0.]])
    sigma_c = estimate_sigma_c(Y, np.zeros_like(Y), [5., 5., 5.])
    assert sigma_c[0] == pytest.approx(np.sqrt(20.), abs=1e-12)
    np.testing.assert_allclose(sigma_c[1:], 5.)


def test_estimate_sigma_c_single_patch_matches_per_patch_form() -> None:
    rng = np.random.default_rng(2)
    Y, Xhat = rng.standard_normal((12, 1)), rng.standard_normal((12, 1))
    sigma0 = np.array([2., 1., 3.])

    residual = np.reshape(Y - Xhat, (3, 4))
    expected = np.sqrt(np.abs(sigma0 ** 2 - np.sum(residual ** 2, axis=1) / 4.))

    np.testing.assert_allclose(estimate_sigma_c(Y, Xhat, sigma0), expected)


def test_estimators_reject_bad_shapes() -> None:
    with pytest.raises(ValueError):
        estimate_sigma_j(np.zeros((12, 3)), np.zeros((12, 4)), [1., 1., 1.])
    with pytest.raises(ValueError):
        estimate_sigma_c(np.zeros((10, 3)), np.zeros((10, 3)), [1., 1., 1.])
    with pytest.raises(ValueError):
        estimate_sigma_c(np.zeros((12, 3)), np.zeros((12, 3)), [1., 1.])


def test_relative_weight_examples() -> None:
    assert relative_weight(np.array([1., 2., 3.]), np.array([2., 4., 6., 2.])) == pytest.approx(
        relative_weight(np.array([2., 4., 6.]), np.array([1., 2., 3., 1.])))
    assert relative_weight(np.array([1., 2., 3.]), np.array([1., 2., 3.])) == pytest.approx(0.5)

    assert relative_weight(np.array([4., 4., 4.]), np.array([1., 5., 9.]), eps_p=1e-12) == pytest.approx(0., abs=1e-9)
    assert relative_weight(np.array([1., 2., 3.]), np.full(10, 7.)) == pytest.approx(1., abs=1e-6)

    # both means zero
    assert relative_weight(np.zeros(3), np.zeros(5)) == 0.5


def test_relative_weight_symmetry() -> None:
    rng = np.random.default_rng(3)

    for _ in range(20):
        a, b = rng.uniform(0.1, 50., 3), rng.uniform(0.1, 50., 3)
        p = relative_weight(a, b)

        assert 0. <= p <= 1.
        assert relative_weight(b, a) == pytest.approx(1. - p, abs=1e-12)


def test_estimate_group_stats_floors() -> None:
    Y = np.zeros((12, 3))
    stats = estimate_group_stats(Y, Y, [0., 0., 0.])

    np.testing.assert_array_equal(stats.sigma_c, SIGMA_FLOOR)
    np.testing.assert_array_equal(stats.sigma_j, SIGMA_FLOOR)
    assert stats.p == 0.5
    assert stats.patch_size == 2


def test_build_weights_examples() -> None:
    weights = build_weights(_stats([2., 3., 4.], [1., 5.], p=1.))
    np.testing.assert_array_equal(weights.s, 1.)
    np.testing.assert_allclose(weights.c[:4], 0.5)

    weights = build_weights(_stats([2., 3., 4.], [1., 5.], p=0.))
    np.testing.assert_array_equal(weights.c, 1.)
    np.testing.assert_allclose(weights.s, [1., 0.2])


def test_build_weights_compose_to_pixel_sigma() -> None:
    sigma_c, sigma_j, p = np.array([20., 35., 5.]), np.array([10., 25., 40., 31.]), 0.37
    weights = build_weights(_stats(sigma_c, sigma_j, p=p, patch_size=3))

    assert isinstance(weights, DiagonalWeights)
    assert np.all(np.isfinite(weights.c)) and np.all(weights.c > 0.)

    for i in (0, 8, 9, 17, 18, 26):
        for j in range(4):
            sigma_cj = sigma_c[i // 9] ** p * sigma_j[j] ** (1. - p)
            assert weights.c[i] * weights.s[j] == pytest.approx(1. / sigma_cj, rel=1e-12)


def test_build_weights_requires_flooring() -> None:
    with pytest.raises(ValueError):
        build_weights(_stats([0., 1., 1.], [1., 1.], p=0.5))


def test_ablation_weights_examples() -> None:
    stats = _stats([3., 5., 7.], [2., 4.], p=0.4)

    full = ablation_weights(stats, "full")
    reference = build_weights(stats)
    np.testing.assert_array_equal(full.c, reference.c)
    np.testing.assert_array_equal(full.s, reference.s)

    drop_c = ablation_weights(stats, "drop_C")
    np.testing.assert_array_equal(drop_c.c, 1.)
    np.testing.assert_allclose(drop_c.s, [0.5, 0.25])

    drop_s = ablation_weights(stats, "drop_S")
    np.testing.assert_array_equal(drop_s.s, 1.)
    np.testing.assert_allclose(drop_s.c[4:8], 0.2)

    with pytest.raises(ValueError):
        ablation_weights(stats, "drop_both")
