from dataclasses import dataclass, replace

import numpy as np

from scr.config.numerics import WP, EPS_P, SIGMA_FLOOR
from scr.utils.numerics import coefficient_of_variation


@dataclass(frozen=True)
class GroupNoiseStats:
    """
    Noise statistics of one patch group.

    Parameters:
        sigma_c: Channel noise levels (sigma_r, sigma_g, sigma_b) of the group.
        sigma_j: Noise level of each of the N patches.
        p: Relative weight in [0, 1] between channel and spatial variation.
        sigma0: Input channel noise levels.
        patch_size: Patch side d (each channel block of a patch vector has d^2 entries).
    """
    sigma_c: np.ndarray
    sigma_j: np.ndarray
    p: float
    sigma0: np.ndarray
    patch_size: int

    def __post_init__(self):
        for name in ("sigma_c", "sigma_j", "sigma0"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), dtype=WP)))

        if not 0. <= self.p <= 1.:
            raise ValueError(f'"p" must lie in [0, 1] but is {self.p}')
        if np.size(self.sigma_c) != 3 or np.size(self.sigma0) != 3:
            raise ValueError('"sigma_c" and "sigma0" must have three entries')
        if np.any(np.asarray(self.sigma_c) < 0.) or np.any(np.asarray(self.sigma_j) < 0.):
            raise ValueError("Noise levels must be nonnegative")

    @property
    def n_patches(self) -> int:
        return np.size(self.sigma_j)

    def floored(
            self,
            floor: float = SIGMA_FLOOR
    ) -> "GroupNoiseStats":
        return replace(self, sigma_c=np.maximum(self.sigma_c, floor), sigma_j=np.maximum(self.sigma_j, floor))


def _check_group_pair(
        Y_group: np.ndarray,
        Xhat_group: np.ndarray,
        sigma0: np.ndarray | list[float]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    Y_group = np.asarray(Y_group, dtype=WP)
    Xhat_group = np.asarray(Xhat_group, dtype=WP)
    sigma0 = np.asarray(sigma0, dtype=WP)

    if Y_group.ndim != 2 or np.shape(Y_group) != np.shape(Xhat_group):
        raise ValueError(f"Patch matrices must be 2D and of equal shape but have {np.shape(Y_group)} "
                         f"and {np.shape(Xhat_group)}")
    if np.shape(Y_group)[0] % 3 != 0:
        raise ValueError(f"Number of rows ({np.shape(Y_group)[0]}) is not divisible into three channel blocks")
    if np.shape(sigma0) != (3,) or np.any(sigma0 < 0.):
        raise ValueError(f'"sigma0" must hold three nonnegative values but is {sigma0}')

    return Y_group, Xhat_group, sigma0


def estimate_sigma_j(
        Y_group: np.ndarray,
        Xhat_group: np.ndarray,
        sigma0: np.ndarray | list[float]
) -> np.ndarray:
    """
    sigma_j = sqrt(| mean(sigma0^2) - ||y_j - xhat_j||^2 / (3 d^2) |) for each column j.
    """
    Y_group, Xhat_group, sigma0 = _check_group_pair(Y_group, Xhat_group, sigma0)

    residual_power = np.mean((Y_group - Xhat_group) ** 2, axis=0)
    return np.sqrt(np.abs(np.mean(sigma0 ** 2) - residual_power))


def estimate_sigma_c(
        Y_group: np.ndarray,
        Xhat_group: np.ndarray,
        sigma0: np.ndarray | list[float]
) -> np.ndarray:
    """
    sigma_c = sqrt(| sigma_c0^2 - ||Y^(c) - Xhat^(c)||_F^2 / (d^2 N) |) per channel block.

    The residual is pooled over all N patches of the group.
    """
    Y_group, Xhat_group, sigma0 = _check_group_pair(Y_group, Xhat_group, sigma0)

    blocks = np.reshape(Y_group - Xhat_group, (3, -1, np.shape(Y_group)[1]))
    residual_power = np.mean(blocks ** 2, axis=(1, 2))
    return np.sqrt(np.abs(sigma0 ** 2 - residual_power))


def relative_weight(
        sigma_c: np.ndarray,
        sigma_j: np.ndarray,
        eps_p: float = EPS_P
) -> float:
    """
    p = (v_c + eps) / (v_c + v_s + 2 eps) with v_c, v_s the coefficients of variation of sigma_c and sigma_j.

    A vector with zero mean has v = 0, so p = 0.5 when both means vanish.
    """
    v_c = coefficient_of_variation(sigma_c)
    v_s = coefficient_of_variation(sigma_j)

    return float((v_c + eps_p) / (v_c + v_s + 2. * eps_p))


def estimate_group_stats(
        Y_group: np.ndarray,
        Xhat_group: np.ndarray,
        sigma0: np.ndarray | list[float],
        eps_p: float = EPS_P,
        sigma_floor: float = SIGMA_FLOOR
) -> GroupNoiseStats:
    """
    All noise statistics of a group; p is computed before the floor is applied.
    """
    Y_group, Xhat_group, sigma0 = _check_group_pair(Y_group, Xhat_group, sigma0)

    sigma_c = estimate_sigma_c(Y_group, Xhat_group, sigma0)
    sigma_j = estimate_sigma_j(Y_group, Xhat_group, sigma0)
    patch_size = int(round(np.sqrt(np.shape(Y_group)[0] // 3)))

    stats = GroupNoiseStats(sigma_c=sigma_c, sigma_j=sigma_j, p=relative_weight(sigma_c, sigma_j, eps_p=eps_p),
                            sigma0=sigma0, patch_size=patch_size)

    return stats.floored(sigma_floor)
