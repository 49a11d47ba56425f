import numpy as np

from scr.config.presets import AblationMode, ABLATION_MODES
from scr.noise.statistics import GroupNoiseStats
from scr.solvers.admm import DiagonalWeights


def _check_floored(
        stats: GroupNoiseStats
) -> None:
    if np.any(stats.sigma_c <= 0.) or np.any(stats.sigma_j <= 0.):
        raise ValueError("Noise levels must be floored to positive values before building weights")


def _channel_blocks(
        per_channel: np.ndarray,
        patch_size: int
) -> np.ndarray:
    return np.repeat(per_channel, patch_size ** 2)


def build_weights(
        stats: GroupNoiseStats
) -> DiagonalWeights:
    """
    C = Diag(sigma_c^-p in three blocks of d^2), S = Diag(sigma_j^-(1-p)).

    c_i * s_j equals 1 / (sigma_c^p * sigma_j^(1-p)) for the channel c of row i.
    """
    _check_floored(stats)

    c = _channel_blocks(stats.sigma_c ** -stats.p, stats.patch_size)
    s = stats.sigma_j ** -(1. - stats.p)

    return DiagonalWeights(c=c, s=s)


def ablation_weights(
        stats: GroupNoiseStats,
        mode: AblationMode = "full"
) -> DiagonalWeights:
    """
    Weights of the full model or of one of the two single-weight variants.

    Parameters:
        stats: Floored group statistics.
        mode: "full" (both weights), "drop_C" (C = I, S = Diag(1 / sigma_j))
            or "drop_S" (S = I, C = Diag(1 / sigma_c) in channel blocks).
    """
    if mode == "full":
        return build_weights(stats)

    _check_floored(stats)

    if mode == "drop_C":
        return DiagonalWeights(c=np.ones(3 * stats.patch_size ** 2), s=1. / stats.sigma_j)

    if mode == "drop_S":
        return DiagonalWeights(c=_channel_blocks(1. / stats.sigma_c, stats.patch_size), s=np.ones(stats.n_patches))

    raise ValueError(f"Unknown ablation mode '{mode}'. Available options are {ABLATION_MODES}.")
