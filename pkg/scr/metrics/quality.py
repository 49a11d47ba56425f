from dataclasses import dataclass, asdict

import numpy as np
from skimage.metrics import mean_squared_error, structural_similarity

from scr.config.numerics import WP, PIXEL_MAX
from scr.utils.types_alias import ColorImage

SSIM_SIGMA = 1.5
SSIM_WINDOW = 11  # side of the truncated Gaussian window for SSIM_SIGMA
SSIM_K1, SSIM_K2 = 0.01, 0.03


@dataclass(frozen=True)
class QualityReport:
    psnr: float
    ssim: float
    per_channel_psnr: tuple[float, float, float]

    def as_dict(
            self,
            prefix: str = ""
    ) -> dict[str, float]:
        report = asdict(self)
        per_channel = report.pop("per_channel_psnr")
        report |= {f"psnr_{channel}": value for channel, value in zip("rgb", per_channel)}
        return {f"{prefix}{key}": value for key, value in report.items()}


def _check_pair(
        ref: ColorImage,
        test: ColorImage
) -> tuple[np.ndarray, np.ndarray]:
    ref, test = np.asarray(ref, dtype=WP), np.asarray(test, dtype=WP)

    if np.shape(ref) != np.shape(test):
        raise ValueError(f"Images must have the same shape but have {np.shape(ref)} and {np.shape(test)}")

    return ref, test


def _psnr_from_mse(
        mse: float,
        peak: float
) -> float:
    if mse == 0.:
        return np.inf
    return float(10. * np.log10(peak ** 2 / mse))


def psnr(
        ref: ColorImage,
        test: ColorImage,
        peak: float = PIXEL_MAX
) -> float:
    """10 log10(peak^2 / MSE) over all entries; inf for identical images."""
    ref, test = _check_pair(ref, test)
    return _psnr_from_mse(mean_squared_error(ref, test), peak)


def per_channel_psnr(
        ref: ColorImage,
        test: ColorImage,
        peak: float = PIXEL_MAX
) -> tuple[float, float, float]:
    ref, test = _check_pair(ref, test)
    mse = np.mean((ref - test) ** 2, axis=(0, 1))
    return tuple(_psnr_from_mse(float(value), peak) for value in mse)


def ssim(
        ref: ColorImage,
        test: ColorImage
) -> float:
    """
    Single-scale SSIM with an 11 x 11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03 and data range 255,
    computed per channel and averaged.
    """
    ref, test = _check_pair(ref, test)

    if np.ndim(ref) != 3 or min(np.shape(ref)[:2]) < SSIM_WINDOW:
        raise ValueError(f"SSIM needs (H, W, 3) images of at least {SSIM_WINDOW}x{SSIM_WINDOW} pixels "
                         f"but got {np.shape(ref)}")

    return float(structural_similarity(ref, test, data_range=PIXEL_MAX, channel_axis=2, gaussian_weights=True,
                                       sigma=SSIM_SIGMA, use_sample_covariance=False, K1=SSIM_K1, K2=SSIM_K2))


def quantise(
        image: ColorImage
) -> np.ndarray:
    """Round and clamp to the 8-bit grid (kept as floats)."""
    return np.clip(np.round(image), 0., PIXEL_MAX)


def quality_report(
        ref: ColorImage,
        test: ColorImage
) -> QualityReport:
    return QualityReport(psnr=psnr(ref, test), ssim=ssim(ref, test), per_channel_psnr=per_channel_psnr(ref, test))
