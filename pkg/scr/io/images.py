from pathlib import Path

import numpy as np
from skimage import io as skio

from scr.config.naming import FLOAT_SUFFIX, PNG_SUFFIX
from scr.config.numerics import WP, PIXEL_MAX
from scr.errors import ImageReadError
from scr.io.float_container import load_float_image, save_float_image
from scr.metrics.quality import quantise
from scr.utils.filesystem import check_dir
from scr.utils.types_alias import ColorImage


def to_color_image(
        array: np.ndarray
) -> ColorImage:
    """
    Bring a decoded array to (H, W, 3) floats on the 0..255 scale.

    Grey images are repeated over the channels, an alpha channel is dropped and 16-bit data are rescaled.
    """
    array = np.asarray(array)

    if array.ndim == 2:
        array = np.repeat(array[..., np.newaxis], 3, axis=2)
    elif array.ndim == 3 and np.shape(array)[2] == 1:
        array = np.repeat(array, 3, axis=2)
    elif array.ndim == 3 and np.shape(array)[2] == 4:
        array = array[..., :3]

    if array.ndim != 3 or np.shape(array)[2] != 3:
        raise ImageReadError(f"Unsupported image shape {np.shape(array)}")

    if array.dtype == np.uint16:
        return array.astype(WP) * (PIXEL_MAX / 65535.)
    if array.dtype == np.bool_:
        return array.astype(WP) * PIXEL_MAX

    return array.astype(WP)


def read_image(
        filename: str | Path
) -> ColorImage:
    """Read an 8-bit (or 16-bit) raster image or a float container as an (H, W, 3) float image."""
    filename = Path(filename)

    if filename.name.lower().endswith(FLOAT_SUFFIX):
        return to_color_image(load_float_image(filename))

    if not filename.is_file():
        raise ImageReadError(f'Image "{filename}" does not exist')

    try:
        array = skio.imread(filename)
    except Exception as error:  # decoders raise a variety of exception types
        raise ImageReadError(f'Cannot decode "{filename}": {error}') from error

    image = to_color_image(array)

    if not np.all(np.isfinite(image)):
        raise ImageReadError(f'"{filename}" contains non-finite values')

    return image


def save_png(
        filename: str | Path,
        image: ColorImage
) -> None:
    """Save the rounded and clamped 8-bit version of the image."""
    check_dir(filename, is_file=True)
    skio.imsave(filename, quantise(image).astype(np.uint8), check_contrast=False)


def save_image_pair(
        stem: str | Path,
        image: ColorImage
) -> tuple[Path, Path]:
    """Save <stem>.f32img (exact) and <stem>.png (preview); return both paths."""
    stem = Path(stem)
    float_path = stem.with_name(stem.name + FLOAT_SUFFIX)
    png_path = stem.with_name(stem.name + PNG_SUFFIX)

    save_float_image(float_path, image)
    save_png(png_path, image)

    return float_path, png_path
