from pathlib import Path

import numpy as np

from scr.config.naming import FLOAT_MAGIC
from scr.config.numerics import WP
from scr.errors import ImageReadError
from scr.utils.filesystem import check_dir

_HEADER_DTYPE = np.dtype("<u4")
_PIXEL_DTYPE = np.dtype("<f4")
_HEADER_SIZE = len(FLOAT_MAGIC) + 3 * _HEADER_DTYPE.itemsize


def save_float_image(
        filename: str | Path,
        image: np.ndarray
) -> None:
    """Save an (H, W, C) image as magic + uint32 H, W, C + row-major float32, all little-endian."""
    image = np.asarray(image)

    if image.ndim != 3:
        raise ValueError(f'"image" must have shape (H, W, C) but has {np.shape(image)}')

    check_dir(filename, is_file=True)

    header = np.array(np.shape(image), dtype=_HEADER_DTYPE).tobytes()
    pixels = np.ascontiguousarray(image, dtype=_PIXEL_DTYPE).tobytes()

    Path(filename).write_bytes(FLOAT_MAGIC + header + pixels)


def load_float_image(
        filename: str | Path
) -> np.ndarray:
    try:
        payload = Path(filename).read_bytes()
    except OSError as error:
        raise ImageReadError(f'Cannot read "{filename}": {error}') from error

    if len(payload) < _HEADER_SIZE or not payload.startswith(FLOAT_MAGIC):
        raise ImageReadError(f'"{filename}" is not a float image container')

    shape = tuple(int(n) for n in np.frombuffer(payload, dtype=_HEADER_DTYPE, count=3, offset=len(FLOAT_MAGIC)))

    if len(payload) - _HEADER_SIZE != int(np.prod(shape)) * _PIXEL_DTYPE.itemsize:
        raise ImageReadError(f'"{filename}" is truncated or has a corrupt header (shape {shape})')

    pixels = np.frombuffer(payload, dtype=_PIXEL_DTYPE, offset=_HEADER_SIZE)
    return np.reshape(pixels, shape).astype(WP)
