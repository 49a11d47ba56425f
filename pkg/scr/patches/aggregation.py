from typing import Iterable

import numpy as np

from scr.config.numerics import WP
from scr.errors import CoverageError
from scr.patches.grouping import PatchGroup, devectorise_patches
from scr.utils.types_alias import ColorImage, PatchMatrix


class AggregationBuffer:
    """
    Per-pixel sums of patch estimates and the number of patches written to each pixel.
    """

    def __init__(
            self,
            height: int,
            width: int
    ):
        self.height = height
        self.width = width
        self.sums = np.zeros((height * width, 3), dtype=WP)
        self.counts = np.zeros(height * width, dtype=np.int64)

    def add(
            self,
            positions: np.ndarray,
            matrix: PatchMatrix
    ) -> None:
        """
        Place each column of the (3 d^2, N) matrix at the matching top-left position.
        """
        positions = np.asarray(positions, dtype=int)
        d = int(round(np.sqrt(np.shape(matrix)[0] // 3)))

        if np.shape(matrix) != (3 * d ** 2, len(positions)):
            raise ValueError(f"Matrix of shape {np.shape(matrix)} does not match {len(positions)} patches")

        offsets = np.add.outer(np.arange(d) * self.width, np.arange(d)).ravel()
        flat_index = (positions[:, 0] * self.width + positions[:, 1])[:, np.newaxis] + offsets

        values = np.reshape(devectorise_patches(matrix, d), (-1, 3))
        np.add.at(self.sums, flat_index.ravel(), values)
        np.add.at(self.counts, flat_index.ravel(), 1)

    def merge(
            self,
            other: "AggregationBuffer"
    ) -> None:
        if (self.height, self.width) != (other.height, other.width):
            raise ValueError("Cannot merge buffers of different image sizes")

        self.sums += other.sums
        self.counts += other.counts

    def result(self) -> ColorImage:
        uncovered = np.flatnonzero(self.counts == 0)

        if np.size(uncovered) > 0:
            row, col = np.unravel_index(uncovered[0], (self.height, self.width))
            raise CoverageError(f"{np.size(uncovered)} pixels are not covered by any patch, "
                                f"the first at row {row}, column {col}")

        image = self.sums / self.counts[:, np.newaxis]
        return np.reshape(image, (self.height, self.width, 3))


def aggregate(
        groups: Iterable[tuple[PatchGroup, PatchMatrix]],
        height: int,
        width: int
) -> ColorImage:
    """
    Average all denoised patches back into an (H, W, 3) image.

    Parameters:
        groups: Pairs of a PatchGroup and its denoised (3 d^2, N) matrix.
        height, width: Image size.

    Returns:
        Image whose pixels are the mean of every patch value covering them.

    Raises:
        CoverageError: A pixel is covered by no patch.
    """
    buffer = AggregationBuffer(height, width)

    for group, denoised in groups:
        buffer.add(group.members, denoised)

    return buffer.result()
