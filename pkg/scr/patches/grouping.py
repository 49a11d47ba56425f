from dataclasses import dataclass

import numpy as np
from skimage.util import view_as_windows

from scr.config.numerics import WP
from scr.config.presets import PipelineConfig
from scr.utils.types_alias import ColorImage, PatchMatrix, Position


@dataclass(frozen=True)
class PatchGroup:
    """
    A key patch and its most similar patches.

    Parameters:
        key: Top-left (row, col) of the key patch.
        members: (N, 2) top-left positions; the first row is the key.
        Y: (3 d^2, N) patch matrix, columns channel-blocked (r, then g, then b, each d x d row-major).
    """
    key: Position
    members: np.ndarray
    Y: PatchMatrix

    @property
    def patch_size(self) -> int:
        return int(round(np.sqrt(np.shape(self.Y)[0] // 3)))

    @property
    def n_patches(self) -> int:
        return np.shape(self.Y)[1]


def patch_view(
        image: ColorImage,
        patch_size: int
) -> np.ndarray:
    """
    Read-only (H - d + 1, W - d + 1, d, d, 3) view of all patches of the image.
    """
    image = np.asarray(image, dtype=WP)

    if image.ndim != 3 or np.shape(image)[2] != 3:
        raise ValueError(f'"image" must have shape (H, W, 3) but has {np.shape(image)}')

    return view_as_windows(image, (patch_size, patch_size, 3))[:, :, 0]


def vectorise_patches(
        patches: np.ndarray
) -> np.ndarray:
    """(..., d, d, 3) patches to (..., 3 d^2) channel-blocked vectors."""
    patches = np.moveaxis(patches, -1, -3)
    return np.reshape(patches, np.shape(patches)[:-3] + (-1,))


def devectorise_patches(
        matrix: PatchMatrix,
        patch_size: int
) -> np.ndarray:
    """(3 d^2, N) matrix to (N, d, d, 3) patches."""
    patches = np.reshape(np.transpose(matrix), (-1, 3, patch_size, patch_size))
    return np.moveaxis(patches, 1, -1)


def extract_patches(
        view: np.ndarray,
        positions: np.ndarray
) -> PatchMatrix:
    positions = np.asarray(positions, dtype=int)
    return np.transpose(vectorise_patches(view[positions[:, 0], positions[:, 1]]))


def _search_bounds(
        key: Position,
        half: int,
        max_row: int,
        max_col: int
) -> tuple[int, int, int, int]:
    row, col = key
    return max(0, row - half), min(max_row, row + half), max(0, col - half), min(max_col, col + half)


def group_similar(
        image: ColorImage,
        key: Position,
        cfg: PipelineConfig,
        view: np.ndarray | None = None
) -> PatchGroup:
    """
    Collect the N patches closest to the key patch in squared Euclidean distance.

    Candidates are all patches whose top-left lies in the window (side cfg.window) centred on the key's
    top-left. When the window holds fewer than N candidates it grows by cfg.expand_step per side.
    Ties keep the row-major order and the key always comes first.

    Parameters:
        image: (H, W, 3) image.
        key: Top-left position of the key patch.
        cfg: Pipeline configuration (n_similar, patch_size, window, expand_step).
        view: Precomputed patch_view(image, cfg.patch_size); built on the fly when None.

    Returns:
        PatchGroup.
    """
    d, n_similar = cfg.patch_size, cfg.n_similar

    if view is None:
        view = patch_view(image, d)

    max_row, max_col = np.shape(view)[0] - 1, np.shape(view)[1] - 1
    row, col = key

    if not (0 <= row <= max_row and 0 <= col <= max_col):
        raise ValueError(f"Key position {key} does not hold a full patch")
    if n_similar > (max_row + 1) * (max_col + 1):
        raise ValueError(f"The image holds {(max_row + 1) * (max_col + 1)} patches, fewer than "
                         f"n_similar = {n_similar}")

    half = cfg.window // 2
    r0, r1, c0, c1 = _search_bounds(key, half, max_row, max_col)
    while (r1 - r0 + 1) * (c1 - c0 + 1) < n_similar:
        half += cfg.expand_step
        r0, r1, c0, c1 = _search_bounds(key, half, max_row, max_col)

    n_cols = c1 - c0 + 1
    candidates = vectorise_patches(view[r0:r1 + 1, c0:c1 + 1])
    candidates = np.reshape(candidates, (-1, np.shape(candidates)[-1]))

    key_index = (row - r0) * n_cols + (col - c0)
    distances = np.sum((candidates - candidates[key_index]) ** 2, axis=1)

    order = np.argsort(distances, kind="stable")
    order = np.concatenate(([key_index], order[order != key_index]))[:n_similar]

    members = np.column_stack((r0 + order // n_cols, c0 + order % n_cols))

    return PatchGroup(key=(int(row), int(col)), members=members, Y=np.transpose(candidates[order]))
