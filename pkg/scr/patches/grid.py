import numpy as np

from scr.utils.types_alias import Positions


def _check_grid_args(
        height: int,
        width: int,
        patch_size: int,
        stride: int
) -> None:
    if patch_size < 1 or stride < 1:
        raise ValueError(f'"patch_size" and "stride" must be positive but are {patch_size} and {stride}')
    if patch_size > min(height, width):
        raise ValueError(f"Patch size {patch_size} exceeds the image size {height}x{width}")


def axis_positions(
        length: int,
        patch_size: int,
        stride: int
) -> list[int]:
    """
    ceil((length - d) / s) starts (at least one) spaced by the stride; with two or more starts the last one
    is moved to length - d so the axis ends on a full patch.
    """
    n_positions = max(1, int(np.ceil((length - patch_size) / stride)))
    positions = [i * stride for i in range(n_positions)]

    if n_positions > 1:
        positions[-1] = length - patch_size

    return positions


def covering_axis_positions(
        length: int,
        patch_size: int,
        stride: int
) -> list[int]:
    """
    axis_positions plus the fewest extra starts needed to cover every index of the axis.
    """
    positions = []
    covered_until = 0  # first index not yet covered

    for start in axis_positions(length, patch_size, stride):
        while covered_until < start:  # gap (stride > patch size)
            positions.append(covered_until)
            covered_until += patch_size
        positions.append(start)
        covered_until = max(covered_until, start + patch_size)

    while covered_until < length:
        positions.append(min(covered_until, length - patch_size))
        covered_until = positions[-1] + patch_size

    return sorted(set(positions))


def key_patch_grid(
        height: int,
        width: int,
        patch_size: int,
        stride: int
) -> Positions:
    """
    Top-left positions of the key patches in row-major order.

    The count is ceil((H - d) / s) * ceil((W - d) / s) (one per axis when H = d or W = d).
    """
    _check_grid_args(height, width, patch_size, stride)

    rows = axis_positions(height, patch_size, stride)
    cols = axis_positions(width, patch_size, stride)

    return [(r, c) for r in rows for c in cols]


def covering_grid(
        height: int,
        width: int,
        patch_size: int,
        stride: int
) -> Positions:
    """
    key_patch_grid extended so the patches cover every pixel; row-major order.

    Extra keys are only added where the clamped grid leaves gaps, i.e. for a stride larger than the patch
    size or a single key on an axis longer than the patch.
    """
    _check_grid_args(height, width, patch_size, stride)

    rows = covering_axis_positions(height, patch_size, stride)
    cols = covering_axis_positions(width, patch_size, stride)

    return [(r, c) for r in rows for c in cols]
