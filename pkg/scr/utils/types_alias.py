from typing import TypeAlias
import numpy as np
from numpy.typing import NDArray

# ---------------------------------------------------------------------
# Images
# ---------------------------------------------------------------------

ColorImage: TypeAlias = NDArray[np.floating]   # (H, W, 3), channels (r, g, b), values on the 0..255 scale
NoiseMap: TypeAlias = NDArray[np.floating]     # (H, W), values in [0, 1]

# ---------------------------------------------------------------------
# Patches
# ---------------------------------------------------------------------

Position: TypeAlias = tuple[int, int]          # top-left (row, col) of a patch
Positions: TypeAlias = list[Position]
PatchMatrix: TypeAlias = NDArray[np.floating]  # (3 d^2, N), channel-blocked columns

# ---------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------

Timings: TypeAlias = dict[str, float]          # stage name -> seconds
Manifest: TypeAlias = dict[str, str | int | float | bool | None]
