from dataclasses import dataclass

import numpy as np

from scr.config.numerics import WP, RND_SEED, RNG_NAME
from scr.utils.types_alias import ColorImage, NoiseMap


@dataclass(frozen=True)
class NoiseSpec:
    """
    Synthetic Gaussian noise description.

    Parameters:
        sigma0: Base standard deviation per channel (r, g, b).
        map: Optional (H, W) modulation with values in [0, 1]; the std at pixel (x, y) in channel c is map[x, y] * sigma0[c].
        seed: Seed of the per-row generators.
        map_name: Label of the map written to manifests ("peaks" or None).
    """
    sigma0: tuple[float, float, float]
    map: NoiseMap | None = None
    seed: int = RND_SEED
    map_name: str | None = None

    def __post_init__(self):
        sigma0 = tuple(float(s) for s in np.ravel(self.sigma0))
        if len(sigma0) != 3 or not all(np.isfinite(s) and s >= 0. for s in sigma0):
            raise ValueError(f'"sigma0" must hold three nonnegative values but is {self.sigma0}')
        object.__setattr__(self, "sigma0", sigma0)

        if self.map is not None:
            noise_map = np.asarray(self.map, dtype=WP)
            if noise_map.ndim != 2:
                raise ValueError(f'"map" must be 2D but has shape {np.shape(noise_map)}')
            if not (np.all(np.isfinite(noise_map)) and np.min(noise_map) >= 0. and np.max(noise_map) <= 1.):
                raise ValueError('"map" values must lie in [0, 1]')
            object.__setattr__(self, "map", noise_map)

        if int(self.seed) != self.seed or self.seed < 0:
            raise ValueError(f'"seed" must be a nonnegative integer but is {self.seed}')

    @property
    def rng_name(self) -> str:
        return RNG_NAME


def _row_generators(
        seed: int,
        n_rows: int
) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(child)) for child in np.random.SeedSequence(seed).spawn(n_rows)]


def add_gaussian(
        image: ColorImage,
        spec: NoiseSpec
) -> ColorImage:
    """
    Add zero-mean Gaussian noise with per-channel (and optionally per-pixel) std.

    Every image row has its own generator spawned from the seed, so the noise does not
    depend on how rows are scheduled. The result is not clamped.
    """
    image = np.asarray(image, dtype=WP)

    if image.ndim != 3 or np.shape(image)[2] != 3:
        raise ValueError(f'"image" must have shape (H, W, 3) but has {np.shape(image)}')

    height, width, _ = np.shape(image)

    if spec.map is None:
        modulation = np.ones((height, width), dtype=WP)
    elif np.shape(spec.map) != (height, width):
        raise ValueError(f"Noise map shape {np.shape(spec.map)} does not match the image shape {(height, width)}")
    else:
        modulation = spec.map

    standard = np.stack([rng.standard_normal((width, 3)) for rng in _row_generators(spec.seed, height)])

    return image + modulation[..., np.newaxis] * np.asarray(spec.sigma0, dtype=WP) * standard


def peaks_map(
        n: int
) -> NoiseMap:
    """
    |peaks(x, y)| on an n x n grid over [-3, 3]^2 (inclusive endpoints), divided by its maximum.

    x runs along columns and y along rows.
    """
    if int(n) != n or n < 2:
        raise ValueError(f'"n" must be an integer of at least 2 but is {n}')

    grid = np.linspace(-3., 3., int(n))
    x, y = np.meshgrid(grid, grid)

    peaks = (3. * (1. - x) ** 2 * np.exp(-x ** 2 - (y + 1.) ** 2)
             - 10. * (x / 5. - x ** 3 - y ** 5) * np.exp(-x ** 2 - y ** 2)
             - 1. / 3. * np.exp(-(x + 1.) ** 2 - y ** 2))

    peaks = np.abs(peaks)
    return peaks / np.max(peaks)


def peaks_map_like(
        height: int,
        width: int
) -> NoiseMap:
    # generated on the longer side and cropped
    return peaks_map(max(height, width, 2))[:height, :width]


def equivalent_sigma(
        sigma0: np.ndarray | list[float] | tuple[float, ...]
) -> float:
    sigma0 = np.asarray(sigma0, dtype=WP)

    if np.any(sigma0 < 0.):
        raise ValueError(f'"sigma0" must be nonnegative but is {sigma0}')

    return float(np.sqrt(np.mean(sigma0 ** 2)))


def map_mean_sigma(
        sigma_c0: float,
        noise_map: NoiseMap
) -> float:
    return float(sigma_c0 * np.mean(noise_map))
