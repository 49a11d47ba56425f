from typing import Literal

import numpy as np

from scr.config.numerics import RND_SEED
from scr.noise.synthesis import NoiseSpec, add_gaussian, peaks_map_like, equivalent_sigma, map_mean_sigma
from scr.utils.types_alias import ColorImage

MapKind = Literal["none", "peaks"]
MAP_KINDS: tuple[str, ...] = ("none", "peaks")


def make_noise_spec(
        shape: tuple[int, ...],
        sigma0: tuple[float, float, float],
        map_kind: MapKind = "none",
        seed: int = RND_SEED
) -> NoiseSpec:
    """
    Spatially invariant noise ("none") or noise modulated by the normalised peaks surface ("peaks").
    """
    if map_kind == "none":
        return NoiseSpec(sigma0=sigma0, seed=seed)
    if map_kind == "peaks":
        return NoiseSpec(sigma0=sigma0, map=peaks_map_like(shape[0], shape[1]), seed=seed, map_name="peaks")

    raise ValueError(f"Unknown noise map '{map_kind}'. Available options are {MAP_KINDS}.")


def noise_summary(
        spec: NoiseSpec
) -> dict:
    """Scalar noise levels written to manifests and report headers."""
    summary = {
        "sigma": spec.sigma0,
        "equivalent_sigma": equivalent_sigma(spec.sigma0),
        "map": spec.map_name or "none",
        "seed": spec.seed,
        "rng": spec.rng_name,
    }

    if spec.map is not None:
        summary["map_mean"] = float(np.mean(spec.map))
        summary |= {f"map_mean_sigma_{channel}": map_mean_sigma(sigma, spec.map)
                    for channel, sigma in zip("rgb", spec.sigma0)}

    return summary


def synthesize_noisy(
        clean: ColorImage,
        sigma0: tuple[float, float, float],
        map_kind: MapKind = "none",
        seed: int = RND_SEED
) -> tuple[ColorImage, NoiseSpec]:
    spec = make_noise_spec(np.shape(clean), sigma0, map_kind=map_kind, seed=seed)
    return add_gaussian(clean, spec), spec
