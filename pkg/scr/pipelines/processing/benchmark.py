import time
from dataclasses import replace
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from scr.config.presets import PipelineConfig, ABLATION_MODES
from scr.errors import ImageReadError
from scr.io.images import read_image
from scr.io.reports import BENCH_COLUMNS, add_average_rows
from scr.metrics.quality import quality_report, quantise
from scr.pipelines.processing.denoising import denoise
from scr.pipelines.processing.synthesis import MapKind, synthesize_noisy
from scr.utils.filesystem import list_images, stem_of
from scr.utils.timing import StageTimer
from scr.utils.types_alias import ColorImage


def benchmark_image(
        name: str,
        clean: ColorImage,
        sigma0: tuple[float, float, float],
        cfg: PipelineConfig,
        models: tuple[str, ...] = ("full",),
        map_kind: MapKind = "none",
        seed: int = 0,
        threads: int | None = None,
        timer: StageTimer | None = None
) -> list[dict]:
    """
    Corrupt one clean image and denoise it with each model; one result row per model.
    """
    noisy, _ = synthesize_noisy(clean, sigma0, map_kind=map_kind, seed=seed)
    noisy_report = quality_report(clean, noisy)

    rows = []
    for model in models:
        start = time.perf_counter()
        denoised = denoise(noisy, sigma0, replace(cfg, ablation=model), threads=threads, timer=timer)
        runtime = time.perf_counter() - start

        report = quality_report(clean, denoised)
        quantised = quality_report(clean, quantise(denoised))

        rows.append({
            "image": name,
            "model": model,
            "noisy_psnr": noisy_report.psnr,
            "noisy_ssim": noisy_report.ssim,
            "denoised_psnr": report.psnr,
            "denoised_ssim": report.ssim,
            "denoised_q_psnr": quantised.psnr,
            "denoised_q_ssim": quantised.ssim,
            "runtime_s": runtime,
        })

    return rows


def benchmark_directory(
        clean_dir: str | Path,
        sigma0: tuple[float, float, float],
        cfg: PipelineConfig,
        ablation_sweep: bool = False,
        map_kind: MapKind = "none",
        seed: int = 0,
        threads: int | None = None,
        timer: StageTimer | None = None,
        verbose: bool = True
) -> pd.DataFrame:
    """
    Benchmark every clean image of a directory.

    Parameters:
        clean_dir: Directory with the clean images.
        sigma0: Channel noise levels of the synthetic corruption.
        cfg: Pipeline configuration (its ablation mode is used unless ablation_sweep is set).
        ablation_sweep: Run the full model and both single-weight variants on every image.
        map_kind: "none" or "peaks".
        seed: Noise seed (the same for every image).
        threads: Worker count for the denoiser.
        timer: Receives the summed stage timings.
        verbose: Progress bar over images.

    Returns:
        DataFrame in BENCH_COLUMNS order with one average row per model appended.

    Raises:
        ImageReadError: The directory holds no readable image.
    """
    files = list_images(clean_dir)

    if not files:
        raise ImageReadError(f'No images found in "{clean_dir}"')

    models = ABLATION_MODES if ablation_sweep else (cfg.ablation,)

    rows = []
    for filename in tqdm(files, desc="Benchmark", disable=not verbose):
        rows += benchmark_image(stem_of(filename), read_image(filename), sigma0, cfg, models=models,
                                map_kind=map_kind, seed=seed, threads=threads, timer=timer)

    return add_average_rows(pd.DataFrame(rows, columns=BENCH_COLUMNS))
