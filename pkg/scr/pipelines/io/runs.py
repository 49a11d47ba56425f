from pathlib import Path

import pandas as pd

from scr.config.naming import MANIFEST_SUFFIX
from scr.config.presets import PipelineConfig
from scr.io.images import read_image, save_image_pair
from scr.io.manifest import build_manifest, save_manifest
from scr.io.reports import save_report
from scr.metrics.quality import quality_report, quantise
from scr.noise.synthesis import equivalent_sigma
from scr.pipelines.processing.benchmark import benchmark_directory
from scr.pipelines.processing.denoising import denoise, resolve_threads
from scr.pipelines.processing.synthesis import MapKind, synthesize_noisy, noise_summary
from scr.utils.timing import StageTimer
from scr.utils.types_alias import Manifest


def manifest_path(
        output_stem: str | Path
) -> Path:
    output_stem = Path(output_stem)
    return output_stem.with_name(output_stem.name + MANIFEST_SUFFIX)


def run_denoising(
        input_path: str | Path,
        output_stem: str | Path,
        sigma0: tuple[float, float, float],
        cfg: PipelineConfig,
        preset: str | None = None,
        reference_path: str | Path | None = None,
        threads: int | None = None,
        verbose: bool = True
) -> Manifest:
    """
    Denoise one image file and write <stem>.f32img, <stem>.png and <stem>.manifest.yaml.

    With a clean reference the manifest also holds PSNR/SSIM of the noisy input and of the float and
    8-bit outputs.
    """
    noisy = read_image(input_path)
    threads = resolve_threads(threads)
    timer = StageTimer()

    denoised = denoise(noisy, sigma0, cfg, threads=threads, timer=timer, verbose=verbose)
    float_path, png_path = save_image_pair(output_stem, denoised)

    metrics = {}
    if reference_path is not None:
        clean = read_image(reference_path)
        metrics = (quality_report(clean, noisy).as_dict(prefix="noisy_")
                   | quality_report(clean, denoised).as_dict(prefix="denoised_")
                   | quality_report(clean, quantise(denoised)).as_dict(prefix="denoised_q_"))

    manifest = build_manifest(
        "denoise",
        cfg=cfg,
        preset=preset,
        input=Path(input_path),
        reference=Path(reference_path) if reference_path is not None else None,
        output_stem=Path(output_stem),
        output={"float": float_path, "png": png_path},
        sigma=sigma0,
        equivalent_sigma=equivalent_sigma(sigma0),
        threads=threads,
        timing=timer.seconds,
        metrics=metrics,
    )
    save_manifest(manifest_path(output_stem), manifest)

    return manifest


def run_synthesis(
        input_path: str | Path,
        output_stem: str | Path,
        sigma0: tuple[float, float, float],
        map_kind: MapKind = "none",
        seed: int = 0
) -> Manifest:
    """
    Corrupt a clean image and write the exact noisy float image, an 8-bit preview and the manifest.
    """
    clean = read_image(input_path)
    noisy, spec = synthesize_noisy(clean, sigma0, map_kind=map_kind, seed=seed)
    float_path, png_path = save_image_pair(output_stem, noisy)

    manifest = build_manifest(
        "synth",
        input=Path(input_path),
        output_stem=Path(output_stem),
        output={"float": float_path, "png": png_path},
        noise=noise_summary(spec),
    )
    save_manifest(manifest_path(output_stem), manifest)

    return manifest


def run_benchmark(
        clean_dir: str | Path,
        report_path: str | Path,
        sigma0: tuple[float, float, float],
        cfg: PipelineConfig,
        preset: str | None = None,
        ablation_sweep: bool = False,
        map_kind: MapKind = "none",
        seed: int = 0,
        threads: int | None = None,
        verbose: bool = True
) -> pd.DataFrame:
    """
    Benchmark a directory of clean images and write the CSV report and its manifest.
    """
    threads = resolve_threads(threads)
    timer = StageTimer()

    with timer.stage("wall_clock"):
        df = benchmark_directory(clean_dir, sigma0, cfg, ablation_sweep=ablation_sweep, map_kind=map_kind,
                                 seed=seed, threads=threads, timer=timer, verbose=verbose)

    metadata = {
        "sigma": ",".join(f"{s:g}" for s in sigma0),
        "equivalent_sigma": f"{equivalent_sigma(sigma0):.6f}",
        "map": map_kind,
        "seed": seed,
        "preset": preset or "custom",
        "ablation_sweep": ablation_sweep,
    }
    save_report(report_path, df, metadata=metadata)

    report_path = Path(report_path)
    manifest = build_manifest(
        "bench",
        cfg=cfg,
        preset=preset,
        input=Path(clean_dir),
        output_stem=report_path.with_suffix(""),
        output={"report": report_path},
        ablation_sweep=ablation_sweep,
        sigma=sigma0,
        equivalent_sigma=equivalent_sigma(sigma0),
        map=map_kind,
        seed=seed,
        threads=threads,
        timing=timer.seconds,
    )
    save_manifest(manifest_path(report_path.with_suffix("")), manifest)

    return df
