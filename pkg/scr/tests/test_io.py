import numpy as np
import pandas as pd
import pytest
from skimage import io as skio

from scr.config.naming import FLOAT_MAGIC, MANIFEST_SCHEMA, REPORT_SCHEMA
from scr.config.presets import get_preset, config_to_flat_dict
from scr.errors import ImageReadError
from scr.io.float_container import save_float_image, load_float_image
from scr.io.images import read_image, save_image_pair
from scr.io.manifest import build_manifest, save_manifest, load_manifest, config_from_manifest, load_config_file
from scr.io.reports import BENCH_COLUMNS, add_average_rows, save_report, load_report
from scr.utils.filesystem import list_images, stem_of


def test_float_container_layout(tmp_path) -> None:
    image = np.arange(2 * 3 * 3, dtype=float).reshape(2, 3, 3) - 4.5
    filename = tmp_path / "x.f32img"

    save_float_image(filename, image)
    payload = filename.read_bytes()

    assert payload.startswith(FLOAT_MAGIC)
    assert np.frombuffer(payload, dtype="<u4", count=3, offset=len(FLOAT_MAGIC)).tolist() == [2, 3, 3]
    assert len(payload) == len(FLOAT_MAGIC) + 12 + image.size * 4
    np.testing.assert_array_equal(load_float_image(filename), image)


def test_float_container_rejects_corrupt_files(tmp_path) -> None:
    bad_magic = tmp_path / "bad.f32img"
    bad_magic.write_bytes(b"NOTANIMG" + bytes(20))
    with pytest.raises(ImageReadError):
        load_float_image(bad_magic)

    truncated = tmp_path / "short.f32img"
    save_float_image(truncated, np.zeros((4, 4, 3)))
    truncated.write_bytes(truncated.read_bytes()[:-4])
    with pytest.raises(ImageReadError):
        load_float_image(truncated)

    with pytest.raises(ImageReadError):
        load_float_image(tmp_path / "missing.f32img")


def test_read_image_conversions(tmp_path) -> None:
    grey = (np.arange(64, dtype=np.uint8) * 3).reshape(8, 8)
    skio.imsave(tmp_path / "grey.png", grey, check_contrast=False)
    image = read_image(tmp_path / "grey.png")
    assert image.shape == (8, 8, 3) and image.dtype == np.float64
    np.testing.assert_array_equal(image[..., 2], grey)

    rgba = np.zeros((5, 6, 4), dtype=np.uint8)
    rgba[..., 0], rgba[..., 3] = 200, 255
    skio.imsave(tmp_path / "rgba.png", rgba, check_contrast=False)
    image = read_image(tmp_path / "rgba.png")
    assert image.shape == (5, 6, 3)
    np.testing.assert_array_equal(image[..., 0], 200.)


def test_read_image_errors(tmp_path) -> None:
    with pytest.raises(ImageReadError):
        read_image(tmp_path / "missing.png")

    broken = tmp_path / "broken.png"
    broken.write_bytes(b"definitely not a png")
    with pytest.raises(ImageReadError):
        read_image(broken)


def test_save_image_pair(tmp_path) -> None:
    image = np.random.default_rng(0).uniform(-20., 280., (6, 7, 3))
    float_path, png_path = save_image_pair(tmp_path / "out" / "noisy", image)

    assert float_path.name == "noisy.f32img" and png_path.name == "noisy.png"
    np.testing.assert_allclose(read_image(float_path), image.astype(np.float32))

    preview = read_image(png_path)
    assert preview.min() >= 0. and preview.max() <= 255.
    np.testing.assert_array_equal(preview, np.clip(np.round(image), 0., 255.))


def test_list_images_and_stems(tmp_path) -> None:
    for name in ("b.png", "a.f32img", "notes.txt"):
        (tmp_path / name).write_bytes(b"")

    assert [p.name for p in list_images(tmp_path)] == ["a.f32img", "b.png"]
    assert list_images(tmp_path / "absent") == []
    assert stem_of("dir/kodim01.f32img") == "kodim01"


def test_manifest_round_trip(tmp_path) -> None:
    cfg = get_preset("table5a")
    manifest = build_manifest("denoise", cfg=cfg, sigma=(20., 35., 5.), timing={"solving": 1.5},
                              metrics={"psnr": np.inf}, output={"png": tmp_path / "x.png"})

    filename = tmp_path / "run.manifest.yaml"
    save_manifest(filename, manifest)
    loaded = load_manifest(filename)

    assert loaded["schema"] == MANIFEST_SCHEMA
    assert loaded["sigma"] == "20.0,35.0,5.0"
    assert loaded["timing.solving"] == 1.5
    assert loaded["metrics.psnr"] == np.inf
    assert loaded["solver.lam"] == 0.8 and loaded["theta"] == 3
    assert config_from_manifest(loaded) == cfg


def test_load_config_file_flattens_solver_section(tmp_path) -> None:
    filename = tmp_path / "cfg.yaml"
    filename.write_text("theta: 4\nsolver:\n  lam: 0.5\n  t: 1\n")

    assert load_config_file(filename) == {"theta": 4, "solver.lam": 0.5, "solver.t": 1}


def test_report_round_trip(tmp_path) -> None:
    rows = [
        {"image": "a", "model": "full", "noisy_psnr": 20., "noisy_ssim": 0.5, "denoised_psnr": 30.,
         "denoised_ssim": 0.8, "denoised_q_psnr": 29.9, "denoised_q_ssim": 0.79, "runtime_s": 1.},
        {"image": "b", "model": "full", "noisy_psnr": np.inf, "noisy_ssim": 1., "denoised_psnr": np.inf,
         "denoised_ssim": 1., "denoised_q_psnr": np.inf, "denoised_q_ssim": 1., "runtime_s": 3.},
    ]
    df = add_average_rows(pd.DataFrame(rows))

    assert list(df.columns) == BENCH_COLUMNS
    assert df.iloc[-1]["image"] == "average" and df.iloc[-1]["runtime_s"] == 2.

    filename = tmp_path / "report.csv"
    save_report(filename, df, metadata={"equivalent_sigma": "34.156503"})

    text = filename.read_text()
    assert text.splitlines()[0] == f"# schema: {REPORT_SCHEMA}"
    assert "inf" in text

    loaded, metadata = load_report(filename)
    assert metadata["equivalent_sigma"] == "34.156503"
    assert list(loaded.columns) == BENCH_COLUMNS
    assert np.isinf(loaded.loc[1, "denoised_psnr"])
    assert loaded.loc[0, "denoised_psnr"] == 30.


def test_config_flat_dict_keys() -> None:
    flat = config_to_flat_dict(get_preset("table5d"))
    assert flat["solver.t"] == 0 and flat["solver.lam"] == 2.3 and flat["window"] == 31 and flat["delta"] == 0.1
