from pathlib import Path

import numpy as np
import pandas as pd

from scr.config.naming import REPORT_SCHEMA
from scr.utils.filesystem import check_dir

BENCH_COLUMNS = [
    "image",
    "model",
    "noisy_psnr",
    "noisy_ssim",
    "denoised_psnr",
    "denoised_ssim",
    "denoised_q_psnr",
    "denoised_q_ssim",
    "runtime_s",
]

AVERAGE_LABEL = "average"


def add_average_rows(
        df: pd.DataFrame
) -> pd.DataFrame:
    """Append one average row per model; inf values (identical images) stay inf in the mean."""
    numeric = [column for column in BENCH_COLUMNS if column not in ("image", "model")]
    averages = df.groupby("model", sort=False)[numeric].mean().reset_index()
    averages.insert(0, "image", AVERAGE_LABEL)

    return pd.concat([df, averages], ignore_index=True)[BENCH_COLUMNS]


def save_report(
        filename: str | Path,
        df: pd.DataFrame,
        metadata: dict | None = None
) -> None:
    """
    CSV with "# key: value" header lines (schema first) followed by the table in BENCH_COLUMNS order.
    """
    check_dir(filename, is_file=True)

    header = {"schema": REPORT_SCHEMA} | (metadata or {})

    with open(filename, "w", encoding="utf-8", newline="") as f:
        for key, value in header.items():
            f.write(f"# {key}: {value}\n")
        df[BENCH_COLUMNS].to_csv(f, index=False, float_format="%.6f")


def load_report(
        filename: str | Path
) -> tuple[pd.DataFrame, dict[str, str]]:
    metadata = {}
    with open(filename, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            metadata[key.strip()] = value.strip()

    df = pd.read_csv(filename, comment="#")
    df[BENCH_COLUMNS[2:]] = df[BENCH_COLUMNS[2:]].astype(np.float64)

    return df, metadata
