from pathlib import Path

import numpy as np
import yaml

from scr.config.naming import MANIFEST_SCHEMA
from scr.config.presets import PipelineConfig, config_to_flat_dict, with_overrides
from scr.errors import ImageReadError
from scr.utils.filesystem import check_dir
from scr.utils.types_alias import Manifest


def _to_builtin(
        value
):
    if isinstance(value, Path):
        return value.as_posix()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, tuple | list | np.ndarray):
        return ",".join(str(_to_builtin(v)) for v in value)
    return value


def flatten(
        mapping: dict,
        prefix: str = ""
) -> Manifest:
    """{"a": {"b": 1}} -> {"a.b": 1}; sequences become comma-separated strings."""
    flat = {}
    for key, value in mapping.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat |= flatten(value, prefix=f"{name}.")
        else:
            flat[name] = _to_builtin(value)
    return flat


def build_manifest(
        command: str,
        cfg: PipelineConfig | None = None,
        **sections
) -> Manifest:
    manifest = {"schema": MANIFEST_SCHEMA, "command": command}

    if cfg is not None:
        manifest |= config_to_flat_dict(cfg)

    return manifest | flatten(sections)


def save_manifest(
        filename: str | Path,
        manifest: Manifest
) -> None:
    check_dir(filename, is_file=True)

    with open(filename, "w", encoding="utf-8") as f:
        yaml.safe_dump(flatten(manifest), f, sort_keys=False, default_flow_style=False)


def load_manifest(
        filename: str | Path
) -> Manifest:
    try:
        with open(filename, "r", encoding="utf-8") as f:
            manifest = yaml.safe_load(f)
    except OSError as error:
        raise ImageReadError(f'Cannot read manifest "{filename}": {error}') from error

    if not isinstance(manifest, dict):
        raise ValueError(f'"{filename}" does not hold a key-value mapping')

    return manifest


def load_config_file(
        filename: str | Path
) -> dict:
    """Flat YAML mapping of configuration field names to values (nested "solver" sections are flattened)."""
    return flatten(load_manifest(filename))


def config_from_manifest(
        manifest: Manifest,
        base: PipelineConfig | None = None
) -> PipelineConfig:
    """Rebuild the PipelineConfig recorded in a manifest; other keys are ignored."""
    fields = set(config_to_flat_dict(PipelineConfig()))
    recorded = {key: value for key, value in manifest.items() if key in fields}

    return with_overrides(base or PipelineConfig(), recorded)

