import argparse
import sys
from dataclasses import fields

from scr.config.presets import (PipelineConfig, SolverConfig, PRESET_NAMES, ABLATION_MODES, get_preset,
                                with_overrides)
from scr.errors import ImageReadError, SolverDivergenceError

EXIT_OK = 0
EXIT_UNREADABLE = 2
EXIT_CONFIG = 3
EXIT_DIVERGED = 4

# flag -> (type, help)
_PIPELINE_FLAGS = {
    "theta": (int, "Number of outer iterations."),
    "n_similar": (int, "Number of similar patches per group (N)."),
    "patch_size": (int, "Patch side (d)."),
    "stride": (int, "Key-patch stride (s)."),
    "window": (int, "Side of the search window (odd)."),
    "delta": (float, "Iterative-regularisation coefficient in [0, 1)."),
}
_SOLVER_FLAGS = {
    "lam": (float, "Regularisation weight lambda."),
    "t": (int, "Number of leading singular values left unpenalised."),
    "alpha": (float, "Coefficient of the truncated Frobenius term."),
    "rho0": (float, "Initial ADMM penalty."),
    "mu": (float, "ADMM penalty growth factor (> 1)."),
    "max_iters": (int, "Maximum number of ADMM iterations (K)."),
    "eps": (float, "ADMM stopping tolerance (default scales with the patch-matrix size)."),
}


def add_config_arguments(
        parser: argparse.ArgumentParser,
        preset_default: str | None = "table5b",
        with_ablation: bool = True
) -> None:
    """
    Preset, YAML config file and per-field overrides. Override flags default to None (= keep the preset value).
    """
    config = parser.add_argument_group("denoiser configuration")
    config.add_argument(
        "--preset",
        type=str,
        choices=PRESET_NAMES,
        default=preset_default,
        nargs=1,
        help="Parameter preset."
    )
    config.add_argument(
        "--config",
        type=str,
        default=None,
        nargs=1,
        help="YAML file with a flat mapping of configuration fields (applied after the preset)."
    )
    for name, (kind, help_str) in _PIPELINE_FLAGS.items():
        config.add_argument(f"--{name}", type=kind, default=None, nargs=1, help=help_str)

    if with_ablation:
        config.add_argument(
            "--ablation",
            type=str,
            choices=ABLATION_MODES,
            default=None,
            nargs=1,
            help="Weighting model: both weights, without C or without S."
        )
    config.add_argument(
        "--no_center_groups",
        action="store_true",
        help="Do not remove the group mean before solving."
    )

    solver = parser.add_argument_group("ADMM solver")
    for name, (kind, help_str) in _SOLVER_FLAGS.items():
        solver.add_argument(f"--{name}", type=kind, default=None, nargs=1, help=help_str)

    parallel = parser.add_argument_group("parallelism")
    parallel.add_argument(
        "--threads",
        type=int,
        default=None,
        nargs=1,
        help="Worker threads (default: the DTNFM_THREADS environment variable, else the CPU count)."
    )


def config_from_args(
        args: argparse.Namespace,
        file_overrides: dict | None = None,
        base: PipelineConfig | None = None
) -> PipelineConfig:
    """Preset (or "base"), then the YAML overrides, then the command-line flags."""
    if base is not None:
        cfg = base
    else:
        cfg = get_preset(args.preset) if args.preset is not None else PipelineConfig()
    cfg = with_overrides(cfg, file_overrides)

    names = [*_PIPELINE_FLAGS, *(f.name for f in fields(SolverConfig) if f.name in _SOLVER_FLAGS), "ablation"]
    flags = {name: getattr(args, name, None) for name in names}
    if args.no_center_groups:
        flags["center_groups"] = False

    return with_overrides(cfg, flags)


def exit_code_for(
        error: Exception
) -> int:
    if isinstance(error, ImageReadError):
        return EXIT_UNREADABLE
    if isinstance(error, SolverDivergenceError):
        return EXIT_DIVERGED
    return EXIT_CONFIG


def report_error(
        prog: str,
        error: Exception
) -> int:
    print(f"{prog}: error: {error}", file=sys.stderr)
    return exit_code_for(error)
