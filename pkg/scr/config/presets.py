from dataclasses import dataclass, field, fields, replace, asdict
from typing import Literal

import numpy as np

from scr.config.numerics import EPS_SCALE, EPS_P, SIGMA_FLOOR

AblationMode = Literal["full", "drop_C", "drop_S"]
ABLATION_MODES: tuple[str, ...] = ("full", "drop_C", "drop_S")


@dataclass(frozen=True)
class SolverConfig:
    """
    Hyper-parameters of the ADMM solver for one patch matrix.

    Parameters:
        lam: Regularisation weight lambda (> 0).
        t: Number of leading singular values left unpenalised (>= 0).
        alpha: Coefficient of the truncated Frobenius term (>= 0).
        rho0: Initial penalty (> 0).
        mu: Penalty growth factor (> 1), rho_k = rho0 * mu**k.
        max_iters: Iteration cap K (> 0).
        eps: Stopping tolerance; None selects EPS_SCALE * sqrt(size of the matrix).
    """
    lam: float = 1.
    t: int = 2
    alpha: float = 1.8
    rho0: float = 0.5
    mu: float = 1.002
    max_iters: int = 10
    eps: float | None = None

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0.):
            raise ValueError(f'"lam" must be a positive number but is {self.lam}')
        if int(self.t) != self.t or self.t < 0:
            raise ValueError(f'"t" must be a non-negative integer but is {self.t}')
        if not (np.isfinite(self.alpha) and self.alpha >= 0.):
            raise ValueError(f'"alpha" must be a non-negative number but is {self.alpha}')
        if not (np.isfinite(self.rho0) and self.rho0 > 0.):
            raise ValueError(f'"rho0" must be a positive number but is {self.rho0}')
        if not (np.isfinite(self.mu) and self.mu > 1.):
            raise ValueError(f'"mu" must be larger than 1 but is {self.mu}')
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f'"max_iters" must be a positive integer but is {self.max_iters}')
        if self.eps is not None and not (np.isfinite(self.eps) and self.eps > 0.):
            raise ValueError(f'"eps" must be a positive number or None but is {self.eps}')

    def tolerance(self, shape: tuple[int, int]) -> float:
        if self.eps is not None:
            return float(self.eps)
        return EPS_SCALE * float(np.sqrt(shape[0] * shape[1]))

    def rho(self, iteration: int) -> float:
        return self.rho0 * self.mu ** iteration


@dataclass(frozen=True)
class PipelineConfig:
    """
    Hyper-parameters of the outer denoising loop.

    Parameters:
        theta: Number of outer iterations.
        n_similar: Group size N (number of similar patches per key patch).
        patch_size: Patch side d.
        stride: Key-patch spacing s.
        window: Side of the (odd) search window centred on the key patch.
        delta: Iterative-regularisation coefficient in [0, 1).
        solver: ADMM settings.
        ablation: "full", "drop_C" or "drop_S".
        center_groups: Subtract the group mean before solving and add it back afterwards (required for useful
            output; switching it off is for diagnostics).
        expand_step: Window growth per side when too few candidates exist near borders.
        sigma_floor: Floor applied to every sigma estimate.
        eps_p: Small value of the relative-weight formula.
    """
    theta: int = 2
    n_similar: int = 60
    patch_size: int = 6
    stride: int = 5
    window: int = 31
    delta: float = 0.1
    solver: SolverConfig = field(default_factory=SolverConfig)
    ablation: AblationMode = "full"
    center_groups: bool = True
    expand_step: int = 10
    sigma_floor: float = SIGMA_FLOOR
    eps_p: float = EPS_P

    def __post_init__(self):
        for name in ("theta", "n_similar", "patch_size", "stride", "window", "expand_step"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f'"{name}" must be a positive integer but is {value}')
        if self.window % 2 == 0:
            raise ValueError(f'"window" must be odd but is {self.window}')
        if self.window < self.patch_size:
            raise ValueError(f'"window" ({self.window}) must not be smaller than "patch_size" ({self.patch_size})')
        if not 0. <= self.delta < 1.:
            raise ValueError(f'"delta" must lie in [0, 1) but is {self.delta}')
        if self.ablation not in ABLATION_MODES:
            raise ValueError(f"Unknown ablation mode '{self.ablation}'. Available options are {ABLATION_MODES}.")
        if not self.sigma_floor > 0.:
            raise ValueError(f'"sigma_floor" must be positive but is {self.sigma_floor}')
        if not self.eps_p > 0.:
            raise ValueError(f'"eps_p" must be positive but is {self.eps_p}')


_PRESET_REGISTRY = {
    # sigma = [20, 35, 5]
    "table5a": PipelineConfig(
        theta=3, n_similar=60, patch_size=6, stride=5,
        solver=SolverConfig(lam=0.80, t=2, alpha=1.80, rho0=0.30, mu=1.002, max_iters=10),
    ),
    # sigma = [30, 10, 50]
    "table5b": PipelineConfig(
        theta=2, n_similar=60, patch_size=6, stride=5,
        solver=SolverConfig(lam=1.00, t=2, alpha=1.80, rho0=0.50, mu=1.002, max_iters=10),
    ),
    # spatially variant noise; theta not tabulated
    "table5c": PipelineConfig(
        theta=2, n_similar=60, patch_size=4, stride=3,
        solver=SolverConfig(lam=0.80, t=2, alpha=1.50, rho0=0.45, mu=1.002, max_iters=10),
    ),
    # real-world noise; theta not tabulated
    "table5d": PipelineConfig(
        theta=2, n_similar=60, patch_size=6, stride=5,
        solver=SolverConfig(lam=2.30, t=0, alpha=2.00, rho0=0.90, mu=1.002, max_iters=10),
    ),
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESET_REGISTRY)

_SOLVER_FIELDS = {f.name for f in fields(SolverConfig)}
_PIPELINE_FIELDS = {f.name for f in fields(PipelineConfig)} - {"solver"}


def get_preset(name: str) -> PipelineConfig:
    try:
        return _PRESET_REGISTRY[name]
    except KeyError:
        raise ValueError(f"Unknown preset: {name}. Available options are {PRESET_NAMES}.")


def with_overrides(
        config: PipelineConfig,
        overrides: dict | None = None
) -> PipelineConfig:
    """
    Return a copy of "config" with fields replaced from a flat mapping.

    Solver fields may be given bare ("lam") or prefixed ("solver.lam"). None values are ignored.
    """
    if not overrides:
        return config

    solver_kw, pipeline_kw = {}, {}
    for key, value in overrides.items():
        if value is None:
            continue
        name = key.removeprefix("solver.")
        if name in _SOLVER_FIELDS:
            solver_kw[name] = value
        elif name in _PIPELINE_FIELDS and not key.startswith("solver."):
            pipeline_kw[name] = value
        else:
            raise ValueError(f"Unknown configuration field '{key}'")

    solver = replace(config.solver, **solver_kw) if solver_kw else config.solver
    return replace(config, solver=solver, **pipeline_kw)


def config_to_flat_dict(config: PipelineConfig) -> dict:
    """Flatten a PipelineConfig to {"theta": ..., "solver.lam": ...}."""
    flat = {}
    for key, value in asdict(config).items():
        if key == "solver":
            flat |= {f"solver.{k}": v for k, v in value.items()}
        else:
            flat[key] = value
    return flat


def config_from_flat_dict(flat: dict) -> PipelineConfig:
    return with_overrides(PipelineConfig(), flat)
