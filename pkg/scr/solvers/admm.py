from dataclasses import dataclass, field

import numpy as np

from scr.config.numerics import WP
from scr.config.presets import SolverConfig
from scr.errors import SolverDivergenceError
from scr.lowrank.spectral import SpectralShrinkParams, tnf_prox


@dataclass(frozen=True)
class DiagonalWeights:
    """
    Diagonals of the row weight C (length 3 d^2) and the column weight S (length N).
    """
    c: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        for name in ("c", "s"):
            value = np.asarray(getattr(self, name), dtype=WP)
            if value.ndim != 1:
                raise ValueError(f'"{name}" must be a vector but has shape {np.shape(value)}')
            if not (np.all(np.isfinite(value)) and np.all(value > 0.)):
                raise ValueError(f'"{name}" must contain finite positive values only')
            object.__setattr__(self, name, value)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.c), len(self.s)

    def data_weight(self) -> np.ndarray:
        # 2 c_i^2 s_j^2, never forming the dense C or S
        return 2. * np.outer(self.c ** 2, self.s ** 2)

    @classmethod
    def identity(
            cls,
            shape: tuple[int, int]
    ) -> "DiagonalWeights":
        return cls(c=np.ones(shape[0], dtype=WP), s=np.ones(shape[1], dtype=WP))


@dataclass
class SolverState:
    X: np.ndarray
    Z: np.ndarray
    A: np.ndarray
    rho: float
    iter: int = 0

    @classmethod
    def zeros(
            cls,
            shape: tuple[int, int],
            rho0: float
    ) -> "SolverState":
        return cls(X=np.zeros(shape, dtype=WP), Z=np.zeros(shape, dtype=WP), A=np.zeros(shape, dtype=WP), rho=rho0)


@dataclass
class SolverTrace:
    """Per-iteration residuals and the penalty used in that iteration."""
    primal: list[float] = field(default_factory=list)  # ||X_k+1 - Z_k+1||_F
    delta_x: list[float] = field(default_factory=list)  # ||X_k+1 - X_k||_F
    delta_z: list[float] = field(default_factory=list)  # ||Z_k+1 - Z_k||_F
    rho: list[float] = field(default_factory=list)
    tolerance: float = np.nan
    converged: bool = False

    @property
    def n_iters(self) -> int:
        return len(self.primal)


def x_update(
        Y: np.ndarray,
        Z: np.ndarray,
        A: np.ndarray,
        weights: DiagonalWeights,
        rho: float,
        data_weight: np.ndarray | None = None
) -> np.ndarray:
    """
    Elementwise minimiser of ||C (Y - X) S||_F^2 + <A, X - Z> + rho / 2 ||X - Z||_F^2.

    Parameters:
        Y, Z, A: Matrices of identical shape (3 d^2, N).
        weights: Diagonals of C and S.
        rho: Current penalty (> 0).
        data_weight: Precomputed 2 c_i^2 s_j^2 (see DiagonalWeights.data_weight).

    Returns:
        X_ij = (2 c_i^2 s_j^2 Y_ij + rho Z_ij - A_ij) / (2 c_i^2 s_j^2 + rho)
    """
    if not rho > 0.:
        raise ValueError(f'"rho" must be positive but is {rho}')
    if not (np.shape(Y) == np.shape(Z) == np.shape(A) == weights.shape):
        raise ValueError(f"Shape mismatch: Y {np.shape(Y)}, Z {np.shape(Z)}, A {np.shape(A)}, "
                         f"weights {weights.shape}")

    if data_weight is None:
        data_weight = weights.data_weight()

    return (data_weight * Y + rho * Z - A) / (data_weight + rho)


def z_update(
        X: np.ndarray,
        A: np.ndarray,
        rho: float,
        cfg: SolverConfig
) -> np.ndarray:
    if not rho > 0.:
        raise ValueError(f'"rho" must be positive but is {rho}')

    params = SpectralShrinkParams(tau=cfg.lam / rho, t=cfg.t, alpha=cfg.alpha)
    return tnf_prox(X + A / rho, params)


def solve(
        Y: np.ndarray,
        weights: DiagonalWeights,
        cfg: SolverConfig,
        return_trace: bool = False
) -> np.ndarray | tuple[np.ndarray, SolverTrace]:
    """
    ADMM for min_X ||C (Y - X) S||_F^2 + lam * tnf_norm(X, t, alpha).

    Starts from X = Z = A = 0 and stops after cfg.max_iters iterations, or earlier once
    ||X - Z||_F, ||dX||_F and ||dZ||_F all fall to the tolerance.

    Parameters:
        Y: Patch matrix (3 d^2, N).
        weights: Diagonal weights matching Y.
        cfg: Solver configuration.
        return_trace: Also return the per-iteration SolverTrace.

    Returns:
        The final X (and the trace if requested).

    Raises:
        SolverDivergenceError: An iterate became non-finite.
    """
    Y = np.asarray(Y, dtype=WP)

    if Y.ndim != 2:
        raise ValueError(f'"Y" must be a 2D matrix but has shape {np.shape(Y)}')
    if not np.all(np.isfinite(Y)):
        raise ValueError('"Y" contains non-finite values')
    if np.shape(Y) != weights.shape:
        raise ValueError(f"Shape mismatch: Y {np.shape(Y)}, weights {weights.shape}")

    eps = cfg.tolerance(np.shape(Y))
    data_weight = weights.data_weight()
    state = SolverState.zeros(np.shape(Y), rho0=cfg.rho0)
    trace = SolverTrace(tolerance=eps) if return_trace else None

    while state.iter < cfg.max_iters:
        X_new = x_update(Y, state.Z, state.A, weights, state.rho, data_weight=data_weight)
        if not np.all(np.isfinite(X_new)):
            raise SolverDivergenceError(iteration=state.iter, quantity="X")

        try:
            Z_new = z_update(X_new, state.A, state.rho, cfg)
        except ValueError:  # non-finite prox input
            raise SolverDivergenceError(iteration=state.iter, quantity="Z")

        A_new = state.A + state.rho * (X_new - Z_new)
        if not np.all(np.isfinite(A_new)):
            raise SolverDivergenceError(iteration=state.iter, quantity="A")

        primal = np.linalg.norm(X_new - Z_new)
        delta_x = np.linalg.norm(X_new - state.X)
        delta_z = np.linalg.norm(Z_new - state.Z)

        if trace is not None:
            trace.primal.append(float(primal))
            trace.delta_x.append(float(delta_x))
            trace.delta_z.append(float(delta_z))
            trace.rho.append(state.rho)

        state.X, state.Z, state.A = X_new, Z_new, A_new
        state.iter += 1
        state.rho = cfg.rho(state.iter)

        if primal <= eps and delta_x <= eps and delta_z <= eps:
            if trace is not None:
                trace.converged = True
            break

    if return_trace:
        return state.X, trace

    return state.X
