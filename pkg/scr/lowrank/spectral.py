import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import svd, svdvals, LinAlgError

from scr.config.numerics import WP


@dataclass(frozen=True)
class SpectralShrinkParams:
    """
    Parameters of the truncated nuclear-minus-Frobenius proximal map.

    Parameters:
        tau: Prox weight (lambda / rho in the ADMM solver).
        t: Number of leading singular values excluded from the penalty.
        alpha: Coefficient of the truncated Frobenius term.
    """
    tau: float
    t: int
    alpha: float

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau >= 0.):
            raise ValueError(f'"tau" must be a non-negative number but is {self.tau}')
        if int(self.t) != self.t or self.t < 0:
            raise ValueError(f'"t" must be a non-negative integer but is {self.t}')
        if not (np.isfinite(self.alpha) and self.alpha >= 0.):
            raise ValueError(f'"alpha" must be a non-negative number but is {self.alpha}')


@dataclass(frozen=True)
class SvdTriple:
    U: np.ndarray  # (m, k)
    singular_values: np.ndarray  # (k,), nonincreasing
    V: np.ndarray  # (n, k)

    def reconstruct(
            self,
            singular_values: np.ndarray | None = None
    ) -> np.ndarray:
        if singular_values is None:
            singular_values = self.singular_values
        return (self.U * singular_values) @ self.V.T


def _check_matrix(
        M: np.ndarray,
        name: str = "M"
) -> np.ndarray:
    M = np.asarray(M, dtype=WP)

    if M.ndim != 2:
        raise ValueError(f'"{name}" must be a 2D matrix but has shape {np.shape(M)}')
    if not np.all(np.isfinite(M)):
        raise ValueError(f'"{name}" contains non-finite values')

    return M


def thin_svd(
        M: np.ndarray
) -> SvdTriple:
    """
    Thin SVD with k = min(m, n).

    The divide-and-conquer driver is tried first; the QR-iteration driver is
    the fallback when it fails to converge.
    """
    M = _check_matrix(M)

    try:
        U, s, Vh = svd(M, full_matrices=False, lapack_driver="gesdd", check_finite=False)
    except LinAlgError:
        U, s, Vh = svd(M, full_matrices=False, lapack_driver="gesvd", check_finite=False)

    return SvdTriple(U=U, singular_values=s, V=Vh.T)


def soft_shrink(
        x: np.ndarray,
        tau: float
) -> np.ndarray:
    return np.maximum(np.asarray(x, dtype=WP) - tau, 0.)


def tnf_norm(
        M: np.ndarray,
        t: int,
        alpha: float
) -> float:
    """
    Truncated nuclear norm minus alpha times the truncated Frobenius norm.

    Parameters:
        M: Real matrix.
        t: Number of leading singular values left out of both sums.
        alpha: Frobenius coefficient.

    Returns:
        sum_{i>t} s_i - alpha * sqrt(sum_{i>t} s_i^2); 0 when t >= min(m, n). The value can be negative.
    """
    SpectralShrinkParams(tau=0., t=t, alpha=alpha)  # argument check only
    M = _check_matrix(M)

    tail = svdvals(M, check_finite=False)[t:]

    if tail.size == 0:
        return 0.

    return float(np.sum(tail) - alpha * np.sqrt(np.sum(tail ** 2)))


def shrink_spectrum(
        singular_values: np.ndarray,
        params: SpectralShrinkParams,
        warn_on_reorder: bool = False
) -> np.ndarray:
    """
    Closed-form minimiser of the tNF prox on the singular values.

    The leading t values are kept. The tail is soft-thresholded by tau and then
    scaled by (1 + alpha * tau / ||tail_shrunk||_2). When every tail value is
    below tau the shrunk norm is zero and the tail is set to zero.

    Parameters:
        singular_values: Nonincreasing, nonnegative vector.
        params: tau, t and alpha.
        warn_on_reorder: Warn when the first scaled tail value exceeds the last kept one.

    Returns:
        New singular values in the original (unsorted after scaling) order.
    """
    sigma = np.array(singular_values, dtype=WP)
    t = params.t

    if t >= np.size(sigma) or params.tau == 0.:
        return sigma

    tail = soft_shrink(sigma[t:], params.tau)
    tail_norm = np.linalg.norm(tail)

    if tail_norm == 0.:
        sigma[t:] = 0.
    else:
        sigma[t:] = (1. + params.alpha * params.tau / tail_norm) * tail

    if warn_on_reorder and t > 0 and sigma[t] > sigma[t - 1]:
        warnings.warn(f"Shrunk singular value {t + 1} ({sigma[t]:.4g}) exceeds the preserved value {t} "
                      f"({sigma[t - 1]:.4g}).", RuntimeWarning)

    return sigma


def tnf_prox(
        B: np.ndarray,
        params: SpectralShrinkParams,
        warn_on_reorder: bool = False
) -> np.ndarray:
    """
    Proximal operator argmin_Z 0.5 ||Z - B||_F^2 + tau * tnf_norm(Z, t, alpha).

    Parameters:
        B: Real (m, n) matrix.
        params: tau, t and alpha.
        warn_on_reorder: Passed to shrink_spectrum.

    Returns:
        U_B diag(shrunk singular values) V_B^T. B itself (as a copy) when tau = 0 or t >= min(m, n).
    """
    B = _check_matrix(B, name="B")

    if params.tau == 0. or params.t >= min(np.shape(B)):
        return B.copy()

    triple = thin_svd(B)
    shrunk = shrink_spectrum(triple.singular_values, params, warn_on_reorder=warn_on_reorder)

    return triple.reconstruct(shrunk)


def prox_objective(
        Z: np.ndarray,
        B: np.ndarray,
        params: SpectralShrinkParams
) -> float:
    Z, B = _check_matrix(Z, name="Z"), _check_matrix(B, name="B")

    if np.shape(Z) != np.shape(B):
        raise ValueError(f'"Z" and "B" must have the same shape but have {np.shape(Z)} and {np.shape(B)}')

    return 0.5 * float(np.sum((Z - B) ** 2)) + params.tau * tnf_norm(Z, t=params.t, alpha=params.alpha)
