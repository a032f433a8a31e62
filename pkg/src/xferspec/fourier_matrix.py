"""Finite Fourier-truncation matrices of the composition and transfer operators."""

from __future__ import annotations

import json
import math
from typing import NamedTuple

import numpy as np

from .transfer import SpectralInterval
from .weights import TrigPolynomial, cos_power, fourier_coefficients, sine_envelopes

__all__ = [
    "ConvergenceError",
    "EigenResult",
    "truncation_order",
    "composition_matrix_T",
    "transfer_matrix_L",
    "symmetric_matrix_C",
    "dominant_eigenvalue",
    "matrix_radius",
    "c_even_exact",
    "In_coefficient_recursion",
    "sine_upper_bound",
    "sine_lower_envelope_radius",
    "matrix_to_json",
]


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, residual: float):
        super().__init__(f"{msg} (last residual {residual:.3e})")
        self.residual = residual


class EigenResult(NamedTuple):
    value: float
    vector: np.ndarray
    residual: float


def truncation_order(N: int, d: int) -> int:
    """``K = floor((N-1)/(d-1))``, the size of the invariant central block."""
    return max(0, (N - 1) // (d - 1))


def composition_matrix_T(coeffs: TrigPolynomial, d: int, K: int) -> np.ndarray:
    """Central ``(2K+1)``-block of ``(a_{k - d l})``, rows ``k`` and columns ``l`` in ``-K..K``."""
    idx = np.arange(-K, K + 1)
    return np.vectorize(coeffs.a, otypes=[float])(idx[:, None] - d * idx[None, :])


def transfer_matrix_L(coeffs: TrigPolynomial, d: int, K: int) -> np.ndarray:
    """Central block of ``(a_{d k - l})``, the matrix of ``L`` on ``e^{2 pi i k t}``."""
    idx = np.arange(-K, K + 1)
    return np.vectorize(coeffs.a, otypes=[float])(d * idx[:, None] - idx[None, :])


def symmetric_matrix_C(coeffs: TrigPolynomial, d: int, K: int) -> np.ndarray:
    """``(K+1)``-square fold of the central block for even coefficients.

    ``c_{i,0} = a_i`` and ``c_{i,j} = a_{i-dj} + a_{i+dj}`` for ``j >= 1``.
    """
    C = np.empty((K + 1, K + 1))
    for i in range(K + 1):
        C[i, 0] = coeffs.a(i)
        for j in range(1, K + 1):
            C[i, j] = coeffs.a(i - d * j) + coeffs.a(i + d * j)
    return C


def _eig2(M: np.ndarray) -> EigenResult:
    tr = M[0, 0] + M[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = tr * tr - 4 * det
    if disc < 0:
        raise ConvergenceError("2x2 matrix has a complex dominant pair", math.nan)
    root = math.sqrt(disc)
    lam = 0.5 * (tr + root) if tr >= 0 else 0.5 * (tr - root)
    # eigenvector from whichever row is better conditioned
    a, b = M[0, 0] - lam, M[0, 1]
    c, e = M[1, 0], M[1, 1] - lam
    v = np.array([-b, a]) if abs(a) + abs(b) >= abs(c) + abs(e) else np.array([e, -c])
    if not np.any(v):
        v = np.array([1.0, 0.0])
    v = v / v[np.argmax(np.abs(v))]
    res = float(np.max(np.abs(M @ v - lam * v)))
    return EigenResult(float(lam), v, res)


def _power(M: np.ndarray, v: np.ndarray, tol: float, maxiter: int):
    v = v / np.max(np.abs(v))
    lam, res = 0.0, math.inf
    for it in range(maxiter):
        y = M @ v
        lam = float(v @ y) / float(v @ v)
        res = float(np.max(np.abs(y - lam * v)))
        if res <= tol * max(abs(lam), 1e-300) or not np.any(y):
            break
        v = y / np.max(np.abs(y))
    return lam, v, res


def dominant_eigenvalue(M: np.ndarray, tol: float = 1e-13, maxiter: int = 100_000) -> EigenResult:
    """Magnitude-dominant eigenpair by power iteration.

    The start vector is all ones; if that fails to converge one restart from
    a deterministic perturbation is attempted.  2x2 matrices use the
    trace/determinant formula.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError("need a nonempty square matrix")
    if M.shape[0] > 512:
        raise ValueError("matrix dimension above 512")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    n = M.shape[0]
    if n == 1:
        return EigenResult(float(M[0, 0]), np.ones(1), 0.0)
    if n == 2:
        return _eig2(M)
    starts = [np.ones(n), np.ones(n) + 0.5 * np.cos(np.arange(n) + 1.0)]
    res = math.inf
    for v0 in starts:
        lam, v, res = _power(M, v0, tol, maxiter)
        if res <= 1e-12 * max(abs(lam), 1e-300):
            v = v / v[np.argmax(np.abs(v))]
            return EigenResult(lam, v, float(np.max(np.abs(M @ v - lam * v))))
    raise ConvergenceError("power iteration did not converge", res)


def matrix_radius(coeffs: TrigPolynomial, d: int, K: int | None = None) -> float:
    """Spectral radius of the folded block ``C`` (``K`` defaults to the invariant order)."""
    if K is None:
        K = truncation_order(coeffs.degree, d)
    return abs(dominant_eigenvalue(symmetric_matrix_C(coeffs, d, K)).value)


def c_even_exact(d: int, q_even: int) -> SpectralInterval:
    """Exact ``c(q)`` for ``f = cos^q(pi t)`` with ``q = 2N`` even."""
    if q_even < 2 or q_even % 2:
        raise ValueError("q must be a positive even integer")
    N = q_even // 2
    coeffs = fourier_coefficients(cos_power(q_even), N)
    rho = matrix_radius(coeffs, d)
    return SpectralInterval(rho, rho, True, "matrix", 0)


def In_coefficient_recursion(coeffs: TrigPolynomial, d: int, n: int, K: int | None = None) -> float:
    """``I_n = a_{0,n}`` from ``a_{k,n+1} = sum_{|l|<=K} a_{k-dl} a_{l,n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if K is None:
        K = truncation_order(coeffs.degree, d)
    B = composition_matrix_T(coeffs, d, K)
    a = np.array([coeffs.a(k) for k in range(-K, K + 1)])
    for _ in range(n - 1):
        a = B @ a
    return float(a[K])


def sine_upper_bound(d: int, N: int) -> float:
    """Upper bound ``rho(C(h))`` for ``c(|sin(pi t)|)`` from the degree-N envelope."""
    _, h = sine_envelopes(N)
    return matrix_radius(h, d)


def sine_lower_envelope_radius(d: int, N: int) -> float:
    """``rho(C(g))`` for the lower envelope; not a certified bound on anything."""
    g, _ = sine_envelopes(N)
    return matrix_radius(g, d)


def matrix_to_json(M: np.ndarray) -> str:
    M = np.asarray(M, dtype=float)
    return json.dumps({"dim": int(M.shape[0]), "entries": M.ravel().tolist()})
