"""Independent reference computations used only by the tests.

Nothing here imports from ``xferspec``; each routine recomputes a quantity
by a different route (plain recursion, adaptive quadrature, extended
precision, symbolic algebra or a general eigensolver).
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import sympy
from scipy import integrate


def cos_q(q):
    return lambda t: abs(math.cos(math.pi * t)) ** q


def sin_q(q):
    return lambda t: abs(math.sin(math.pi * t)) ** q


def hn_recursive(f, d: int, n: int, t: float) -> float:
    """``h_n(t)`` by literal recursion ``h_n = L h_{n-1}``."""
    if n == 0:
        return 1.0
    return math.fsum(f((t + i) / d) * hn_recursive(f, d, n - 1, (t + i) / d) for i in range(d)) / d


def fn_product(f, d: int, n: int, t: float) -> float:
    out = 1.0
    for _ in range(n):
        out *= f(t % 1.0)
        t = d * t
    return out


def In_adaptive(f, d: int, n: int) -> float:
    """``int_0^1 f_n`` with adaptive Gauss-Kronrod on every cell of width ``d^-n``."""
    cells = d**n
    parts = [
        integrate.quad(lambda t: fn_product(f, d, n, t), j / cells, (j + 1) / cells, epsabs=1e-14, epsrel=1e-13)[0]
        for j in range(cells)
    ]
    return math.fsum(parts)


def hurwitz_mp(s: float, t: float) -> float:
    return float(mpmath.zeta(s, t))


def cot_poly_symbolic(n: int) -> list[int]:
    """Coefficients of ``P_n`` from sympy's n-th derivative of ``cot``.

    ``D^n cot`` is a polynomial ``Q(cot)``; multiplying by ``(-1)^n sin^{n+1}``
    leaves ``sum q_k cos^k sin^{n+1-k}`` where only even powers of ``sin``
    survive, and ``sin^2 = 1 - x^2`` finishes the conversion.
    """
    t, c, x = sympy.symbols("t c x")
    expr = sympy.diff(sympy.cot(t), t, n).subs(sympy.cot(t), c)
    Q = sympy.Poly(sympy.expand(expr), c)
    total = sympy.Integer(0)
    for (k,), qk in Q.terms():
        m = n + 1 - k
        assert m % 2 == 0, "odd power of sin left over"
        total += (-1) ** n * qk * x**k * (1 - x**2) ** (m // 2)
    P = sympy.Poly(sympy.expand(total), x)
    coeffs = [int(P.coeff_monomial(x**j)) for j in range(P.degree() + 1)]
    return coeffs or [0]


def cosine_sum_mp(n: int, dps: int = 40) -> tuple[mpmath.mpf, mpmath.mpf]:
    """``(h_n(0), h_n(1/2))`` for ``|sin|``, ``d = 3`` with exact rational frequencies."""
    with mpmath.workdps(dps):
        terms = {Fraction(0): mpmath.mpf(1)}
        for _ in range(n):
            nxt: dict[Fraction, mpmath.mpf] = {}
            for a, A in terms.items():
                for b in ((1 + a) / 3, (1 - a) / 3):
                    amp = A * (1 + 2 * mpmath.cos(mpmath.pi * b.numerator / b.denominator)) / 6
                    nxt[b] = nxt.get(b, mpmath.mpf(0)) + amp
            terms = nxt
        at_half = mpmath.fsum(terms.values())
        at_zero = mpmath.fsum(A * mpmath.cos(mpmath.pi * a.numerator / a.denominator / 2) for a, A in terms.items())
        return at_zero, at_half


def folded_matrix(a, d: int, K: int) -> np.ndarray:
    """``c_{i,0} = a_i``, ``c_{i,j} = a_{i-dj} + a_{i+dj}`` built from a coefficient lookup."""
    C = np.zeros((K + 1, K + 1))
    for i in range(K + 1):
        C[i, 0] = a(i)
        for j in range(1, K + 1):
            C[i, j] = a(i - d * j) + a(i + d * j)
    return C


def spectral_radius_eig(M: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def sine_coeff(k: int) -> float:
    return -(2 / math.pi) / ((2 * k - 1) * (2 * k + 1))


def envelope_radius(d: int, N: int) -> float:
    tail = (2 / math.pi) / (2 * N + 1)

    def a(k):
        k = abs(k)
        if k > N:
            return 0.0
        return sine_coeff(k) + (tail if k == 0 else 0.0)

    return spectral_radius_eig(folded_matrix(a, d, (N - 1) // (d - 1)))


def envelope_radius_mp(d: int, N: int, dps: int = 30) -> float:
    with mpmath.workdps(dps):
        tail = 2 / mpmath.pi / (2 * N + 1)

        def a(k):
            k = abs(k)
            if k > N:
                return mpmath.mpf(0)
            v = -2 / mpmath.pi / ((2 * k - 1) * (2 * k + 1))
            return v + tail if k == 0 else v

        K = (N - 1) // (d - 1)
        C = mpmath.matrix(K + 1, K + 1)
        for i in range(K + 1):
            C[i, 0] = a(i)
            for j in range(1, K + 1):
                C[i, j] = a(i - d * j) + a(i + d * j)
        ev = mpmath.eig(C, left=False, right=False)
        return float(max(abs(e) for e in ev))


def inv_sin_integral(q: float) -> float:
    """``int_0^1 |sin(pi x)|^{-q} dx`` by adaptive quadrature with endpoint weights."""
    def smooth(x):
        if x <= 0.0 or x >= 1.0:
            return 1.0
        return (math.sin(math.pi * x) / (math.pi * x * (1 - x))) ** -q

    val, _ = integrate.quad(smooth, 0, 1, weight="alg", wvar=(-q, -q), epsabs=1e-13, epsrel=1e-12)
    return val / math.pi**q


def _trig_samples(c: np.ndarray, M: int) -> np.ndarray:
    """Values of ``sum_k c_k e^{2 pi i k t}`` (``k = -N..N``, real output) at ``j/M``."""
    N = (c.size - 1) // 2
    spectrum = np.zeros(M, dtype=complex)
    spectrum[: N + 1] = c[N:]
    spectrum[M - N :] = c[:N]
    return np.fft.ifft(spectrum).real * M


def lp_ratio_bruteforce(q: float, p: float, d: int, c: np.ndarray, M: int = 8192) -> float:
    """``||L_q u||_p / ||u||_p`` for a band-limited ``u`` with Hermitian coefficients ``c``.

    ``u`` is sampled on the ``dM`` grid so that ``(L u)(j/M)`` uses exact
    preimage values; norms are grid means.
    """
    u = _trig_samples(c, d * M)
    x = np.arange(d * M) / (d * M)
    f = np.abs(np.cos(np.pi * x)) ** q
    Lu = (f * u).reshape(d, M).sum(axis=0) / d
    if p == math.inf:
        return float(np.max(np.abs(Lu)) / np.max(np.abs(u)))
    return float((np.mean(np.abs(Lu) ** p) / np.mean(np.abs(u) ** p)) ** (1 / p))


def random_test_functions(q: float, p: float, d: int, count: int, seed: int, N: int = 256):
    """Coefficient vectors of band-limited test functions.

    Half are generic random trigonometric polynomials. The rest are Jackson
    bumps placed at the ``d`` preimages of ``t0 in {0, 1/2}`` (the two
    candidates for the maximum of ``L_{q p'} 1``) with heights
    ``f^{p'-1}``: the Holder-extremal profile, which pushes the ratio
    towards the operator norm as the bumps narrow.
    """
    rng = np.random.default_rng(seed)
    pp = 1.0 if p == math.inf else p / (p - 1)
    out = []
    k = np.arange(-N, N + 1)
    for i in range(count):
        if i % 2 == 0:
            deg = int(rng.integers(1, N + 1))
            c = np.zeros(2 * N + 1, dtype=complex)
            z = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            z[0] = z[0].real
            c[N : N + deg + 1] = z
            c[N - deg : N] = np.conj(z[1:][::-1])
        else:
            t0 = 0.5 * int(rng.integers(0, 2))
            width = int(rng.integers(N // 4, N // 2 + 1))
            # Jackson kernel of order `width`: Fejer coefficients convolved with themselves
            fej = np.maximum(0.0, 1 - np.abs(np.arange(-width, width + 1)) / (width + 1))
            jack = np.convolve(fej, fej)
            jack = jack / jack[jack.size // 2]
            m = (jack.size - 1) // 2
            kern = np.zeros(2 * N + 1)
            kern[N - m : N + m + 1] = jack
            c = np.zeros(2 * N + 1, dtype=complex)
            for j in range(d):
                y = (t0 + j) / d
                amp = abs(math.cos(math.pi * y)) ** (q * (pp - 1)) if pp > 1 else 1.0
                c += amp * kern * np.exp(-2j * np.pi * k * y)
        out.append(c)
    return out
