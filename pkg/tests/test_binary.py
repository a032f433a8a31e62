import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from xferspec.binary import (
    In_binary,
    binary_rates,
    bernoulli_solution,
    conjecture_F,
    convexity_probe,
    functional_equation_residual,
    h_infinity_even,
    hn_binary,
    normalized_limit,
    trig_eigenfunction,
    zeta_eigenfunction,
)
from xferspec.special import hurwitz_zeta
from xferspec.transfer import ResourceGuardError, eigen_residual, transfer_value_hn
from xferspec.weights import cos_power

GRID = np.arange(1024) / 1024
INTERIOR = (np.arange(1024) + 0.5) / 1024


def test_In_binary_examples():
    assert In_binary(2, 4) == pytest.approx(1 / 16, abs=1e-15)
    assert abs(In_binary(0.5, 10) ** 0.1 - 2**-0.5) < 0.05
    with pytest.raises(ValueError):
        In_binary(0, 3)


@pytest.mark.parametrize("q,n", [(0.5, 4), (1.0, 5), (3.0, 3), (0.3, 6)])
def test_In_binary_against_product_quadrature(q, n):
    want = oracles.In_adaptive(oracles.cos_q(q), 2, n)
    # midpoint error on a |sin|^q cusp decays like (1/m)^(1+min(q,1))
    rate = 1 + min(q, 1)
    errs = [abs(In_binary(q, n, m=m) / want - 1) for m in (256, 4096)]
    assert errs[0] <= 4 * 256.0**-rate
    assert errs[1] <= max(4 * 4096.0**-rate, 1e-11)


def test_In_binary_q1_log_growth():
    # 2^n I_n / n settles for q = 1 (one log factor)
    vals = [2**n * In_binary(1.0, n) / n for n in range(8, 17, 2)]
    diffs = np.abs(np.diff(vals))
    assert all(b < a for a, b in zip(diffs, diffs[1:]))
    assert 0.1 < vals[-1] < 10


def test_In_binary_guard(monkeypatch):
    monkeypatch.setenv("XFERSPEC_MAX_DEPTH", "10000")
    with pytest.raises(ResourceGuardError):
        In_binary(1.0, 12)


def test_hn_binary_examples():
    for q in (0.3, 1.0, 5.0):
        assert hn_binary(q, 6, 0.0) == 2.0**-6
    np.testing.assert_allclose(hn_binary(2, 3, GRID), 1 / 8, atol=1e-15)
    want = 2.0**-12 * (math.cos(math.pi / 2) + 2) / 3
    assert abs(hn_binary(4, 12, 0.25) - want) <= 1e-3 * 2.0**-12


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("n", [1, 4, 8])
def test_hn_binary_against_preimage_sum(q, n):
    t = np.arange(512) / 512
    np.testing.assert_allclose(hn_binary(q, n, t), transfer_value_hn(cos_power(q), 2, n, t), atol=1e-10, rtol=0)


def test_binary_rates():
    r = binary_rates(0.5)
    assert r.c == pytest.approx(2**-0.5) and r.R == r.c and r.r == 0.5
    assert binary_rates(1).c == 0.5
    r3 = binary_rates(3)
    assert r3.R == 0.5 and r3.r == 0.5 and r3.c == 0.5


def test_zeta_eigenfunction_examples():
    u2 = zeta_eigenfunction(2, 2)
    np.testing.assert_allclose(u2(INTERIOR), math.pi**2, rtol=1e-12)
    assert u2(0.0) == pytest.approx(math.pi**2)
    u4 = zeta_eigenfunction(4, 4)
    np.testing.assert_allclose(u4(INTERIOR), math.pi**4 / 3 * (np.cos(2 * np.pi * INTERIOR) + 2), rtol=1e-12)
    assert u4.eigenvalue == 0.5
    u3 = zeta_eigenfunction(3, 3)
    assert eigen_residual(cos_power(3), 2, u3, 0.5) <= 1e-8
    with pytest.raises(ValueError):
        zeta_eigenfunction(2, 3)
    with pytest.raises(ValueError):
        zeta_eigenfunction(2, 1)
    assert zeta_eigenfunction(2.5, 1.5)(0.0) == 0.0


@given(q=st.floats(1.2, 9), frac=st.floats(0.0, 1.0))
def test_zeta_eigenfunctions_have_small_residual(q, frac):
    s = 1.05 + frac * (q - 1.05)
    u = zeta_eigenfunction(q, s)
    norm = float(np.max(np.abs(u(GRID))))
    assert eigen_residual(cos_power(q), 2, u, 2.0 ** (s - q - 1)) <= 1e-8 * norm


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
def test_trig_family_q6(s):
    u = trig_eigenfunction(6, s)
    norm = float(np.max(np.abs(u(GRID))))
    assert eigen_residual(cos_power(6), 2, u, 2.0 ** (s - 7)) <= 1e-8 * norm
    # the trig form agrees with |sin|^q G~ built from Hurwitz zeta in the interior
    sign = (-1) ** s
    direct = np.abs(np.sin(np.pi * INTERIOR)) ** 6 * (hurwitz_zeta(s, INTERIOR) + sign * hurwitz_zeta(s, 1 - INTERIOR))
    np.testing.assert_allclose(u(INTERIOR), direct, rtol=1e-9, atol=1e-9 * norm)


def test_trig_family_validation():
    with pytest.raises(ValueError):
        trig_eigenfunction(5, 2)
    with pytest.raises(ValueError):
        trig_eigenfunction(6, 7)


def test_functional_equation_examples():
    assert functional_equation_residual(lambda t: np.ones_like(t), 1.0) == 0.0
    B1, mu = bernoulli_solution(1)
    assert mu == 0.5 and functional_equation_residual(B1, mu) <= 1e-14
    z = lambda t: hurwitz_zeta(2.5, t)  # noqa: E731
    mid = np.linspace(0.05, 0.95, 901)
    resid = 0.5 * z(mid / 2) + 0.5 * z((mid + 1) / 2) - 2**1.5 * z(mid)
    assert np.max(np.abs(resid)) <= 1e-10
    assert functional_equation_residual(z, 2**1.5, relative=True) <= 1e-14
    assert functional_equation_residual(z, 2.0) > 1e-3


@pytest.mark.parametrize("n", range(0, 9))
def test_bernoulli_solutions(n):
    g, mu = bernoulli_solution(n)
    assert mu == 2.0**-n
    assert functional_equation_residual(g, mu) <= 1e-12


def test_h_infinity():
    np.testing.assert_allclose(h_infinity_even(2, GRID), 1.0, atol=1e-15)
    np.testing.assert_allclose(h_infinity_even(4, GRID), (np.cos(2 * np.pi * GRID) + 2) / 3, atol=1e-14)
    with pytest.raises(ValueError):
        h_infinity_even(3, 0.1)
    # second derivative at 1/2 is positive for q = 4
    h = 1e-4
    f = lambda t: h_infinity_even(4, t)  # noqa: E731
    assert (f(0.5 + h) - 2 * f(0.5) + f(0.5 - h)) / h**2 > 0


@pytest.mark.parametrize("q", [4, 6, 8, 10])
def test_h_infinity_symmetric_and_decreasing(q):
    t = np.linspace(0.001, 0.499, 499)
    h = h_infinity_even(q, t)
    np.testing.assert_allclose(h, h_infinity_even(q, 1 - t), rtol=1e-13)
    assert np.all(np.diff(h) < 0)
    # matches the normalised zeta eigenfunction
    u = zeta_eigenfunction(q, q)
    np.testing.assert_allclose(h, u(t) / math.pi**q, rtol=1e-10)


def test_normalized_limit_constants():
    assert normalized_limit(1).limit(0.5) == pytest.approx(2 * math.log(2) / math.pi, abs=1e-15)
    assert 2 * math.log(2) / math.pi == pytest.approx(0.441271, abs=1e-6)
    c = normalized_limit(0.5).limit(0.5)
    assert c == pytest.approx(oracles.inv_sin_integral(0.5), rel=1e-12)
    assert c == pytest.approx(1.66925, abs=1e-5)
    lim2 = normalized_limit(2)
    for n in (1, 5, 9):
        np.testing.assert_allclose(lim2.scale(n) * hn_binary(2, n, GRID), lim2.limit(GRID), atol=1e-14)


@pytest.mark.parametrize("q", [0.5, 1.0, 4.0, 2.5])
def test_normalized_limit_errors_decrease(q):
    lim = normalized_limit(q)
    t = np.arange(257) / 256
    errs = [np.max(np.abs(lim.scale(n) * hn_binary(q, n, t) - lim.limit(t))) for n in range(6, 13)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_convexity_examples():
    assert convexity_probe(0.5, 4).concave_everywhere is True
    assert convexity_probe(4, 3).sign_at_half == 1
    assert convexity_probe(1.2, 2).sign_at_half == -1
    assert convexity_probe(3, 3).concave_everywhere is None
    with pytest.raises(ValueError):
        convexity_probe(1, 15)


def test_conjecture_F():
    assert abs(conjecture_F(2.0)) <= 1e-9
    assert conjecture_F(1.5) < 0 < conjecture_F(3.0)
    s = np.linspace(1.05, 3.95, 59)
    vals = [conjecture_F(x) for x in s]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        conjecture_F(1.0)
