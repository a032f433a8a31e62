import math

import numpy as np
import pytest

import oracles
from xferspec.cosine_expansion import (
    CosineSum,
    apply_transfer_cosine,
    cosine_iterate,
    crosscheck_expansion,
    exact_bounds_d3,
)


def test_first_step():
    h1 = apply_transfer_cosine(CosineSum.one())
    assert h1.depth == 1 and h1.numerators.tolist() == [1]
    assert h1.amplitudes[0] == pytest.approx(2 / 3, abs=1e-16)
    assert h1.at_half() == pytest.approx(2 / 3, abs=1e-16)
    assert h1.at_zero() == pytest.approx(math.sqrt(3) / 3, abs=1e-16)


@pytest.mark.parametrize("n", range(1, 16))
def test_structure(n):
    cs = cosine_iterate(n)
    assert len(cs) <= 2 ** (n - 1)
    assert np.all(cs.amplitudes > 0)
    a = cs.frequencies
    assert np.all((a > 0) & (a < 0.5))


def test_invalid_sums_rejected():
    with pytest.raises(ValueError):
        CosineSum(1, np.array([1]), np.array([-1.0]))
    with pytest.raises(ValueError):
        CosineSum(1, np.array([2]), np.array([1.0]))
    with pytest.raises(ValueError):
        cosine_iterate(25)
    with pytest.raises(ValueError):
        exact_bounds_d3(0)


@pytest.mark.parametrize("n,lo,hi", [(5, 0.634908, 0.651623), (15, 0.643815, 0.649415)])
def test_exact_bounds_table_rows(n, lo, hi):
    iv = exact_bounds_d3(n)
    assert iv.certified
    assert iv.lower == pytest.approx(lo, abs=1e-6) and iv.upper == pytest.approx(hi, abs=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_endpoints_against_extended_precision(n):
    r, R = oracles.cosine_sum_mp(n)
    cs = cosine_iterate(n)
    assert cs.at_zero() == pytest.approx(float(r), rel=1e-14)
    assert cs.at_half() == pytest.approx(float(R), rel=1e-14)


def test_width_bound_n10():
    assert exact_bounds_d3(10).width <= (2 / 3) * (1 - 2 ** (-1 / 20))


def test_nested_in_first_interval_and_sqrt2():
    for n in range(1, 16):
        iv = exact_bounds_d3(n)
        assert math.sqrt(3) / 3 - 1e-15 <= iv.lower <= iv.upper <= 2 / 3 + 1e-15
        cs = cosine_iterate(n)
        assert cs.at_half() <= math.sqrt(2) * cs.at_zero()


@pytest.mark.parametrize("n,tol", [(1, 1e-14), (6, 1e-10), (8, 1e-9)])
def test_crosscheck(n, tol):
    assert crosscheck_expansion(n) <= tol


def test_extremes_at_zero_and_half():
    cs = cosine_iterate(7)
    t = np.arange(2048) / 2048
    v = cs(t)
    assert v.min() == pytest.approx(cs.at_zero(), abs=1e-15)
    assert v.max() == pytest.approx(cs.at_half(), abs=1e-15)
    assert np.argmin(v) == 0 and t[np.argmax(v)] == 0.5


def test_crosscheck_depth_cap():
    with pytest.raises(ValueError):
        crosscheck_expansion(11)
