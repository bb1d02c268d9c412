import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import ar1_path
from essbench.batch import BatchSpec, iact_bm, iact_obm, resolve_batch_size
from essbench.errors import TooFewBatchesError


def test_bm_hand_values():
    gamma2, est = iact_bm([1, 2, 3, 4, 5, 6], BatchSpec(size_policy="fixed", m=2))
    assert gamma2 == pytest.approx(16 / 3, abs=1e-12)
    assert est.iact == pytest.approx((16 / 3) / (17.5 / 6), abs=1e-12)
    assert est.params == {"m": 2, "k": 3, "size_policy": "fixed"}


def test_obm_hand_values():
    gamma2, est = iact_obm([1, 2, 3, 4], BatchSpec("overlapping", "fixed", 2))
    assert gamma2 == pytest.approx(8 / 3, abs=1e-12)
    assert est.iact == pytest.approx((8 / 3) / 1.25, abs=1e-12)


def test_unbiased_bm_uses_k_minus_one():
    g_b, _ = iact_bm([1, 2, 3, 4, 5, 6], BatchSpec(size_policy="fixed", m=2))
    g_u, _ = iact_bm([1, 2, 3, 4, 5, 6], BatchSpec(size_policy="fixed", m=2, unbiased=True))
    assert g_u == pytest.approx(g_b * 3 / 2)


@pytest.mark.parametrize("n", [8, 26, 27, 28, 1000, 999_999, 10 ** 6, 200_000])
def test_count_policies(n):
    k3 = int(np.floor(np.cbrt(n) + 1e-9))
    while k3 ** 3 > n:
        k3 -= 1
    assert resolve_batch_size(n, BatchSpec()) == n // k3
    k23 = 1
    while (k23 + 1) ** 3 <= n * n:
        k23 += 1
    assert resolve_batch_size(n, BatchSpec(size_policy="count_twothirds")) == n // k23
    assert resolve_batch_size(n, BatchSpec(size_policy="fixed", m=5)) == 5


def test_errors():
    with pytest.raises(TooFewBatchesError):
        iact_bm([1, 2, 3], BatchSpec(size_policy="fixed", m=2))
    with pytest.raises(ValueError):
        iact_obm([1, 2, 3], BatchSpec("overlapping", "fixed", 3))
    with pytest.raises(ValueError):
        BatchSpec(size_policy="sqrt")


@given(arrays(float, st.integers(8, 200), elements=st.floats(-1e3, 1e3)),
       st.integers(2, 4))
def test_gamma2_nonnegative(x, m):
    spec = BatchSpec(size_policy="fixed", m=m)
    g_bm, e_bm = iact_bm(x, spec)
    g_obm, e_obm = iact_obm(x, BatchSpec("overlapping", "fixed", m))
    assert g_bm >= 0 and g_obm >= 0
    if np.var(x) > 1e-9:
        assert e_bm.iact >= 0 and e_obm.iact >= 0


@pytest.mark.parametrize("fn,mode", [(iact_bm, "nonoverlapping"), (iact_obm, "overlapping")])
def test_white_noise_sqrt_batches(rng, fn, mode):
    n = 100_000
    est = fn(rng.standard_normal(n), BatchSpec(mode, "fixed", int(np.sqrt(n))))[1]
    assert est.iact == pytest.approx(1.0, rel=0.15)


def test_white_noise_bias_shrinks(rng):
    means = []
    for n in (1000, 100_000):
        vals = [iact_bm(rng.standard_normal(n))[1].iact for _ in range(200)]
        means.append(abs(np.mean(vals) - 1.0))
    assert means[1] < 0.05


def test_obm_less_variable_than_bm(rng):
    m = 500
    bm, obm = [], []
    for _ in range(100):
        x = ar1_path(0.9, 50_000, rng)
        bm.append(iact_bm(x, BatchSpec(size_policy="fixed", m=m))[1].iact)
        obm.append(iact_obm(x, BatchSpec("overlapping", "fixed", m))[1].iact)
    assert np.std(obm, ddof=1) <= np.std(bm, ddof=1)
