"""The two kernel backends must be interchangeable to the bit: every report
byte downstream depends on it."""

import math

import pytest

from peakfn import _kernels
from peakfn._kernels import pure

compiled = pytest.importorskip(
    "peakfn._kernels._corekernels",
    reason="compiled kernel backend not built")

LID = 2.302585092994046      # log(1/0.1)
LIA = 0.6931471805599453     # log(1/0.5)
CA = 11.09035488895912       # log(1/A) * L / (p (p+1)) at p = 0.25, L = 5


def test_rule_constants_sane():
    assert len(pure.GK_X) == 8 and len(pure.GK_WK) == 8 and len(pure.GK_WG) == 4
    # Kronrod weights integrate the constant 1 over [-1, 1]
    total = pure.GK_WK[7] + 2.0 * sum(pure.GK_WK[:7])
    assert total == pytest.approx(2.0, abs=1e-15)
    gauss = pure.GK_WG[3] + 2.0 * sum(pure.GK_WG[:3])
    assert gauss == pytest.approx(2.0, abs=1e-15)
    assert all(0.0 < x < 1.0 for x in pure.GK_X[:7]) and pure.GK_X[7] == 0.0


def test_psi_val_flat_below_one():
    assert pure.psi_val(0.5, LID, CA, 0.25) == pure.psi_val(1e-9, LID, CA, 0.25)
    assert pure.psi_val(1.0, LID, CA, 0.25) == pytest.approx(
        13.39293998195317, rel=1e-15)


QUAD_CASES = [
    (0.0, 1.0, LID, CA, 0.25, 0.75),
    (1.0, 2.0, LID, CA, 0.25, 0.75),
    (5.0, 117.3, LID, CA, 0.25, 0.75),
    (3.0, 1e6, LID, CA, 0.25, 0.75),
    (0.5, 80.0, 1.6094379124341003, 23.025850929940457, 0.14, 0.86),
]


@pytest.mark.parametrize("a,b,lid,ca,p,t", QUAD_CASES)
def test_quad_bit_identity(a, b, lid, ca, p, t):
    vp, ep = pure.quad_psi_negt(a, b, lid, ca, p, t, 1e-10)
    vc, ec = compiled.quad_psi_negt(a, b, lid, ca, p, t, 1e-10)
    assert vp == vc
    assert ep == ec


@pytest.mark.parametrize("a,b,lid,ca,p,t", QUAD_CASES)
def test_quad_error_bound_honest(a, b, lid, ca, p, t):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    val, err = pure.quad_psi_negt(a, b, lid, ca, p, t, 1e-10)

    def psi(tau):
        tt = tau if tau > 1 else mp.mpf(1)
        return lid * tt + ca * tt ** (1 + mp.mpf(p))

    truth = float(mp.quad(lambda u: psi(u) ** (-mp.mpf(t)), [a, 1, b]
                          if a < 1 < b else [a, b]))
    assert abs(val - truth) <= 10.0 * err + 1e-13 * abs(truth)


@pytest.mark.parametrize("m_max,p", [(10_000, 0.05), (10_000, 0.25),
                                     (10_000, 0.95), (137, 0.5)])
def test_bracket_sweep_bit_identity(m_max, p):
    assert pure.bracket_sweep(m_max, p) == compiled.bracket_sweep(m_max, p)


@pytest.mark.parametrize("args", [(1000, 0.25, 5.0), (1000, 0.05, 5.0),
                                  (500, 0.95, 40.0)])
def test_choose_l_sweep_bit_identity(args):
    assert pure.choose_l_sweep(*args) == compiled.choose_l_sweep(*args)


@pytest.mark.parametrize("args", [(1000, 0.25, LID, LIA, 5.0),
                                  (1000, 0.9, LID, LIA, 60.0)])
def test_radius_bound_sweep_bit_identity(args):
    assert pure.radius_bound_sweep(*args) == compiled.radius_bound_sweep(*args)


@pytest.mark.parametrize("n,e", [(5000, -0.75), (5000, 0.25), (1, 0.5)])
def test_pow_sums_bit_identity(n, e):
    assert pure.pow_sums(n, e) == compiled.pow_sums(n, e)


def test_backend_switching():
    start = _kernels.active_backend()
    try:
        assert _kernels.use_backend("pure") == "pure"
        assert _kernels.active_backend() == "pure"
        assert _kernels.use_backend("compiled") == "compiled"
        assert _kernels.use_backend("auto") in ("pure", "compiled")
        with pytest.raises(ValueError):
            _kernels.use_backend("gpu")
    finally:
        _kernels.use_backend(start)


def test_quad_integrates_power_exactly():
    # integrand reduces to psi(1)^-t on [0, 1]: closed form to compare with
    val, err = pure.quad_psi_negt(0.0, 1.0, LID, CA, 0.25, 0.75, 1e-12)
    closed = math.pow(13.39293998195317, -0.75)
    assert val == pytest.approx(closed, rel=1e-14)
    assert err <= 1e-12 * abs(val) * 10.0 + 1e-300
