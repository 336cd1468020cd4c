import math

import numpy as np
import pytest

from knappflow.boxes import box_contains
from knappflow.construction import (
    RHO_MIN,
    KnappParams,
    SlabSpec,
    a_hat,
    curl_df_hat,
    curl_parts,
    kernels,
    lambda_window,
    make_params,
)
from knappflow.errors import (
    InvalidParameterError,
    SingularFrequencyError,
    WindowEmptyError,
)

EPS, RHO = 0.01, 2e-6


def test_window_k1_interval():
    win = lambda_window(EPS, RHO, 1)
    assert win is not None
    lo, hi = win
    assert lo == pytest.approx((2 * math.pi - EPS) / (EPS * (1 - RHO)), rel=1e-15)
    assert hi == pytest.approx((2 * math.pi + EPS) / (EPS * (1 + RHO)), rel=1e-15)
    assert 627.3 < lo < 627.4
    assert 629.3 < hi < 629.4


def test_window_empty_when_rho_large():
    # nonempty requires 2 k pi rho < eps
    assert lambda_window(EPS, 1e-3, 100) is None
    assert lambda_window(EPS, 1e-3, 1) is not None
    assert lambda_window(EPS, 1e-3, 2) is None


def test_window_validation():
    with pytest.raises(InvalidParameterError):
        lambda_window(EPS, 1.0, 1)
    with pytest.raises(InvalidParameterError):
        lambda_window(0.5, RHO, 1)
    with pytest.raises(InvalidParameterError):
        lambda_window(EPS, RHO, 0)


def test_make_params_midpoint():
    p = make_params(EPS, RHO, 1)
    win = lambda_window(EPS, RHO, 1)
    mid = (win[0] + win[1]) / 2
    assert p.lam == pytest.approx(mid * mid, rel=1e-15)
    assert 3.9e5 < p.lam < 4.0e5
    assert p.t * math.sqrt(p.lam) == pytest.approx(EPS, rel=1e-15)
    assert p.slab.mode == "slab"
    assert p.slab.thickness == pytest.approx(1e-6 * math.sqrt(p.lam))


def test_make_params_window_empty_carries_rho_max():
    with pytest.raises(WindowEmptyError) as exc_info:
        make_params(EPS, 1e-3, 7)
    rho_max = exc_info.value.rho_max
    assert rho_max == pytest.approx(EPS / (14 * math.pi), rel=1e-12)
    # any rho below the carried bound succeeds
    make_params(EPS, rho_max * 0.9, 7)


def test_make_params_validation():
    with pytest.raises(InvalidParameterError):
        make_params(EPS, 1e-9, 1)  # cannot cover the box spread
    assert RHO_MIN > 1e-6
    with pytest.raises(InvalidParameterError):
        make_params(EPS, RHO, 1, mode="surface", thickness=1.0)
    with pytest.raises(InvalidParameterError):
        make_params(EPS, RHO, 1, mode="ball")
    with pytest.raises(InvalidParameterError):
        SlabSpec(thickness=0.0)
    with pytest.raises(InvalidParameterError):
        SlabSpec(amplitude=-1.0)
    with pytest.raises(InvalidParameterError):
        KnappParams(lam=10.0, eps=EPS, rho=RHO, k=1, slab=SlabSpec(), s_exp=0.5, r_exp=0.0)


def test_window_soundness():
    # t |xi| stays within eps of 2 k pi over all of W, so cos(t|xi|) >= cos(eps)
    rng = np.random.default_rng(21)
    for k in (1, 5, 10):
        p = make_params(EPS, RHO, k)
        w = p.w_box
        lo = np.array([ax[0] for ax in w.axes])
        hi = np.array([ax[1] for ax in w.axes])
        target = 2 * math.pi * k
        for _ in range(1000):
            xi = lo + rng.random(3) * (hi - lo)
            phase = p.t * np.linalg.norm(xi)
            assert abs(phase - target) < EPS
            assert math.cos(phase) >= math.cos(EPS)


def test_a_hat_indicators():
    p = make_params(EPS, RHO, 1, mode="surface")
    lam, rt = p.lam, math.sqrt(p.lam)
    assert a_hat(p, "a1", (2 * lam, 4e-9 * rt, 4e-9 * rt)) == 1.0
    assert a_hat(p, "a1", (lam, 0.0, 0.0)) == 0.0
    assert a_hat(p, "a2", (-lam, 0.0, 0.0)) == 1.0
    # a_hat is exactly the box indicator
    assert a_hat(p, "a1", (2 * lam, 4e-9 * rt, 4e-9 * rt)) == float(
        box_contains(p.w2_box, (2 * lam, 4e-9 * rt, 4e-9 * rt))
    )
    with pytest.raises(InvalidParameterError):
        a_hat(p, "a3", (0.0, 0.0, 0.0))
    p_amp = make_params(EPS, RHO, 1, amplitude=2.5)
    assert a_hat(p_amp, "a2", (-p_amp.lam, 0.0, 0.0)) == 2.5


def test_curl_parts_displayed_example():
    a1_part, a2_part = curl_parts(np.array([0.0, 1.0, 1.0]), 1.0, 0.0)
    assert np.allclose(a1_part, [2.0, 0.0, 0.0])
    assert np.allclose(a2_part, 0.0)


def test_curl_parts_oracle_identity():
    # sum of the blocks equals -xi (xi . a) + |xi|^2 a whenever xi3*a2 = 0
    rng = np.random.default_rng(22)
    for _ in range(500):
        a1 = float(rng.normal())
        a2 = float(rng.normal())
        xi = rng.normal(size=3)
        xi[2] = 0.0 if a2 != 0.0 else xi[2]
        p1, p2 = curl_parts(xi, a1, a2)
        a = np.array([a1, a2, 0.0], dtype=complex)
        want = -xi * (xi @ a) + float(xi @ xi) * a
        assert np.allclose(p1 + p2, want, rtol=1e-12, atol=1e-12)


def test_curl_df_hat():
    p = make_params(EPS, RHO, 1, mode="surface")
    lam = p.lam
    with pytest.raises(SingularFrequencyError):
        curl_df_hat(p, (0.0, 0.0, 0.0))
    # outside both supports: both blocks vanish
    p1, p2 = curl_df_hat(p, (7.0 * lam, 0.0, 0.0))
    assert np.all(p1 == 0.0) and np.all(p2 == 0.0)
    xi = np.array([-lam, 0.0, 0.0])
    p1, p2 = curl_df_hat(p, xi)
    assert np.all(p1 == 0.0)
    assert np.allclose(p2, [0.0, lam * lam, 0.0])


def test_kernels_structure():
    p = make_params(EPS, RHO, 1)
    terms = kernels(p)
    assert [t.label for t in terms] == ["axis2.t1", "axis2.t2", "axis3.t1", "axis3.t2"]
    assert [t.code for t in terms] == [0, 1, 2, 3]
    by_label = {t.label: t for t in terms}
    # term 1 carries the planar datum on the xi-eta slot, term 2 swaps
    assert by_label["axis2.t1"].support_a == p.neg_wprime_box
    assert by_label["axis2.t1"].support_b == p.w2_box
    assert by_label["axis2.t2"].support_a == p.w2_box
    assert by_label["axis2.t2"].support_b == p.neg_wprime_box
    assert len(kernels(p, "axis2")) == 2
    assert len(kernels(p, "axis3")) == 2
    with pytest.raises(InvalidParameterError):
        kernels(p, "axis4")


def test_kernel_weight_magnitude_scale():
    # order of magnitude at box centers: ~ 2e-6 lam^(-1/2) for the
    # slot-swapped term (transverse factor eta2 over one denominator lam)
    p = make_params(EPS, RHO, 1)
    lam = p.lam
    kern = [t for t in kernels(p) if t.label == "axis2.t2"][0]
    xi = p.samp_box.center()
    eta = np.array([-lam, 0.0, 0.0])
    w = float(kern.weight(xi, eta))
    assert w > 0.0
    scale = w * math.sqrt(lam)
    assert 1e-7 < scale < 1e-5


def test_kernel_weights_positive_at_centers():
    for mode in ("slab", "surface"):
        p = make_params(EPS, RHO, 1, mode=mode)
        xi = p.samp_box.center()
        from knappflow.boxes import admissible_eta_region

        for kern in kernels(p):
            region = admissible_eta_region(xi, kern.support_a, kern.support_b)
            assert region is not None
            assert float(kern.weight(xi, region.center())) > 0.0


def test_amplitude_folds_into_a2_slot():
    p1 = make_params(EPS, RHO, 1, amplitude=1.0)
    p3 = make_params(EPS, RHO, 1, amplitude=3.0)
    xi = p1.samp_box.center()
    eta = np.array([-p1.lam, 0.0, 0.0])
    k1 = [t for t in kernels(p1) if t.label == "axis2.t2"][0]
    k3 = [t for t in kernels(p3) if t.label == "axis2.t2"][0]
    assert float(k3.weight(xi, eta)) == pytest.approx(3.0 * float(k1.weight(xi, eta)), rel=1e-15)
