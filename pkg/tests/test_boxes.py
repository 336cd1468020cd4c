import numpy as np
import pytest
from hypothesis import given, strategies as st

from knappflow.boxes import (
    Box3,
    admissible_eta_region,
    box_contains,
    box_scale,
    box_w,
    box_w_prime,
    quadrature_grid,
)
from knappflow.errors import InvalidParameterError

LAM = 4.0e5
RT = np.sqrt(LAM)


def test_box_w_geometry():
    w = box_w(LAM)
    assert w.ax1 == (LAM - 1e-6 * LAM, LAM + 1e-6 * LAM)
    assert w.ax2 == (1e-9 * RT, 1e-6 * RT)
    assert w.ax3 == w.ax2
    assert w.measure_mode == "volume"
    assert w.measure == pytest.approx(2e-6 * LAM * (0.999e-6 * RT) ** 2, rel=1e-12)


def test_box_w_prime_surface_and_slab():
    surf = box_w_prime(LAM)
    assert surf.surface_axis == 2
    assert surf.ax3 == (0.0, 0.0)
    assert surf.surface_tol == pytest.approx(1e-9 * RT)
    # 2D measure: axial times transverse
    assert surf.measure == pytest.approx(2e-6 * LAM * 2e-6 * RT, rel=1e-12)

    slab = box_w_prime(LAM, thickness=1e-6 * RT)
    assert slab.surface_axis is None
    assert slab.ax3 == (-0.5e-6 * RT, 0.5e-6 * RT)
    with pytest.raises(InvalidParameterError):
        box_w_prime(LAM, thickness=-1.0)
    with pytest.raises(InvalidParameterError):
        box_w(0.5)


def test_box_validation():
    with pytest.raises(InvalidParameterError):
        Box3(ax1=(1.0, 0.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0))
    with pytest.raises(InvalidParameterError):
        Box3(ax1=(0.0, 1.0), ax2=(0.0, 1.0), ax3=(0.0, np.inf))
    # surface axis must be degenerate and the others must not be
    with pytest.raises(InvalidParameterError):
        Box3(ax1=(0.0, 1.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0), surface_axis=2)
    with pytest.raises(InvalidParameterError):
        Box3(ax1=(0.0, 0.0), ax2=(0.0, 1.0), ax3=(0.0, 0.0), surface_axis=2)


def test_membership_examples():
    w = box_w(LAM)
    assert box_contains(w, (LAM, 1e-7 * RT, 1e-7 * RT))
    assert not box_contains(w, (0.0, 0.0, 0.0))
    neg_wp = box_scale(box_w_prime(LAM), -1.0)
    assert box_contains(neg_wp, (-LAM, 0.0, 0.0))
    # closed boundaries
    assert box_contains(w, (w.ax1[0], w.ax2[0], w.ax3[1]))


@given(st.integers(min_value=-6, max_value=6), st.booleans())
def test_box_scale_round_trip_powers_of_two(e: int, neg: bool):
    # exact in floating point only for powers of two; the general case
    # is covered approximately below
    c = float(2.0**e) * (-1.0 if neg else 1.0)
    b = box_w(LAM)
    assert box_scale(box_scale(b, c), 1.0 / c) == b


def test_box_scale_round_trip_general():
    rng = np.random.default_rng(7)
    b = box_w_prime(LAM)
    for _ in range(50):
        c = float(rng.uniform(0.1, 10.0)) * float(rng.choice([-1.0, 1.0]))
        rt = box_scale(box_scale(b, c), 1.0 / c)
        for got, want in zip(rt.axes, b.axes):
            assert got[0] == pytest.approx(want[0], rel=1e-12, abs=1e-300)
            assert got[1] == pytest.approx(want[1], rel=1e-12, abs=1e-300)
    assert box_scale(b, -1.0).surface_tol == b.surface_tol
    with pytest.raises(InvalidParameterError):
        box_scale(b, 0.0)


def test_scale_reflection_reorders_endpoints():
    b = Box3(ax1=(1.0, 2.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0))
    r = box_scale(b, -1.0)
    assert r.ax1 == (-2.0, -1.0)


def test_admissible_region_volume_case():
    a = Box3(ax1=(0.0, 1.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0))
    region = admissible_eta_region((2.0, 2.0, 2.0), a, a)
    # single-point region at (1,1,1): zero volume, still a valid box
    assert region is not None
    assert region.ax1 == (1.0, 1.0)
    assert region.measure == 0.0
    assert admissible_eta_region((5.0, 0.5, 0.5), a, a) is None


def test_admissible_region_surface_pinning():
    surf = box_w_prime(LAM)
    w2 = box_scale(box_w(LAM), 2.0)
    # xi3 far below the doubled transverse floor of 2W: axis-3 constraint fails
    xi_bad = np.array([3.0 * LAM, 3e-7 * RT, 5e-10 * RT])
    assert admissible_eta_region(xi_bad, surf, w2) is None
    # the surface tolerance is an inclusive slack on the pinned value
    xi_edge = np.array([3.0 * LAM, 3e-7 * RT, 1e-9 * RT])
    assert admissible_eta_region(xi_edge, surf, w2) is not None
    xi = np.array([3.0 * LAM, 3e-7 * RT, 5e-7 * RT])
    region = admissible_eta_region(xi, surf, w2)
    assert region is not None
    assert region.surface_axis == 2
    assert region.ax3 == (xi[2], xi[2])
    # surface axis carried by the b operand pins at the surface value;
    # the Minkowski sum 2W + (-W') sits near lam, not 3 lam
    xi_b = np.array([LAM, 3e-7 * RT, 5e-7 * RT])
    region2 = admissible_eta_region(xi_b, w2, box_scale(surf, -1.0))
    assert region2 is not None
    assert region2.ax3 == (0.0, 0.0)
    with pytest.raises(InvalidParameterError):
        bad = Box3(ax1=(0.0, 0.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0), surface_axis=0)
        admissible_eta_region((0.0, 0.0, 0.0), bad, surf)


def test_minkowski_coverage():
    # every sampled xi in W with xi3 above the doubled floor admits
    # eta with xi - eta in -W' and eta in 2W
    rng = np.random.default_rng(11)
    w = box_w(LAM)
    neg_wp = box_scale(box_w_prime(LAM), -1.0)
    w2 = box_scale(box_w(LAM), 2.0)
    lo = np.array([w.ax1[0], w.ax2[0], 2e-9 * RT])
    hi = np.array([w.ax1[1], w.ax2[1], w.ax3[1]])
    for _ in range(1000):
        xi = lo + rng.random(3) * (hi - lo)
        assert admissible_eta_region(xi, neg_wp, w2) is not None


def test_quadrature_unit_cube():
    cube = Box3(ax1=(0.0, 1.0), ax2=(0.0, 1.0), ax3=(0.0, 1.0))
    g = quadrature_grid(cube, (4, 4, 4))
    assert g.weights.sum() == pytest.approx(1.0, rel=1e-14)
    assert g.total_measure == 1.0
    # Gauss-Legendre with n nodes is exact through degree 2n-1
    val = g.weights @ g.points[:, 0] ** 2
    assert val == pytest.approx(1.0 / 3.0, rel=1e-12)
    val7 = g.weights @ (g.points[:, 0] ** 7 * g.points[:, 1] ** 5)
    assert val7 == pytest.approx((1.0 / 8.0) * (1.0 / 6.0), rel=1e-12)


def test_quadrature_membership_consistency():
    b = box_w(LAM)
    g = quadrature_grid(b, (5, 3, 2))
    assert g.points.shape == (30, 3)
    for pt in g.points:
        assert box_contains(b, pt)


def test_quadrature_surface_box():
    sheet = Box3(ax1=(0.0, 1.0), ax2=(0.0, 1.0), ax3=(0.0, 0.0), surface_axis=2)
    g = quadrature_grid(sheet, (8, 8, 8))
    assert g.points.shape == (64, 3)
    assert np.all(g.points[:, 2] == 0.0)
    assert g.weights.sum() == pytest.approx(1.0, rel=1e-14)


def test_quadrature_degenerate_volume_axis_is_empty():
    flat = Box3(ax1=(0.0, 1.0), ax2=(0.5, 0.5), ax3=(0.0, 1.0))
    g = quadrature_grid(flat, (4, 4, 4))
    assert g.weights.size == 0
    assert g.total_measure == 0.0
    with pytest.raises(InvalidParameterError):
        quadrature_grid(flat, (4, 0, 4))
