"""Axis-aligned frequency boxes and tensor-product Gauss-Legendre grids.

The construction lives on three anisotropic boxes in frequency space: a
thin volume box ``W`` near ``lam * e1`` with transverse width of order
``sqrt(lam)``, a planar companion ``W'`` in the ``xi3 = 0`` plane, and
their dilates/reflections.  ``W'`` comes in two conventions: a true
2-D surface box (one axis degenerate, carrying 2-D measure) or a thin
slab of finite thickness.  All set algebra needed downstream reduces to
per-axis interval arithmetic and is kept exact here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidParameterError

# Relative half-width of the boxes along axis 1, and the transverse
# window [TRANSVERSE_LO, TRANSVERSE_HI] * sqrt(lam) along axes 2 and 3.
AXIAL_HALF_WIDTH = 1e-6
TRANSVERSE_LO = 1e-9
TRANSVERSE_HI = 1e-6
# Absolute tolerance for membership on a degenerate (surface) axis is
# SURFACE_TOL_FACTOR * sqrt(lam): far below the transverse box scale.
SURFACE_TOL_FACTOR = 1e-9


@dataclass(frozen=True)
class Box3:
    """Closed axis-aligned box, optionally degenerate along one axis.

    ``surface_axis`` marks the single degenerate axis of a surface box;
    such a box carries 2-D measure on its two non-degenerate axes.  A
    volume box may still have zero-length axes (then its measure is 0 --
    degeneracy does not silently promote it to a surface).  Membership
    tests on a surface axis allow an absolute slack of ``surface_tol``.
    """

    ax1: tuple[float, float]
    ax2: tuple[float, float]
    ax3: tuple[float, float]
    surface_axis: int | None = None
    surface_tol: float = 0.0

    def __post_init__(self) -> None:
        for lo, hi in self.axes:
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise InvalidParameterError("box endpoints must be finite")
            if lo > hi:
                raise InvalidParameterError(f"empty axis interval ({lo}, {hi})")
        if self.surface_axis is not None:
            if self.surface_axis not in (0, 1, 2):
                raise InvalidParameterError("surface_axis must be 0, 1 or 2")
            for i, (lo, hi) in enumerate(self.axes):
                if i == self.surface_axis and lo != hi:
                    raise InvalidParameterError("surface axis must be degenerate")
                if i != self.surface_axis and lo >= hi:
                    raise InvalidParameterError(
                        "a surface box must have exactly one degenerate axis"
                    )

    @property
    def axes(self) -> tuple[tuple[float, float], ...]:
        return (self.ax1, self.ax2, self.ax3)

    @property
    def measure_mode(self) -> str:
        return "volume" if self.surface_axis is None else "surface"

    @property
    def measure(self) -> float:
        """Lebesgue measure: 3-D for volume boxes, 2-D for surface boxes."""
        out = 1.0
        for i, (lo, hi) in enumerate(self.axes):
            if i != self.surface_axis:
                out *= hi - lo
        return out

    def center(self) -> np.ndarray:
        return np.array([(lo + hi) / 2.0 for lo, hi in self.axes])


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product quadrature nodes with weights summing to the measure."""

    points: np.ndarray  # (n, 3) float64
    weights: np.ndarray  # (n,) float64
    total_measure: float


def box_w(lam: float) -> Box3:
    """Main volume box near ``lam * e1`` with positive transverse window."""
    if lam <= 1.0:
        raise InvalidParameterError(f"lam must exceed 1, got {lam}")
    rt = np.sqrt(lam)
    trans = (TRANSVERSE_LO * rt, TRANSVERSE_HI * rt)
    return Box3(
        ax1=(lam - AXIAL_HALF_WIDTH * lam, lam + AXIAL_HALF_WIDTH * lam),
        ax2=trans,
        ax3=trans,
    )


def box_w_prime(lam: float, thickness: float | None = None) -> Box3:
    """Planar companion box in the ``xi3 = 0`` plane.

    ``thickness=None`` gives the surface convention (axis 3 degenerate at
    0, carrying 2-D measure); a positive ``thickness`` gives a volume slab
    centered on the plane.
    """
    if lam <= 1.0:
        raise InvalidParameterError(f"lam must exceed 1, got {lam}")
    rt = np.sqrt(lam)
    ax1 = (lam - AXIAL_HALF_WIDTH * lam, lam + AXIAL_HALF_WIDTH * lam)
    ax2 = (-TRANSVERSE_HI * rt, TRANSVERSE_HI * rt)
    if thickness is None:
        return Box3(
            ax1=ax1,
            ax2=ax2,
            ax3=(0.0, 0.0),
            surface_axis=2,
            surface_tol=SURFACE_TOL_FACTOR * rt,
        )
    if thickness <= 0.0:
        raise InvalidParameterError(f"slab thickness must be positive, got {thickness}")
    half = thickness / 2.0
    return Box3(ax1=ax1, ax2=ax2, ax3=(-half, half))


def box_scale(b: Box3, c: float) -> Box3:
    """Dilate a box by ``c`` about the origin (``c < 0`` reflects it)."""
    if c == 0.0:
        raise InvalidParameterError("scale factor must be nonzero")
    axes = []
    for lo, hi in b.axes:
        a, z = c * lo, c * hi
        axes.append((a, z) if a <= z else (z, a))
    return Box3(
        ax1=axes[0],
        ax2=axes[1],
        ax3=axes[2],
        surface_axis=b.surface_axis,
        surface_tol=abs(c) * b.surface_tol,
    )


def box_contains(b: Box3, xi) -> bool:
    """Closed-box membership; surface axes compare within ``surface_tol``."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,):
        raise InvalidParameterError("xi must be a 3-vector")
    for i, (lo, hi) in enumerate(b.axes):
        if i == b.surface_axis:
            if abs(xi[i] - lo) > b.surface_tol:
                return False
        elif not (lo <= xi[i] <= hi):
            return False
    return True


def admissible_eta_region(xi, a: Box3, b: Box3) -> Box3 | None:
    """The eta-set where ``xi - eta`` lies in ``a`` and ``eta`` lies in ``b``.

    Returns ``(xi - a) ∩ b`` as a box, or ``None`` when empty.  A surface
    axis of either operand pins that coordinate; the result then carries
    2-D measure on the remaining axes.  A coincidentally zero-length axis
    of a volume/volume intersection stays a volume axis (measure zero).
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,):
        raise InvalidParameterError("xi must be a 3-vector")
    if (
        a.surface_axis is not None
        and b.surface_axis is not None
        and a.surface_axis != b.surface_axis
    ):
        raise InvalidParameterError("operands with distinct surface axes are unsupported")
    axes: list[tuple[float, float]] = []
    surface_axis = a.surface_axis if a.surface_axis is not None else b.surface_axis
    tol = max(a.surface_tol, b.surface_tol)
    for i in range(3):
        a_lo, a_hi = a.axes[i]
        b_lo, b_hi = b.axes[i]
        # xi - a reverses the interval: [xi_i - a_hi, xi_i - a_lo].
        lo = max(xi[i] - a_hi, b_lo)
        hi = min(xi[i] - a_lo, b_hi)
        if i == surface_axis:
            if i == a.surface_axis and i == b.surface_axis:
                if abs((xi[i] - a_lo) - b_lo) > tol:
                    return None
                point = b_lo
            elif i == a.surface_axis:
                point = xi[i] - a_lo
                if not (b_lo - tol <= point <= b_hi + tol):
                    return None
            else:
                point = b_lo
                if not (xi[i] - a_hi - tol <= point <= xi[i] - a_lo + tol):
                    return None
            axes.append((point, point))
        else:
            if lo > hi:
                return None
            axes.append((lo, hi))
    return Box3(
        ax1=axes[0],
        ax2=axes[1],
        ax3=axes[2],
        surface_axis=surface_axis,
        surface_tol=tol,
    )


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def quadrature_grid(b: Box3, nodes_per_axis: tuple[int, int, int]) -> QuadratureGrid:
    """Tensor-product Gauss-Legendre grid over a box.

    A surface axis contributes its single point with weight 1 so that the
    weights integrate the 2-D measure.  A zero-length volume axis yields
    an empty grid (measure 0), not an error.
    """
    if len(nodes_per_axis) != 3 or any(int(n) < 1 for n in nodes_per_axis):
        raise InvalidParameterError(f"nodes_per_axis must be 3 ints >= 1, got {nodes_per_axis}")
    axis_nodes = []
    axis_weights = []
    for i, (lo, hi) in enumerate(b.axes):
        if i == b.surface_axis:
            axis_nodes.append(np.array([lo]))
            axis_weights.append(np.array([1.0]))
            continue
        if hi == lo:
            empty = np.empty((0, 3))
            return QuadratureGrid(points=empty, weights=np.empty(0), total_measure=0.0)
        u, w = _leggauss(int(nodes_per_axis[i]))
        mid, half = (lo + hi) / 2.0, (hi - lo) / 2.0
        axis_nodes.append(mid + half * u)
        axis_weights.append(half * w)
    g1, g2, g3 = np.meshgrid(*axis_nodes, indexing="ij")
    w1, w2, w3 = np.meshgrid(*axis_weights, indexing="ij")
    points = np.column_stack([g1.ravel(), g2.ravel(), g3.ravel()])
    weights = (w1 * w2 * w3).ravel()
    return QuadratureGrid(points=points, weights=weights, total_measure=b.measure)
