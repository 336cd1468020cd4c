"""Knapp-type counterexample data: parameter resolution, data symbols, kernels.

The datum concentrates the first potential component on the dilated box
``2W`` and the second on the reflected planar box ``-W'``.  The
evaluation time is tied to the frequency scale by ``t = eps / sqrt(lam)``
with ``lam`` chosen from a resonance window so that ``t |xi|`` sits
within ``eps`` of ``2 k pi`` for every ``xi`` in ``W``: the resonant
interactions then add coherently while every nonresonant phase is small.

The bilinear interaction splits into four admissible-support terms (two
per transverse axis).  Their weights are written with all signs folded
in, so each weight is nonnegative on its own support pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .boxes import Box3, box_contains, box_scale, box_w, box_w_prime
from .errors import InvalidParameterError, SingularFrequencyError, WindowEmptyError

# rho must cover the spread of |xi|/lam over W: 1e-6 per side along
# axis 1 plus transverse corrections bounded by 1e-12.
RHO_MIN = 1e-6 + 1e-12
DEFAULT_RHO = 2e-6
DEFAULT_GRID = (32, 16, 16)
# Default slab thickness as a multiple of sqrt(lam).
DEFAULT_SLAB_FACTOR = 1e-6


@dataclass(frozen=True)
class SlabSpec:
    """Convention for the planar box: a true surface or a thin slab.

    ``thickness=None`` selects the surface convention (2-D measure);
    otherwise the box is a volume slab of the given thickness, centered
    on the plane, whose datum carries the given amplitude.
    """

    thickness: float | None = None
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.thickness is not None and self.thickness <= 0.0:
            raise InvalidParameterError("slab thickness must be positive")
        if self.amplitude <= 0.0:
            raise InvalidParameterError("slab amplitude must be positive")

    @property
    def mode(self) -> str:
        return "surface" if self.thickness is None else "slab"


@dataclass(frozen=True)
class KnappParams:
    """Resolved parameters of one counterexample configuration."""

    lam: float
    eps: float
    rho: float
    k: int
    slab: SlabSpec
    s_exp: float
    r_exp: float
    grid: tuple[int, int, int] = DEFAULT_GRID

    def __post_init__(self) -> None:
        if self.lam <= 1e3:
            raise InvalidParameterError(f"lam must exceed 1e3, got {self.lam}")
        if not (0.0 < self.eps <= 0.1):
            raise InvalidParameterError(f"eps must lie in (0, 0.1], got {self.eps}")
        if not (0.0 < self.rho < 1.0):
            raise InvalidParameterError(f"rho must lie in (0, 1), got {self.rho}")
        if self.k < 1:
            raise InvalidParameterError(f"k must be a positive integer, got {self.k}")
        if len(self.grid) != 3 or any(int(n) < 1 for n in self.grid):
            raise InvalidParameterError(f"grid must be 3 ints >= 1, got {self.grid}")

    @property
    def t(self) -> float:
        """Evaluation time eps / sqrt(lam)."""
        return self.eps / math.sqrt(self.lam)

    @property
    def w_box(self) -> Box3:
        return box_w(self.lam)

    @property
    def w2_box(self) -> Box3:
        """Support of the first datum: the dilate 2W."""
        return box_scale(box_w(self.lam), 2.0)

    @property
    def wprime_box(self) -> Box3:
        return box_w_prime(self.lam, self.slab.thickness)

    @property
    def neg_wprime_box(self) -> Box3:
        """Support of the second datum: the reflection -W'."""
        return box_scale(self.wprime_box, -1.0)

    @property
    def samp_box(self) -> Box3:
        """Output sampling sub-box of W where all four terms are active.

        The floor of axis 3 is doubled so the planar constraint can be
        met from both operand orders at every sampled point.
        """
        w = self.w_box
        rt = math.sqrt(self.lam)
        return Box3(
            ax1=w.ax1,
            ax2=(1e-9 * rt, 1e-6 * rt),
            ax3=(2e-9 * rt, 1e-6 * rt),
        )

    @property
    def resonance_threshold(self) -> float:
        """Empirical resonance cut |omega| <= lam^(3/4)."""
        return self.lam ** 0.75


def lambda_window(eps: float, rho: float, k: int) -> tuple[float, float] | None:
    """Admissible open interval for sqrt(lam), or None when empty.

    The window guarantees ``t |xi|`` within ``eps`` of ``2 k pi`` for all
    ``|xi|`` within relative ``rho`` of ``lam``; it is nonempty exactly
    when ``2 k pi rho < eps``.
    """
    if not (0.0 < eps <= 0.1):
        raise InvalidParameterError(f"eps must lie in (0, 0.1], got {eps}")
    if not (0.0 < rho < 1.0):
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    if k < 1:
        raise InvalidParameterError(f"k must be a positive integer, got {k}")
    lo = (2.0 * k * math.pi - eps) / (eps * (1.0 - rho))
    hi = (2.0 * k * math.pi + eps) / (eps * (1.0 + rho))
    if lo >= hi:
        return None
    return (lo, hi)


def make_params(
    eps: float,
    rho: float,
    k: int,
    mode: str = "slab",
    s_exp: float = 0.5,
    r_exp: float = -0.25,
    grid: tuple[int, int, int] = DEFAULT_GRID,
    thickness: float | None = None,
    amplitude: float = 1.0,
) -> KnappParams:
    """Resolve a configuration with lam at the window midpoint.

    ``mode`` is ``"slab"`` (default thickness ``1e-6 sqrt(lam)``) or
    ``"surface"``.  Raises ``WindowEmptyError`` when no admissible lam
    exists, carrying the largest rho that would have worked.
    """
    if rho < RHO_MIN:
        raise InvalidParameterError(
            f"rho={rho} cannot cover the box spread of |xi|/lam; need rho >= {RHO_MIN}"
        )
    window = lambda_window(eps, rho, k)
    if window is None:
        rho_max = eps / (2.0 * k * math.pi)
        raise WindowEmptyError(
            f"resonance window empty for eps={eps}, rho={rho}, k={k}; "
            f"requires rho < {rho_max:.6g}",
            rho_max=rho_max,
        )
    root = (window[0] + window[1]) / 2.0
    lam = root * root
    if mode == "surface":
        if thickness is not None:
            raise InvalidParameterError("surface mode takes no thickness")
        slab = SlabSpec(thickness=None, amplitude=amplitude)
    elif mode == "slab":
        h = thickness if thickness is not None else DEFAULT_SLAB_FACTOR * math.sqrt(lam)
        slab = SlabSpec(thickness=h, amplitude=amplitude)
    else:
        raise InvalidParameterError(f"mode must be 'slab' or 'surface', got {mode!r}")
    return KnappParams(
        lam=lam, eps=eps, rho=rho, k=int(k), slab=slab, s_exp=s_exp, r_exp=r_exp, grid=tuple(grid)
    )


def a_hat(p: KnappParams, which: str, xi) -> float:
    """Fourier datum: indicator of 2W for ``a1``, amplitude times the
    indicator of -W' for ``a2``."""
    if which == "a1":
        return 1.0 if box_contains(p.w2_box, xi) else 0.0
    if which == "a2":
        return p.slab.amplitude if box_contains(p.neg_wprime_box, xi) else 0.0
    raise InvalidParameterError(f"which must be 'a1' or 'a2', got {which!r}")


def curl_parts(xi, a1_val: complex, a2_val: complex) -> tuple[np.ndarray, np.ndarray]:
    """Polynomial symbol vectors of the linearized curvature curl.

    Returns the two blocks (a1-borne, a2-borne), without the half-wave
    phase factors:

        a2 block: ((i xi1)(i xi2), -(i xi1)^2, 0) * a2
        a1 block: (-(i xi2)^2 - (i xi3)^2, (i xi1)(i xi2), (i xi1)(i xi3)) * a1

    Their sum equals ``-xi (xi . a) + |xi|^2 a`` for ``a = (a1, a2, 0)``
    whenever ``xi3 * a2 = 0``, i.e. on admissible planar data.
    """
    x1, x2, x3 = np.asarray(xi, dtype=float)
    a1_part = np.array(
        [(x2 * x2 + x3 * x3) * a1_val, -x1 * x2 * a1_val, -x1 * x3 * a1_val],
        dtype=complex,
    )
    a2_part = np.array([-x1 * x2 * a2_val, x1 * x1 * a2_val, 0.0], dtype=complex)
    return a1_part, a2_part


def curl_df_hat(p: KnappParams, xi) -> tuple[np.ndarray, np.ndarray]:
    """curl_parts evaluated on the actual box data at ``xi``."""
    xi = np.asarray(xi, dtype=float)
    if float(xi @ xi) == 0.0:
        raise SingularFrequencyError("curl symbol undefined at xi = 0")
    return curl_parts(xi, a_hat(p, "a1", xi), a_hat(p, "a2", xi))


@dataclass(frozen=True)
class BilinearKernel:
    """One admissible-support term of the bilinear interaction.

    ``weight(xi, eta)`` is the real kernel weight (signs folded in, so
    it is nonnegative when ``xi - eta`` lies in ``support_a`` and ``eta``
    in ``support_b``); ``code`` indexes the fast evaluation path.
    """

    label: str
    code: int
    support_a: Box3
    support_b: Box3
    alpha: float
    weight: Callable[[np.ndarray, np.ndarray], np.ndarray]


def kernels(p: KnappParams, which: str = "both") -> tuple[BilinearKernel, ...]:
    """The admissible-support terms for one or both transverse blocks.

    ``which`` is ``"axis2"``, ``"axis3"`` or ``"both"``: the two blocks
    are distinguished by which transverse axis enters the curvature
    factor.  Term 1 of each block carries the planar datum on the
    ``xi - eta`` slot; term 2 swaps the slots.
    """
    w2 = p.w2_box
    nwp = p.neg_wprime_box
    alpha = p.slab.amplitude

    def make(label: str, code: int, a: Box3, b: Box3) -> BilinearKernel:
        return BilinearKernel(
            label=label,
            code=code,
            support_a=a,
            support_b=b,
            alpha=alpha,
            weight=lambda xi, eta, _c=code: _kernels.term_weight(_c, xi, eta, alpha),
        )

    axis2 = (
        make("axis2.t1", 0, nwp, w2),
        make("axis2.t2", 1, w2, nwp),
    )
    axis3 = (
        make("axis3.t1", 2, nwp, w2),
        make("axis3.t2", 3, w2, nwp),
    )
    if which == "axis2":
        return axis2
    if which == "axis3":
        return axis3
    if which == "both":
        return axis2 + axis3
    raise InvalidParameterError(f"which must be 'axis2', 'axis3' or 'both', got {which!r}")
