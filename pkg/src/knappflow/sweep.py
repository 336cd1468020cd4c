"""Window sweeps, log-log exponent fits, and the smoothness verdict.

A sweep walks the window indices k, builds the configuration for each
nonempty window, evaluates the amplitude on the 3x3x3 sampling lattice,
and collects per-window scalars (sup amplitude, resonant/nonresonant
parts at the argmax, data norms, output-norm lower bound).  Ordinary
least squares on (log lambda, log value) turns the scalars into measured
exponents, and the verdict compares the measured ratio exponent against
the analytic prediction s - 1 - 2r.

Windows that are empty at the requested rho are skipped with a
``window_empty`` flag rather than aborting the sweep; flagged records
are excluded from fits and listed in the verdict notes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import (
    AmplitudeBreakdown,
    NormReport,
    lambda_hat,
    norm_report,
    output_norm_from_samples,
    sample_lattice,
)
from .construction import DEFAULT_GRID, KnappParams, make_params
from .errors import FitDataError, InvalidParameterError, WindowEmptyError

# Flags whose presence drops a record from exponent fits.  Everything
# else (for example the formal-surface-norm marker) is informational.
EXCLUDING_FLAG_PREFIXES = ("window_empty", "nonconverged")

VERDICT_MARGIN = 0.05

CSV_COLUMNS = (
    "k",
    "lambda",
    "t",
    "sup_amp",
    "res_amp",
    "nonres_amp",
    "norm_d2a1",
    "norm_d1a2",
    "norm_product",
    "norm_total",
    "output_norm",
    "mode",
    "flags",
)

_NAN_NORMS = NormReport(
    norm_d2a1=math.nan,
    norm_d1a2=math.nan,
    norm_product=math.nan,
    norm_total=math.nan,
    norm_output_lower=math.nan,
)


@dataclass(frozen=True)
class SweepRecord:
    """Scalars measured at one window index."""

    k: int
    lam: float
    t: float
    sup_amp: float
    res_amp: float
    nonres_amp: float
    nonres_envelope: float
    output_norm: float
    norms: NormReport
    mode: str
    flags: tuple[str, ...] = ()

    def is_excluded(self) -> bool:
        return any(f.startswith(EXCLUDING_FLAG_PREFIXES) for f in self.flags)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class Verdict:
    s_exp: float
    r_exp: float
    measured_ratio_exponent: float
    analytic_ratio_exponent: float
    smooth_bound_fails: bool
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class WindowSamples:
    """One window's cached lattice evaluation, reusable across (s, r)."""

    k: int
    params: KnappParams | None
    lattice_axes: tuple[np.ndarray, ...]
    breakdowns: tuple[AmplitudeBreakdown, ...]
    flags: tuple[str, ...] = ()


def sweep_core(
    eps: float,
    rho: float,
    k_list,
    mode: str = "slab",
    grid: tuple[int, int, int] = DEFAULT_GRID,
    thickness: float | None = None,
    amplitude: float = 1.0,
    lattice_n: int = 3,
) -> list[WindowSamples]:
    """Evaluate the amplitude lattice for each window index.

    The expensive oscillatory quadrature happens here exactly once per
    k; records for any (s, r) pair are derived from the result without
    re-integration.
    """
    ks = [int(k) for k in k_list]
    if not ks:
        raise InvalidParameterError("k_list must be nonempty")
    cores: list[WindowSamples] = []
    n_empty = 0
    for k in ks:
        try:
            p = make_params(
                eps=eps,
                rho=rho,
                k=k,
                mode=mode,
                grid=grid,
                thickness=thickness,
                amplitude=amplitude,
            )
        except WindowEmptyError:
            n_empty += 1
            cores.append(
                WindowSamples(
                    k=k,
                    params=None,
                    lattice_axes=(),
                    breakdowns=(),
                    flags=("window_empty",),
                )
            )
            continue
        axes, pts = sample_lattice(p.samp_box, lattice_n)
        breakdowns = tuple(lambda_hat(p, pt) for pt in pts)
        cores.append(
            WindowSamples(
                k=k,
                params=p,
                lattice_axes=tuple(axes),
                breakdowns=breakdowns,
            )
        )
    if n_empty == len(ks):
        raise InvalidParameterError(
            f"every window k={ks} is empty at rho={rho}; decrease rho"
        )
    return cores


def records_from_core(
    cores: list[WindowSamples], s_exp: float, r_exp: float
) -> list[SweepRecord]:
    """Derive sweep records for one (s, r) pair from cached lattices."""
    records: list[SweepRecord] = []
    for core in cores:
        if core.params is None:
            records.append(
                SweepRecord(
                    k=core.k,
                    lam=math.nan,
                    t=math.nan,
                    sup_amp=math.nan,
                    res_amp=math.nan,
                    nonres_amp=math.nan,
                    nonres_envelope=math.nan,
                    output_norm=math.nan,
                    norms=_NAN_NORMS,
                    mode="none",
                    flags=core.flags,
                )
            )
            continue
        p = core.params
        amps = np.array([abs(b.total) for b in core.breakdowns])
        j = int(np.argmax(amps))
        top = core.breakdowns[j]
        flags: list[str] = list(core.flags)
        for b in core.breakdowns:
            for f in b.flags:
                if f not in flags:
                    flags.append(f)
        if p.slab.mode == "surface":
            flags.append("surface_norm_formal")
        out = output_norm_from_samples(p, s_exp, list(core.lattice_axes), amps)
        norms = norm_report(p, r=r_exp, s=s_exp, output_lower=out)
        records.append(
            SweepRecord(
                k=core.k,
                lam=p.lam,
                t=p.t,
                sup_amp=float(amps[j]),
                res_amp=abs(top.resonant_sum),
                nonres_amp=abs(top.nonresonant_sum),
                nonres_envelope=top.nonresonant_envelope,
                output_norm=out,
                norms=norms,
                mode=p.slab.mode,
                flags=tuple(flags),
            )
        )
    return records


def run_sweep(
    eps: float,
    rho: float,
    s_exp: float,
    r_exp: float,
    k_list,
    mode: str = "slab",
    grid: tuple[int, int, int] = DEFAULT_GRID,
    thickness: float | None = None,
    amplitude: float = 1.0,
) -> list[SweepRecord]:
    """Full sweep over the window indices for one (s, r) pair."""
    ks = [int(k) for k in k_list]
    if len(ks) < 3:
        raise InvalidParameterError(
            f"need at least 3 window indices for a sweep, got {len(ks)}"
        )
    cores = sweep_core(
        eps, rho, ks, mode=mode, grid=grid, thickness=thickness, amplitude=amplitude
    )
    return records_from_core(cores, s_exp, r_exp)


# ---------------------------------------------------------------------------
# Fits and verdict
# ---------------------------------------------------------------------------

def fit_exponent(points) -> FitResult:
    """Least-squares power-law exponent through (lambda, value) pairs."""
    pts = [(float(lam), float(v)) for lam, v in points]
    if len(pts) < 3:
        raise FitDataError(f"exponent fit needs at least 3 points, got {len(pts)}")
    for lam, v in pts:
        if not (v > 0.0) or not math.isfinite(v) or not math.isfinite(lam) or lam <= 0.0:
            raise FitDataError(
                f"exponent fit requires positive finite values; offending point "
                f"(lambda={lam!r}, value={v!r})"
            )
    x = np.log(np.array([p[0] for p in pts]))
    y = np.log(np.array([p[1] for p in pts]))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_sq = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return FitResult(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=min(max(r_sq, 0.0), 1.0),
        n_points=len(pts),
    )


def _usable(records: list[SweepRecord]) -> list[SweepRecord]:
    return [r for r in records if not r.is_excluded()]


def standard_fits(records: list[SweepRecord]) -> dict[str, FitResult]:
    """The three exponent fits reported with every sweep."""
    usable = _usable(records)
    return {
        "sup_amp": fit_exponent([(r.lam, r.sup_amp) for r in usable]),
        "output_norm": fit_exponent([(r.lam, r.output_norm) for r in usable]),
        "norm_total": fit_exponent([(r.lam, r.norms.norm_total) for r in usable]),
    }


def smoothness_verdict(
    s_exp: float,
    r_exp: float,
    records: list[SweepRecord],
    margin: float = VERDICT_MARGIN,
) -> Verdict:
    """Compare the measured growth ratio against the analytic exponent.

    The measured ratio exponent is slope(output_norm) - 2*slope(norm_total):
    the log-lambda growth rate of output size over squared input size.  A
    value above ``margin`` means the quadratic flow-map bound cannot hold
    with constants uniform in lambda.
    """
    usable = _usable(records)
    if len(usable) < 3:
        raise FitDataError(
            f"verdict needs at least 3 unflagged records, got {len(usable)}"
        )
    f_out = fit_exponent([(r.lam, r.output_norm) for r in usable])
    f_tot = fit_exponent([(r.lam, r.norms.norm_total) for r in usable])
    measured = f_out.slope - 2.0 * f_tot.slope
    analytic = s_exp - 1.0 - 2.0 * r_exp
    notes = []
    for r in records:
        if r.is_excluded():
            notes.append(f"k={r.k} excluded from fits: {';'.join(r.flags)}")
    if abs(measured - analytic) > 0.1:
        notes.append(
            f"measured ratio exponent {measured:.4f} deviates from analytic "
            f"{analytic:.4f} by more than 0.1"
        )
    return Verdict(
        s_exp=s_exp,
        r_exp=r_exp,
        measured_ratio_exponent=measured,
        analytic_ratio_exponent=analytic,
        smooth_bound_fails=bool(measured > margin),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def csv_lines(records: list[SweepRecord]) -> list[str]:
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                [
                    str(r.k),
                    _fmt(r.lam),
                    _fmt(r.t),
                    _fmt(r.sup_amp),
                    _fmt(r.res_amp),
                    _fmt(r.nonres_amp),
                    _fmt(r.norms.norm_d2a1),
                    _fmt(r.norms.norm_d1a2),
                    _fmt(r.norms.norm_product),
                    _fmt(r.norms.norm_total),
                    _fmt(r.output_norm),
                    r.mode,
                    ";".join(r.flags),
                ]
            )
        )
    return lines


def write_csv(records: list[SweepRecord], path_or_file) -> None:
    """Write records as CSV; identical records give identical bytes."""
    text = "\n".join(csv_lines(records)) + "\n"
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        with open(path_or_file, "w", newline="") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)


def _num(x: float):
    x = float(x)
    return None if math.isnan(x) else x


def record_to_dict(r: SweepRecord) -> dict:
    return {
        "k": r.k,
        "lambda": _num(r.lam),
        "t": _num(r.t),
        "sup_amp": _num(r.sup_amp),
        "res_amp": _num(r.res_amp),
        "nonres_amp": _num(r.nonres_amp),
        "nonres_envelope": _num(r.nonres_envelope),
        "norm_d2a1": _num(r.norms.norm_d2a1),
        "norm_d1a2": _num(r.norms.norm_d1a2),
        "norm_product": _num(r.norms.norm_product),
        "norm_total": _num(r.norms.norm_total),
        "output_norm": _num(r.output_norm),
        "mode": r.mode,
        "flags": list(r.flags),
    }


def build_report(
    records: list[SweepRecord],
    s_exp: float,
    r_exp: float,
    params: dict,
) -> dict:
    """JSON-ready sweep report: params, records, fits, verdict."""
    fits = standard_fits(records)
    verdict = smoothness_verdict(s_exp, r_exp, records)
    return {
        "schema": 1,
        "params": params,
        "records": [record_to_dict(r) for r in records],
        "fits": {
            name: {
                "slope": f.slope,
                "intercept": f.intercept,
                "r_squared": f.r_squared,
                "n_points": f.n_points,
            }
            for name, f in fits.items()
        },
        "verdict": {
            "s": verdict.s_exp,
            "r": verdict.r_exp,
            "measured_ratio_exponent": verdict.measured_ratio_exponent,
            "analytic_ratio_exponent": verdict.analytic_ratio_exponent,
            "smooth_bound_fails": verdict.smooth_bound_fails,
            "notes": list(verdict.notes),
        },
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path_or_file) -> None:
    text = report_json(report)
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        with open(path_or_file, "w") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)
