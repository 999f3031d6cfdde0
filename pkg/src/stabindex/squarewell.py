"""Attractive spherical square well: phase shifts, bound states, time delay.

Natural units 2m = hbar = 1, so E = k^2 and the radial equation reads
u'' + (E + V0 - l(l+1)/r^2) u = 0 inside r < R.  Partial waves l = 0 and
l = 1 are supported; l = 1 develops a shape resonance behind the
centrifugal barrier when V0 is just below (pi/R)^2.

Phase conventions: delta is branch-tracked to be continuous in k with
delta(k -> infinity) = 0, so Levinson's theorem reads delta(0+) = pi * n_B.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import curve_fit
from scipy.signal import find_peaks
from scipy.special import spherical_jn, spherical_yn

from .index import InequalityCheck


class OutOfSpan(ValueError):
    """Requested energy lies outside the sampled curve."""


@dataclass(frozen=True)
class SquareWell:
    """Well depth V0 > 0, radius R > 0, partial wave ell in {0, 1}."""

    depth: float
    radius: float
    ell: int = 0

    def __post_init__(self):
        if not (self.depth > 0 and math.isfinite(self.depth)):
            raise ValueError(f"depth must be positive and finite, got {self.depth}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        if self.ell not in (0, 1):
            raise ValueError(f"only ell in {{0, 1}} supported, got {self.ell}")


def swave_phase_closed_form(depth: float, radius: float, k):
    """Exact continuous s-wave phase: -kR + the unwrapped arctan((k/K) tan KR).

    The arctan term is pinned to the branch nearest KR, which keeps delta
    continuous through every tangent pole and makes delta(infinity) -> 0
    hold identically.
    """
    k = np.asarray(k, float)
    bigk = np.sqrt(k * k + depth)
    theta = bigk * radius
    w = np.arctan2(k * np.sin(theta), bigk * np.cos(theta))
    unwrapped = theta + np.mod(w - theta + np.pi, 2.0 * np.pi) - np.pi
    return -k * radius + unwrapped


def phase_shift_mod_pi(well: SquareWell, k):
    """Phase shift modulo pi from spherical-Bessel matching at r = R.

    Pole-free: interior and exterior log-derivatives are combined without
    dividing by j_l(KR), and the branch is resolved by arctan2.
    """
    k = np.asarray(k, float)
    bigk = np.sqrt(k * k + well.depth)
    kr, br = k * well.radius, bigk * well.radius
    l = well.ell
    j_in, dj_in = spherical_jn(l, br), spherical_jn(l, br, derivative=True)
    num = k * spherical_jn(l, kr, derivative=True) * j_in \
        - bigk * dj_in * spherical_jn(l, kr)
    den = k * spherical_yn(l, kr, derivative=True) * j_in \
        - bigk * dj_in * spherical_yn(l, kr)
    return np.mod(np.arctan2(num, den), np.pi)


def phase_shift(well: SquareWell, k):
    """Continuous phase shift with delta(infinity) = 0.

    ell = 0 uses the closed form; ell = 1 is evaluated off a branch-tracked
    curve built on demand (use PhaseShiftCurve directly for many points).
    """
    if well.ell == 0:
        return swave_phase_closed_form(well.depth, well.radius, k)
    kmax_needed = 1.1 * float(np.max(np.asarray(k, float)))
    curve = PhaseShiftCurve.build(well, k_max=max(kmax_needed, _default_kmax(well)))
    return curve.delta_at(k)


def _default_kmax(well: SquareWell) -> float:
    # floor keeps the span usable for very shallow wells
    return max(1e3 * math.sqrt(well.depth), 20.0 / well.radius)


def _unwrap_mod_pi(raw):
    """Snap each mod-pi sample to the branch nearest its predecessor."""
    out = np.empty_like(raw)
    out[0] = raw[0]
    for i in range(1, len(raw)):
        out[i] = raw[i] + math.pi * round((out[i - 1] - raw[i]) / math.pi)
    return out


@dataclass(frozen=True)
class PhaseShiftCurve:
    """Branch-tracked samples (k, delta) with delta(k_max) anchored near 0."""

    k: np.ndarray
    delta: np.ndarray

    @classmethod
    def build(cls, well: SquareWell, k_min: float = None, k_max: float = None,
              points_per_decade: int = 400, max_refine: int = 12,
              step_tol: float = 0.1):
        """Adaptive log grid, refined until adjacent phase steps are small.

        Refinement bisects every interval whose |delta step| exceeds
        ``step_tol`` (well below the pi/2 continuity requirement), which
        resolves narrow resonances automatically.
        """
        if k_min is None:
            k_min = 1e-4 / well.radius
        if k_max is None:
            k_max = _default_kmax(well)
        n = max(64, int(points_per_decade * math.log10(k_max / k_min)))
        k = np.geomspace(k_min, k_max, n)
        raw = phase_shift_mod_pi(well, k)
        for _ in range(max_refine):
            delta = _unwrap_mod_pi(raw)
            bad = np.flatnonzero(np.abs(np.diff(delta)) > step_tol)
            if bad.size == 0:
                break
            mids = np.sqrt(k[bad] * k[bad + 1])
            k = np.sort(np.concatenate([k, mids]))
            raw = phase_shift_mod_pi(well, k)
        delta = _unwrap_mod_pi(raw)
        delta = delta - math.pi * round(delta[-1] / math.pi)
        return cls(k=k, delta=delta)

    def delta_at(self, k):
        k = np.asarray(k, float)
        if np.any(k < self.k[0]) or np.any(k > self.k[-1]):
            raise OutOfSpan("k outside sampled range")
        return CubicSpline(self.k, self.delta)(k)

    def energy_span(self):
        return self.k[0] ** 2, self.k[-1] ** 2

    def write_phase_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "delta"])
            for ki, di in zip(self.k, self.delta):
                w.writerow([repr(float(ki)), repr(float(di))])


def numeric_time_delay(curve: PhaseShiftCurve, e):
    """Time delay q = 2 d(delta)/dE = delta'(k)/k from the sampled curve."""
    e = np.asarray(e, float)
    lo, hi = curve.energy_span()
    if np.any(e < lo) or np.any(e > hi):
        raise OutOfSpan(f"energy outside sampled span [{lo:.3e}, {hi:.3e}]")
    k = np.sqrt(e)
    dddk = CubicSpline(curve.k, curve.delta).derivative()(k)
    return dddk / k


def write_delay_csv(curve: PhaseShiftCurve, path, e_grid):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["E", "delay"])
        for ei, qi in zip(e_grid, numeric_time_delay(curve, e_grid)):
            w.writerow([repr(float(ei)), repr(float(qi))])


def bound_state_count(well: SquareWell, scan_points: int = 40001) -> int:
    """Number of bound states by sign-change scan of the matching condition.

    ell = 0: roots of K cos(KR) + kappa sin(KR) = 0 with K^2 + kappa^2 = V0.
    ell = 1: roots of K j1'(KR) - beta_out(kappa) j1(KR) = 0 where beta_out
    is the log-derivative of the decaying exterior solution.
    Independent of any phase-shift computation.
    """
    v0, r = well.depth, well.radius
    if well.ell == 0:
        bigk = np.linspace(1e-12, math.sqrt(v0), scan_points)[1:-1]
        kappa = np.sqrt(np.maximum(v0 - bigk * bigk, 0.0))
        f = bigk * np.cos(bigk * r) + kappa * np.sin(bigk * r)
    else:
        eb = np.linspace(0.0, v0, scan_points)[1:-1]
        kappa = np.sqrt(eb)
        bigk = np.sqrt(v0 - eb)
        beta_out = -kappa - (kappa * r + 2.0) / (r * (kappa * r + 1.0))
        f = bigk * spherical_jn(1, bigk * r, derivative=True) \
            - beta_out * spherical_jn(1, bigk * r)
    return int(np.sum(np.sign(f[:-1]) * np.sign(f[1:]) < 0))


def levinson_check(well: SquareWell, tol: float = 0.05,
                   k_min: float = None) -> InequalityCheck:
    """Compare delta(0+) from the branch-tracked curve against pi * n_B.

    The two sides come from independent computations: the phase-shift curve
    anchored at delta(k_max) ~ 0, and the bound-state matching equation.
    """
    curve = PhaseShiftCurve.build(well, k_min=k_min)
    n_b = bound_state_count(well)
    lhs = float(curve.delta[0])
    rhs = math.pi * n_b
    return InequalityCheck(lhs, rhs, abs(lhs - rhs) < tol,
                           f"|delta(0+) - pi n_B| < {tol}")


def _lorentzian(e, e0, gamma):
    return gamma / ((e - e0) ** 2 + 0.25 * gamma * gamma)


def fit_delay_peak(curve: PhaseShiftCurve, e_grid, q):
    """Least-squares Breit-Wigner fit around the tallest delay peak.

    Returns (e0, gamma) or None when no significant peak is present.
    """
    q = np.asarray(q, float)
    floor = max(np.max(np.abs(q)) * 0.25, 1e-6)
    peaks, _ = find_peaks(q, height=floor, prominence=floor)
    if peaks.size == 0:
        return None
    i = peaks[np.argmax(q[peaks])]
    e0_guess = float(e_grid[i])
    gamma_guess = 4.0 / float(q[i])
    mask = np.abs(e_grid - e0_guess) <= 3.0 * gamma_guess
    try:
        popt, _ = curve_fit(_lorentzian, e_grid[mask], q[mask],
                            p0=[e0_guess, gamma_guess])
    except RuntimeError:
        return None
    e0, gamma = float(popt[0]), abs(float(popt[1]))
    if not (0 < e0 and 0 < gamma < e0 + gamma):
        return None
    return e0, gamma


def resonance_scan(well: SquareWell, e_max: float, e_min: float = 1e-8,
                   grid_size: int = 20000):
    """Integrated delay count on (e_min, e_max] plus fitted resonance list.

    The count is the delay integral over the window in units of 2*pi; since
    q = 2 d(delta)/dE this equals (delta(e_max) - delta(e_min)) / pi.
    """
    if e_max <= e_min:
        raise ValueError("require e_max > e_min")
    k_max = max(_default_kmax(well), 1.2 * math.sqrt(e_max))
    curve = PhaseShiftCurve.build(well, k_min=math.sqrt(e_min), k_max=k_max)
    d_lo = curve.delta_at(math.sqrt(e_min))
    d_hi = curve.delta_at(math.sqrt(e_max))
    count = float(d_hi - d_lo) / math.pi
    e_grid = np.geomspace(e_min, e_max, grid_size)
    q = numeric_time_delay(curve, e_grid)
    fit = fit_delay_peak(curve, e_grid, q)
    resonances = [fit] if fit is not None and fit[0] <= e_max else []
    return count, resonances
