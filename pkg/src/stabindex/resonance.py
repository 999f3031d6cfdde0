"""Breit-Wigner time-delay functions and resonance counting.

All energies are in MeV and all times are in units of hbar/MeV, i.e. the
functions below set hbar = 1.  Multiply by ``constants.HBAR_MEV_S`` to get
seconds.  ``sojourn_time`` is the one exception: it works in natural units
2m = hbar = 1, so k = sqrt(E) and v = 2k.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .constants import THREE_ROOT_THREE


class NonFiniteWindow(ValueError):
    """Integration window has an infinite or NaN bound."""


class QuadratureFailure(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ZeroEnergy(ValueError):
    """Sojourn time is undefined at E = 0 (v = 0)."""


@dataclass(frozen=True)
class Resonance:
    """A quasistationary state: position e0 and full width gamma, in MeV."""

    e0: float
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.e0):
            raise ValueError(f"resonance position must be finite, got {self.e0}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"width must be positive and finite, got {self.gamma}")


@dataclass(frozen=True)
class DelayProfile:
    """A sum of Breit-Wigner delay terms over a finite energy window."""

    resonances: tuple = ()
    window: tuple = (0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "resonances", tuple(self.resonances))
        lo, hi = self.window
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise NonFiniteWindow(f"window bounds must be finite, got {self.window}")
        if not lo < hi:
            raise ValueError(f"window must satisfy lo < hi, got {self.window}")


def bw_phase_shift(e, r: Resonance, phi: float = 0.0):
    """Resonant phase shift, continuous and rising by pi across the resonance.

    Equals phi - arctan((gamma/2)/(e - e0)) on the branch that runs from
    phi (far below) to phi + pi (far above); e = e0 maps to phi + pi/2.
    """
    return phi + 0.5 * np.pi + np.arctan(2.0 * (np.asarray(e, float) - r.e0) / r.gamma)


def bw_time_delay(e, r: Resonance):
    """Lorentzian delay gamma / ((e - e0)^2 + (gamma/2)^2), hbar = 1."""
    x = np.asarray(e, float) - r.e0
    return r.gamma / (x * x + 0.25 * r.gamma * r.gamma)


def bw_delay_derivative(e, r: Resonance):
    """Exact derivative of bw_time_delay with respect to energy."""
    x = np.asarray(e, float) - r.e0
    d = x * x + 0.25 * r.gamma * r.gamma
    return -2.0 * r.gamma * x / (d * d)


def profile_time_delay(e, p: DelayProfile):
    """Total delay of a profile: sum of its Breit-Wigner terms."""
    e = np.asarray(e, float)
    out = np.zeros_like(e)
    for r in p.resonances:
        out = out + bw_time_delay(e, r)
    return out


def delay_profile_max_slope(r: Resonance, method: str = "analytic"):
    """Location and value of the maximum of d(delay)/dE for one resonance.

    Analytic answer: (e0 - gamma/(2*sqrt(3)), 3*sqrt(3)/gamma^2).  The
    numeric mode brackets the extremum of bw_delay_derivative and must
    agree with the analytic pair to ~1e-6 relative.
    """
    if method == "analytic":
        loc = r.e0 - r.gamma / (2.0 * math.sqrt(3.0))
        return loc, THREE_ROOT_THREE / (r.gamma * r.gamma)
    if method == "numeric":
        res = optimize.minimize_scalar(
            lambda e: -bw_delay_derivative(e, r),
            bounds=(r.e0 - r.gamma, r.e0),
            method="bounded",
            options={"xatol": r.gamma * 1e-12},
        )
        return float(res.x), float(-res.fun)
    raise ValueError(f"unknown method {method!r}")


def lorentzian_antiderivative(e, r: Resonance):
    """Closed-form antiderivative of bw_time_delay: 2*arctan(2(e - e0)/gamma)."""
    return 2.0 * np.arctan(2.0 * (np.asarray(e, float) - r.e0) / r.gamma)


def integrate_time_delay(p: DelayProfile, rel_tol: float = 1e-9,
                         subdivision_limit: int = 500, method: str = "quadrature"):
    """Integral of the profile delay over its window, in units of hbar.

    ``method="quadrature"`` uses adaptive quadrature with split points at
    each resonance position; ``method="analytic"`` sums the closed-form
    antiderivatives and serves as the independent cross-check.
    """
    lo, hi = p.window
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise NonFiniteWindow(f"window bounds must be finite, got {p.window}")
    if not p.resonances:
        return 0.0
    if method == "analytic":
        return float(sum(
            lorentzian_antiderivative(hi, r) - lorentzian_antiderivative(lo, r)
            for r in p.resonances))
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    points = [r.e0 for r in p.resonances if lo < r.e0 < hi]
    with warnings.catch_warnings():
        # tolerance failures surface as QuadratureFailure below instead
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            lambda e: float(profile_time_delay(e, p)),
            lo, hi, points=points or None,
            epsabs=0.0, epsrel=rel_tol, limit=subdivision_limit,
        )
    if abs(err) > 10.0 * rel_tol * max(abs(val), 1e-300):
        raise QuadratureFailure(
            f"quadrature error estimate {err:.3e} exceeds tolerance for result {val:.6e}")
    return float(val)


def count_resonances(p: DelayProfile, **kwargs):
    """Delay integral in units of 2*pi*hbar; near-integer for wide windows.

    One isolated resonance fully inside the window counts as 1 (the
    Lorentzian integrates to 2*pi*hbar over the whole line).
    """
    if not p.resonances:
        return 0.0
    return integrate_time_delay(p, **kwargs) / (2.0 * np.pi)


def sojourn_time(e: float, a: float, delta: float, ddelta_dk: float) -> float:
    """Mean time spent inside a sphere of radius a, natural units 2m = hbar = 1.

    T(E, a) = (2/v) * [d(delta)/dk + a - sin(2(ka + delta))/(2k)] with
    k = sqrt(E), v = 2k.
    """
    if e == 0:
        raise ZeroEnergy("sojourn time diverges at threshold (v = 0)")
    if e < 0 or a <= 0:
        raise ValueError("require e > 0 and a > 0")
    k = math.sqrt(e)
    v = 2.0 * k
    return (2.0 / v) * (ddelta_dk + a - math.sin(2.0 * (k * a + delta)) / (2.0 * k))
