"""Stability index of an unstable particle, by two independent routes.

Route 1 (empirical): the dimensionless ratio M/Gamma is matched against
2^n/n and the closest n is the index.

Route 2 (time-delay bound): positivity of the bracket in the per-resonance
partition inequality gives n0 >= log2(3*sqrt(3) * E*/Gamma); the index is
the first integer strictly greater than that bound.

All 2^n arithmetic is done in log space so ratios spanning ~27 orders of
magnitude (neutron through Delta) are handled without overflow.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import THREE_ROOT_THREE
from .resonance import DelayProfile, profile_time_delay

LN2 = math.log(2.0)

# Search range for the empirical index; 2^400/400 covers every known ratio.
N_MAX = 400


class RatioOutOfRange(ValueError):
    """Mass/width ratio falls outside the representable 2^n/n span."""


class SeriesDivergence(ValueError):
    """Geometric expansion of the closed-form bound diverges (n0 <= 5)."""


class BinCountOverflow(ValueError):
    """Requested dyadic partition exceeds the address budget."""


@dataclass(frozen=True)
class InequalityCheck:
    """One evaluated inequality: both sides, verdict, and which way it reads."""

    lhs: float
    rhs: float
    holds: bool
    context: str


@dataclass(frozen=True)
class IndexReport:
    """Per-particle result: ratio, both index routes, and their difference."""

    name: str
    ratio: float
    n_eq1: int
    n0_eq19: int

    @property
    def agrees_within(self) -> int:
        return abs(self.n_eq1 - self.n0_eq19)


def index_from_eq1(mass: float, width: float) -> int:
    """Empirical index: the n >= 1 whose 2^n/n is log-closest to mass/width.

    Ties break toward smaller n.  Works entirely in log space; the result
    is invariant under common rescaling of mass and width.
    """
    if not (mass > 0 and width > 0):
        raise ValueError("mass and width must be positive")
    log_ratio = math.log(mass) - math.log(width)
    if not (LN2 <= log_ratio <= N_MAX * LN2 - math.log(N_MAX)):
        raise RatioOutOfRange(
            f"log ratio {log_ratio:.4g} outside [log 2, log(2^{N_MAX}/{N_MAX})]")
    n = np.arange(1, N_MAX + 1)
    dist = np.abs(n * LN2 - np.log(n) - log_ratio)
    return int(n[np.argmin(dist)])  # argmin returns the first (smallest n) on ties


def index_lower_bound(estar: float, width: float,
                      slope_constant: float = THREE_ROOT_THREE) -> int:
    """Time-delay index: first integer strictly greater than
    log2(slope_constant * estar / width).

    An exact-integer bound b returns b + 1.  ``slope_constant`` exists as a
    perturbation hook for negative-control tests; physical value 3*sqrt(3).
    """
    if not (estar > 0 and width > 0):
        raise ValueError("estar and width must be positive")
    b = (math.log(slope_constant) + math.log(estar) - math.log(width)) / LN2
    # snap values that are an exact integer up to float rounding, so the
    # width = 3*sqrt(3)*estar corner returns 1 rather than 0
    if abs(b - round(b)) < 1e-9:
        b = round(b)
    return math.floor(b) + 1


def eq19_bound(estar: float, width: float,
               slope_constant: float = THREE_ROOT_THREE) -> float:
    """The real-valued bound log2(slope_constant * estar / width)."""
    return (math.log(slope_constant) + math.log(estar) - math.log(width)) / LN2


def check_bracket_inequality(estar: float, gamma: float, n0: int) -> InequalityCheck:
    """Per-resonance inequality: E*/Gamma >= (2^n0/n0) * [1 - 3*sqrt(3)*E*/(2^n0*Gamma)].

    The left side is E* tau0 / hbar with tau0 = hbar/Gamma.  When
    2^n0 < 3*sqrt(3)*E*/Gamma the bracket is negative and the inequality
    holds trivially.
    """
    if not (estar > 0 and gamma > 0 and n0 >= 1):
        raise ValueError("require estar > 0, gamma > 0, n0 >= 1")
    lhs = estar / gamma
    pow_n0 = math.pow(2.0, n0)
    rhs = (pow_n0 / n0) * (1.0 - THREE_ROOT_THREE * estar / (pow_n0 * gamma))
    return InequalityCheck(lhs, rhs, lhs >= rhs,
                           "E*/Gamma >= (2^n0/n0)[1 - 3sqrt3 E*/(2^n0 Gamma)]")


def bracket_is_positive(estar: float, gamma: float, n0: int) -> bool:
    """Whether the square bracket 1 - 3*sqrt(3)*E*/(2^n0*Gamma) is positive.

    Equivalent to n0 > log2(3*sqrt(3)*E*/Gamma); evaluated in log space so
    it is exact for neutron-scale ratios.
    """
    return n0 > eq19_bound(estar, gamma)


def series_lower_bound(n0: int) -> float:
    """Closed form of the geometric resummation: 2^n0 / (n0 + 3*sqrt(3))."""
    if n0 < 1:
        raise ValueError("n0 must be >= 1")
    return math.pow(2.0, n0) / (n0 + THREE_ROOT_THREE)


def series_partial_sum(n0: int, terms: int) -> float:
    """Partial sum (2^n0/n0) * sum_k (-3*sqrt(3)/n0)^k, k < terms.

    Converges to series_lower_bound(n0) only for n0 > 3*sqrt(3); smaller
    n0 raises SeriesDivergence (use the closed form instead).
    """
    if n0 <= THREE_ROOT_THREE:
        raise SeriesDivergence(
            f"geometric ratio 3sqrt3/{n0} >= 1; series diverges for n0 <= 5")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    q = -THREE_ROOT_THREE / n0
    return (math.pow(2.0, n0) / n0) * (1.0 - q ** terms) / (1.0 - q)


def check_partition_inequality(estar: float, p: DelayProfile, n: int,
                               start_bin: int = 0) -> InequalityCheck:
    """Riemann-sum bound on [0, E*] split into 2^n equal bins.

    Takes the n consecutive bins J_1..J_n starting at ``start_bin``, samples
    the delay at each bin midpoint, and compares
    |n_R * 2*pi - sum_j q(E_j) dE| against M * E* * dE where M is the
    profile's maximum delay slope (narrowest resonance dominates) and n_R
    counts resonances whose position lies in the covered bins.  Bins are
    addressed arithmetically, never materialized.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 62:
        raise BinCountOverflow(f"2^{n} bins exceed the 2^62 address budget")
    if not 0 <= start_bin <= 2 ** n - n:
        raise ValueError(f"start_bin {start_bin} out of range for n={n}")
    if estar <= 0:
        raise ValueError("estar must be positive")
    width = estar / 2.0 ** n
    lo = start_bin * width
    hi = (start_bin + n) * width
    mids = lo + (np.arange(n) + 0.5) * width
    riemann = float(np.sum(profile_time_delay(mids, p)) * width)
    n_r = sum(1 for r in p.resonances if lo <= r.e0 < hi)
    lhs = abs(n_r * 2.0 * math.pi - riemann)
    slope_max = max((THREE_ROOT_THREE / (r.gamma * r.gamma) for r in p.resonances),
                    default=0.0)
    rhs = slope_max * estar * width
    return InequalityCheck(lhs, rhs, lhs <= rhs,
                           "|n_R 2pi - Riemann sum| <= M E* max(dE)")


def build_index_report(rec) -> IndexReport:
    """Compute both index routes for one catalog record."""
    width = rec.width_mev
    return IndexReport(
        name=rec.name,
        ratio=rec.mass_mev / width,
        n_eq1=index_from_eq1(rec.mass_mev, width),
        n0_eq19=index_lower_bound(rec.mass_mev, width),
    )
