"""Dyadic bisection of an energy interval and resonance localization.

The interval [0, E*] is halved recursively into 2^n equal cells.  Cells are
addressed arithmetically by (depth, index) so depths of order 200 cost
nothing; no tree is ever built.  Two separate criteria are reported for
each resonance:

* isolation depth - first depth at which its cell contains no other
  resonance position;
* resolution depth - first depth at which the cell width drops to the
  resonance width, i.e. ceil(log2(E*/Gamma)).

Cell membership is computed with exact rational arithmetic, so boundaries
follow the half-open convention [lo, hi) without floating fuzz.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .resonance import Resonance


class ResonanceOutsideWindow(ValueError):
    """A resonance position lies outside (0, E*)."""


class DuplicatePosition(ValueError):
    """Two resonances share the same position; they can never be isolated."""


class DepthBudgetExceeded(RuntimeError):
    """Positions too close to separate within the depth budget."""


@dataclass(frozen=True)
class DyadicCell:
    """Cell ``index`` of the 2^depth equal subdivisions of [0, E*]."""

    depth: int
    index: int

    def __post_init__(self):
        if self.depth < 0 or not 0 <= self.index < 2 ** self.depth:
            raise ValueError(f"invalid cell ({self.depth}, {self.index})")

    def bounds(self, estar: float):
        w = estar / 2.0 ** self.depth
        return self.index * w, (self.index + 1) * w

    def children(self):
        return (DyadicCell(self.depth + 1, 2 * self.index),
                DyadicCell(self.depth + 1, 2 * self.index + 1))


@dataclass(frozen=True)
class LocationResult:
    resonance: Resonance
    isolation_depth: int
    resolution_depth: int


def cell_index(estar: float, depth: int, e0: float) -> int:
    """Index of the depth-n cell containing e0, exact half-open [lo, hi)."""
    return math.floor(Fraction(e0) * (1 << depth) / Fraction(estar))


def depth_for_width(estar: float, gamma: float) -> int:
    """Smallest n with E*/2^n <= Gamma, i.e. ceil(log2(E*/Gamma)).

    Exact powers of two return log2 exactly (no off-by-one from float log).
    """
    if not 0 < gamma <= estar:
        raise ValueError("require 0 < gamma <= estar")
    ratio = Fraction(estar) / Fraction(gamma)
    n = max(0, math.ceil(math.log2(float(ratio))))
    # float log2 can land one off at exact-power boundaries; fix exactly
    while (1 << n) < ratio:
        n += 1
    while n > 0 and (1 << (n - 1)) >= ratio:
        n -= 1
    return n


def locate(estar: float, resonances, max_depth: int = 200):
    """Isolation and resolution depth for each resonance in [0, E*].

    Deterministic and permutation-invariant: results are returned in input
    order and depend only on the set of positions.
    """
    resonances = list(resonances)
    for r in resonances:
        if not 0 < r.e0 < estar:
            raise ResonanceOutsideWindow(f"position {r.e0} outside (0, {estar})")
        if r.gamma > estar:
            raise ValueError(f"width {r.gamma} exceeds window {estar}")
    positions = [r.e0 for r in resonances]
    if len(set(positions)) != len(positions):
        raise DuplicatePosition("resonance positions must be pairwise distinct")

    isolation = {}
    pending = set(range(len(resonances)))
    depth = 0
    while pending:
        if depth > max_depth:
            raise DepthBudgetExceeded(
                f"positions not separated within depth {max_depth}")
        cells = [cell_index(estar, depth, e0) for e0 in positions]
        counts = {}
        for c in cells:
            counts[c] = counts.get(c, 0) + 1
        for i in list(pending):
            if counts[cells[i]] == 1:
                isolation[i] = depth
                pending.discard(i)
        depth += 1

    return [LocationResult(r, isolation[i], depth_for_width(estar, r.gamma))
            for i, r in enumerate(resonances)]
