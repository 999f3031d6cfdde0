"""Locating resonances by recursive bisection of the energy interval.

[0, E*] is halved into 2^n cells; a resonance is *isolated* once its cell
holds no other resonance position and *resolved* once the cell width drops
to its own width.  Narrower resonances need exponentially more cells,
which is where the 2^n in the stability index comes from.
"""

from stabindex import Resonance, depth_for_width, locate

estar = 1000.0
resonances = [
    Resonance(300.0, 100.0),   # broad
    Resonance(700.0, 1.0),     # narrow
    Resonance(710.0, 0.01),    # narrow and close to its neighbour
]

print(f"window [0, {estar}] MeV")
for result in locate(estar, resonances):
    r = result.resonance
    print(f"  E0={r.e0:6.1f} Gamma={r.gamma:6.2f}: isolated at depth "
          f"{result.isolation_depth}, resolved at depth {result.resolution_depth} "
          f"(cell width {estar / 2 ** result.resolution_depth:.4f})")

print("\nresolution depth vs width at fixed E* (monotone):")
for gamma in (100.0, 1.0, 1e-5, 7.43e-25):
    print(f"  Gamma = {gamma:9.2e} -> depth {depth_for_width(estar, gamma)}")
