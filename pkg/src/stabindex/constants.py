"""Shared physical and mathematical constants.

Every module takes hbar from here so that unit conversions and the
Table-1 reproduction stay bit-stable.
"""

import math

# CODATA reduced Planck constant in MeV * s
HBAR_MEV_S = 6.582119569e-22

# 3*sqrt(3): peak slope of the Lorentzian delay curve is 3*sqrt(3)/Gamma^2
# (in units of hbar), and the same constant enters the index lower bound.
THREE_ROOT_THREE = 3.0 * math.sqrt(3.0)
