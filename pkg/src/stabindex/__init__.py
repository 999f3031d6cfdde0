"""Time-delay systematics of unstable particles.

Computes an integer stability index per particle from mass/width data by
two independent routes, verifies the underlying Breit-Wigner time-delay
mathematics numerically, and realizes the single-channel theory on an
attractive square well.
"""

from .catalog import (Catalog, ParticleRecord, lifetime_to_width,
                      parse_catalog, serialize_catalog, table1_fixture,
                      width_to_lifetime)
from .constants import HBAR_MEV_S, THREE_ROOT_THREE
from .dyadic import DyadicCell, LocationResult, depth_for_width, locate
from .index import (IndexReport, InequalityCheck, build_index_report,
                    check_bracket_inequality, check_partition_inequality,
                    index_from_eq1, index_lower_bound, series_lower_bound,
                    series_partial_sum)
from .resonance import (DelayProfile, Resonance, bw_delay_derivative,
                        bw_phase_shift, bw_time_delay, count_resonances,
                        delay_profile_max_slope, integrate_time_delay,
                        profile_time_delay, sojourn_time)
from .squarewell import (PhaseShiftCurve, SquareWell, bound_state_count,
                         levinson_check, numeric_time_delay, phase_shift,
                         resonance_scan)

__version__ = "0.1.0"
