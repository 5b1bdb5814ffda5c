"""Polar secrecy codes over binary erasure wiretap channels.

A toolkit for constructing three-set (message / randomness / frozen)
secrecy codes from bit-channel thresholds, bounding their mutual
information leakage in closed form, estimating the true leakage exactly or
by Monte Carlo over erasure patterns, and sweeping the finite-length
behavior of the rate gap and leakage versus block length.
"""

from .bec import (BecParam, BitChannelTable, capacity_sum,
                  check_degradation_nesting, evolve, good_set)
from .codec import (ERASED, DecodeResult, apply_erasures, encode,
                    sc_decode_batch, sc_decode_erasure, union_bound_pe)
from .design import (FIG_K, FIG_N, FIG_PE, FIG_R, figure_design_config,
                     figure_design_partition, solve_erasure_for_good_count)
from .gf2 import BitMatrix, intersection_dim, polar_transform, rank
from .leakage import (InconsistentTableError, LeakageBounds, McEstimate,
                      TooLargeError, brute_force_mi, conditional_mi_check,
                      rearranged_bounds, exact_leakage_enumeration,
                      leakage_lower_bound, leakage_upper_bound, mc_leakage,
                      pattern_leakage_dim, leakage_bounds)
from .scaling import (ExponentFit, ScalingPoint, above_capacity_sweep,
                      channel_gap_sweep, fit_exponent, sweep)
from .secrecy import (InfeasibleConfigError, SecrecyPartition, WiretapConfig,
                      bob_decode, build_partition,
                      build_partition_above_capacity, partition_from_json,
                      partition_to_json, random_randomness, secrecy_encode)

__version__ = "0.1.0"
