"""Bit-channel polarization over an erasure channel, step by step.

Evolving a BEC through m polarization levels splits it into 2^m synthetic
bit-channels whose erasure probabilities spread toward 0 and 1 while their
total capacity is conserved exactly.
"""

import numpy as np

from wiretap_polar import BecParam, capacity_sum, evolve, good_set

eps = 0.5
channel = BecParam(eps)

print(f"base channel: BEC({eps}), capacity {channel.capacity()}")
for m in (1, 2, 3):
    t = evolve(channel, m)
    print(f"  m={m}: e = {np.round(t.e, 4).tolist()}")

for m in (4, 8, 12):
    t = evolve(channel, m)
    total = capacity_sum(t, range(t.n))
    near0 = np.count_nonzero(t.e < 1e-3) / t.n
    near1 = np.count_nonzero(t.e > 1 - 1e-3) / t.n
    print(f"m={m:2d}: sum C_i = {total:.9f} (= n*C = {t.n * 0.5}), "
          f"{near0:.1%} nearly perfect, {near1:.1%} nearly useless")

# good sets shrink as the threshold tightens, and nest across channels
t_main = evolve(BecParam(0.3), 8)
t_wt = evolve(BecParam(0.6), 8)
for thr in (1e-2, 1e-4, 1e-6):
    gm, gw = good_set(t_main, thr), good_set(t_wt, thr)
    print(f"threshold {thr:g}: |good(0.3)| = {gm.size}, |good(0.6)| = {gw.size}, "
          f"nested = {set(gw.tolist()) <= set(gm.tolist())}")
