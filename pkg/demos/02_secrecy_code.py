"""Build a secrecy code and run one message through it.

The message set A rides bit-channels the legitimate receiver can decode
but the eavesdropper cannot; the randomness set R covers the channels the
eavesdropper *can* decode; the rest is frozen to zero.
"""

import numpy as np

from wiretap_polar import (BecParam, WiretapConfig, apply_erasures,
                           bob_decode, build_partition, partition_to_json,
                           random_randomness, secrecy_encode)

cfg = WiretapConfig(main=BecParam(0.25), wiretap=BecParam(0.55), n=64,
                    target_pe=1e-2)
part = build_partition(cfg)
print(f"n={part.n}: k={part.k} message bits, r={part.r} random bits, "
      f"{len(part.B)} frozen")
print(f"secrecy rate {part.secrecy_rate:.4f} vs secrecy capacity "
      f"{cfg.secrecy_capacity():.4f}")
print("JSON form:", partition_to_json(part)[:72], "...")

rng = np.random.default_rng(7)
u = rng.integers(0, 2, size=part.k, dtype=np.uint8)
x = secrecy_encode(u, random_randomness(part, rng=rng), part)
y = apply_erasures(x, rng.random(part.n) < cfg.main.erasure)
res = bob_decode(y, part)
print(f"sent k={part.k} bits through BEC({cfg.main.erasure}); "
      f"decode ok={res.ok}, message recovered={res.ok and np.array_equal(res.v, u)}")

# an all-erased observation fails at the first information index
res = bob_decode(apply_erasures(x, np.ones(part.n, dtype=bool)), part)
print(f"all-erased observation: ok={res.ok}, "
      f"first undecodable index = {res.first_undecodable}")
