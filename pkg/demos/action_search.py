"""Search for action pairs of Z/pZ on Z/nZ.

An action pair exists only when p kills every element of Z/nZ, and then the
only choice is multiplication. The search below confirms this for small n.
"""

import time

from finring import build_sdprod, enumerate_action_pairs, is_local, make_zmod

for p in (2, 3, 5):
    S = make_zmod(p)
    row = []
    for n in range(2, 13):
        start = time.perf_counter()
        specs = enumerate_action_pairs(make_zmod(n), S)
        row.append(f"{n}:{len(specs)}")
        for spec in specs:
            assert not is_local(build_sdprod(spec))
    print(f"Z/{p}Z  " + "  ".join(row))

# the pair that survives for n = p is λ(s)(c) = sc, ρ(t)(b) = bt
spec = enumerate_action_pairs(make_zmod(3), make_zmod(3))[0]
print("λ table for Z/3Z on itself:")
print(spec.lam)
