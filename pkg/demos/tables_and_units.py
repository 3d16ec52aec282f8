"""Two small semidirect products, their multiplication tables and their units.

Run with ``python demos/tables_and_units.py``.
"""

import numpy as np

from finring import SemidirectSpec, build_sdprod, eval_text, is_local, make_gf, units
from finring.cli import format_table

# %% GF(2) acting on itself by multiplication.
# Elements are pairs (b, s); the one is (0,1).
F2 = eval_text("sdprod_alg(GF(2), GF(2))")
print(format_table(F2, F2.mul, "·"))
print("units:", [F2.labels[u] for u in sorted(units(F2))])
print("local:", is_local(F2))
print()

# %% The ideal 2(Z/4Z) has no unit of its own, yet Z/2Z still acts on it by
# the identity map, and the product has a one.
T = eval_text('sdprod_file("@two_z4_z2.json")')
print(format_table(T, T.mul, "·"))
print("one:", T.labels[T.one], " local:", is_local(T))
print()

# %% For a field κ acting on itself the units are the pairs (a, b) with b != 0
# and a not equal to -b (a = 0 always allowed). Compare with a scan.
for q in (2, 3, 4, 5, 7):
    k = make_gf(q) if q != 4 else make_gf(2, 2)
    u, a = np.arange(q)[:, None], np.arange(q)[None, :]
    R = build_sdprod(SemidirectSpec(k, k, k.mul[u, a], k.mul[a, u]))
    predicted = {x * q + y for x in range(q) for y in range(1, q) if x == 0 or x != k.neg[y]}
    print(f"GF({q})⋊GF({q}): {len(units(R))} units, formula agrees: {predicted == set(units(R))}")
