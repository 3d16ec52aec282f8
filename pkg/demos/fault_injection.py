"""Corrupt one cell of a multiplication table and see which axiom notices."""

from collections import Counter

import numpy as np

from finring import make_zmod, verify_ring_axioms

Z6 = make_zmod(6)
add, mul = Z6.add.tolist(), Z6.mul.tolist()
rng = np.random.default_rng(1)

caught = Counter()
for _ in range(1000):
    a, b = (int(v) for v in rng.integers(0, 6, 2))
    value = int(rng.integers(0, 5))
    value += value >= mul[a][b]
    patched = [row[:] for row in mul]
    patched[a][b] = value
    report = verify_ring_axioms({"add": add, "mul": patched, "one": 1})
    caught[report.axiom if not report else "undetected"] += 1

for axiom, count in caught.most_common():
    print(f"{count:>5}  {axiom}")
