"""Which catalogue rings split over a residue field, and in which class they fall.

Each ring is tested twice: by looking for a maximal ideal M and a subfield κ
with |M|·|κ| = |R|, and by searching for a section of R -> R/M directly.
"""

from finring import check_star_section, classify, maximal_ideals
from finring.catalogue import default_catalogue
from finring.star import UnsupportedQuotient, star_failure_reason

print(f"{'ring':<18} {'order':>5}  star  A  B  sections  note")
for entry in default_catalogue():
    R = entry.build()
    c = classify(R)
    split = 0
    for M in maximal_ideals(R):
        try:
            split += check_star_section(R, M) is not None
        except UnsupportedQuotient:
            pass
    note = c.star.describe() if c.star else star_failure_reason(R)
    mark = lambda flag: "x" if flag else "."  # noqa: E731
    print(f"{entry.ring_id:<18} {R.order:>5}  {mark(c.star):>4}  {mark(c.class_a)}  {mark(c.class_b)}"
          f"  {split:>8}  {note}")
