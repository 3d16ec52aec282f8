"""Constructors for the ring families used throughout the package.

Every constructor compiles down to Cayley tables and runs the full axiom
check on its output.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .ring import FiniteRing, RingError, RingHom, check_cap

# Ascending coefficient lists (constant term first, leading 1 last) of one
# irreducible polynomial per (p, k) with p**k <= 512 and k >= 2.  These are
# the Conway polynomials, so labels are reproducible across runs.
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
    (17, 2): (3, 16, 1),
    (19, 2): (2, 18, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int):
    """``(p, k)`` with ``q == p**k``, or ``None`` if ``q`` is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def is_field(R: FiniteRing) -> bool:
    """Commutative, unital with ``1 != 0``, every non-zero element invertible."""
    if R.one is None or R.order < 2 or not R.is_commutative:
        return False
    has_inverse = (R.mul[1:, :] == R.one).any(axis=1)
    return bool(has_inverse.all())


def _require_field(kappa: FiniteRing, who: str) -> None:
    if not is_field(kappa):
        raise RingError(f"{who} needs a field, got {kappa!r}")


def make_zmod(n: int) -> FiniteRing:
    """Integers modulo ``n``; ``n == 1`` gives the zero ring."""
    n = int(n)
    if n < 1:
        raise RingError(f"Zmod needs n >= 1, got {n}")
    check_cap(n, f"Zmod({n})")
    i = np.arange(n)
    return FiniteRing(
        (i[:, None] + i[None, :]) % n,
        (i[:, None] * i[None, :]) % n,
        1 % n,
        [str(v) for v in i],
        f"Zmod({n})",
    )


def _digits(order: int, base: int, width: int) -> np.ndarray:
    """Row ``i`` holds the base-``base`` digits of ``i``, least significant first."""
    i = np.arange(order)
    return np.stack([(i // base**d) % base for d in range(width)], axis=1)


def _poly_label(coeffs: Sequence[int], kappa: FiniteRing, var: str) -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        lab = kappa.labels[c]
        if d == 0:
            terms.append(lab)
            continue
        mono = var if d == 1 else f"{var}^{d}"
        if c == kappa.one:
            terms.append(mono)
        elif "+" in lab or "-" in lab:
            terms.append(f"({lab}){mono}")
        else:
            terms.append(f"{lab}{mono}")
    return "+".join(terms) if terms else "0"


def make_poly_quotient(kappa: FiniteRing, f: Sequence[int], var: str = "x", provenance: str = "") -> FiniteRing:
    """The quotient ``kappa[x]/<f>``.

    ``f`` lists coefficients as element indices of ``kappa`` in ascending
    degree; the last entry must be ``kappa``'s one. Element ``i`` is the
    residue polynomial whose coefficient of ``x**d`` is base-``|kappa|``
    digit ``d`` of ``i``.
    """
    _require_field(kappa, "make_poly_quotient")
    f = [int(c) for c in f]
    if len(f) < 2:
        raise RingError("the modulus must have degree >= 1")
    if any(not 0 <= c < kappa.order for c in f):
        raise RingError("coefficients must be element indices of the field")
    if f[-1] != kappa.one:
        raise RingError(
            "the modulus must be monic: coefficients are listed in ascending degree, "
            f"so the last entry must be 1, got {f}"
        )
    q, n = kappa.order, len(f) - 1
    order = q**n
    check_cap(order, "polynomial quotient")
    D = _digits(order, q, n)
    add_digits = kappa.add[D[:, None, :], D[None, :, :]]
    weights = q ** np.arange(n)
    add = (add_digits * weights).sum(axis=2)

    conv = [np.zeros((order, order), dtype=np.int64) for _ in range(2 * n - 1)]
    for u in range(n):
        for v in range(n):
            term = kappa.mul[D[:, u][:, None], D[:, v][None, :]]
            conv[u + v] = kappa.add[conv[u + v], term]
    for d in range(2 * n - 2, n - 1, -1):
        c = conv[d]
        for i in range(n):
            conv[d - n + i] = kappa.add[conv[d - n + i], kappa.neg[kappa.mul[c, f[i]]]]
    mul = sum(conv[d] * weights[d] for d in range(n))

    labels = [_poly_label(D[i].tolist(), kappa, var) for i in range(order)]
    one = kappa.one  # the constant polynomial 1 has digit vector (one, 0, ...)
    name = provenance or f"polyquot({kappa.provenance}, {f})"
    return FiniteRing(add, mul, one, labels, name)


def make_gf(p: int, k: int = 1) -> FiniteRing:
    """The field with ``p**k`` elements, ``GF(p)[t]`` modulo a built-in irreducible."""
    p, k = int(p), int(k)
    if not is_prime(p):
        raise RingError(f"GF needs a prime characteristic, got {p}")
    if k < 1:
        raise RingError(f"GF needs k >= 1, got {k}")
    check_cap(p**k, f"GF({p},{k})")
    if k == 1:
        base = make_zmod(p)
        base.provenance = f"GF({p})"
        return base
    if (p, k) not in IRREDUCIBLE:
        raise RingError(f"no built-in irreducible polynomial for GF({p},{k})")
    F = make_poly_quotient(make_zmod(p), IRREDUCIBLE[(p, k)], var="t", provenance=f"GF({p},{k})")
    if not is_field(F):
        raise RingError(f"GF({p},{k}): built-in modulus is not irreducible")
    return F


def make_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Componentwise product; element ``(r, s)`` has index ``r*|S| + s``."""
    order = R.order * S.order
    check_cap(order, "product")
    i = np.arange(order)
    r, s = i // S.order, i % S.order
    add = R.add[r[:, None], r[None, :]] * S.order + S.add[s[:, None], s[None, :]]
    mul = R.mul[r[:, None], r[None, :]] * S.order + S.mul[s[:, None], s[None, :]]
    one = R.one * S.order + S.one if R.one is not None and S.one is not None else None
    labels = [f"({R.labels[a]},{S.labels[b]})" for a, b in zip(r, s)]
    return FiniteRing(add, mul, one, labels, f"product({R.provenance}, {S.provenance})")


def make_function_ring(x_size: int, kappa: FiniteRing) -> FiniteRing:
    """All functions ``{0..x_size-1} -> kappa`` with pointwise operations.

    A function is indexed by its values read as base-``|kappa|`` digits with
    the value at 0 most significant, so ``make_function_ring(2, k)`` has the
    same tables as ``make_product(k, k)``.
    """
    _require_field(kappa, "make_function_ring")
    x_size = int(x_size)
    if x_size < 1:
        raise RingError(f"function ring needs a non-empty domain, got size {x_size}")
    q = kappa.order
    order = q**x_size
    check_cap(order, "function ring")
    D = _digits(order, q, x_size)[:, ::-1]
    weights = q ** np.arange(x_size)[::-1]
    add = (kappa.add[D[:, None, :], D[None, :, :]] * weights).sum(axis=2)
    mul = (kappa.mul[D[:, None, :], D[None, :, :]] * weights).sum(axis=2)
    one = int(sum(kappa.one * w for w in weights))
    labels = ["(" + ",".join(kappa.labels[c] for c in row) + ")" for row in D]
    return FiniteRing(add, mul, one, labels, f"fnring({x_size}, {kappa.provenance})")


def constant_embedding(x_size: int, kappa: FiniteRing, F: FiniteRing):
    """The constants ``kappa -> F``, ``a -> (a, ..., a)``, as a unital hom."""
    q = kappa.order
    weights = [q ** (x_size - 1 - i) for i in range(x_size)]
    return RingHom(kappa, F, [sum(a * w for w in weights) for a in kappa.elements()], True)
