"""Semidirect products ``B ⋊ S`` of a rng by a ring.

The product lives on pairs ``(b, s)`` with componentwise addition and

    (b, s)·(c, t) = (b·c + λ(s)(c) + ρ(t)(b), s·t)

where λ maps ``S`` homomorphically into the right-``B``-linear additive maps
of ``B`` and ρ maps ``S`` anti-homomorphically into the left-``B``-linear
ones. Pair ``(b, s)`` has index ``b*|S| + s``.

Endomorphisms are stored as index tables, and composition applies the
innermost map first: ``(f∘g)[x] = f[g[x]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as cartesian
from pathlib import Path
from typing import List, Mapping, Optional

import numpy as np

from .constructors import is_field
from .ring import (
    PASS, CheckResult, FiniteRing, RingError, RingHom, TableShapeError,
    check_cap, check_hom, ring_from_dict, ring_to_dict,
)
from .structure import IdealSubset, is_ideal, is_subfield

AXIOM_ORDER = (
    "module-endo",
    "hom-in-s",
    "anti-hom-in-s",
    "commuting",
    "middle-linearity",
    "unit-preservation",
)


class ActionPairError(RingError):
    def __init__(self, report: CheckResult):
        super().__init__(f"invalid action pair: {report}")
        self.report = report


@dataclass(frozen=True, eq=False)
class SemidirectSpec:
    """A rng ``B``, a ring ``S`` and action tables ``lam``/``rho``.

    ``lam[s]`` and ``rho[s]`` are tables ``B -> B`` (length ``|B|``), one per
    element of ``S``.
    """

    B: FiniteRing
    S: FiniteRing
    lam: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        shape = (self.S.order, self.B.order)
        for name in ("lam", "rho"):
            arr = np.array(getattr(self, name), dtype=np.int64)
            if arr.shape != shape:
                raise TableShapeError(f"{name} has shape {arr.shape}, expected {shape}")
            if arr.size and (arr.min() < 0 or arr.max() >= self.B.order):
                raise TableShapeError(f"{name} has entries outside B")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def key(self) -> tuple:
        return (self.lam.tobytes(), self.rho.tobytes())


def _pairs(n: int):
    i = np.arange(n)
    return i[:, None], i[None, :]


def verify_action_pair(spec: SemidirectSpec) -> CheckResult:
    """Check every condition on (λ, ρ), reporting the first failure.

    Axioms are tested in ``AXIOM_ORDER``; the witness names the offending
    elements of ``S`` (prefixed ``s``/``t``) and ``B`` (``x``/``y``).
    """
    B, S, lam, rho = spec.B, spec.S, spec.lam, spec.rho
    x, y = _pairs(B.order)

    # each λ(s) is additive and right-B-linear; each ρ(s) additive and left-B-linear
    for s in S.elements():
        L, P = lam[s], rho[s]
        for name, f in (("lambda", L), ("rho", P)):
            bad = np.argwhere(f[B.add] != B.add[f[x], f[y]])
            if bad.size:
                return CheckResult(False, "module-endo", (s, *map(int, bad[0])), f"{name}(s) not additive")
        bad = np.argwhere(L[B.mul] != B.mul[L[x], y])
        if bad.size:
            return CheckResult(False, "module-endo", (s, *map(int, bad[0])), "lambda(s)(x·y) != lambda(s)(x)·y")
        bad = np.argwhere(P[B.mul] != B.mul[x, P[y]])
        if bad.size:
            return CheckResult(False, "module-endo", (s, *map(int, bad[0])), "rho(s)(x·y) != x·rho(s)(y)")

    sidx = np.arange(S.order)
    bx = np.arange(B.order)
    # λ(s+t) = λ(s)+λ(t), λ(st) = λ(s)∘λ(t); arrays are indexed [s, t, x]
    bad = np.argwhere(lam[S.add] != B.add[lam[:, None, :], lam[None, :, :]])
    if bad.size:
        return CheckResult(False, "hom-in-s", tuple(map(int, bad[0])), "lambda(s+t) != lambda(s)+lambda(t)")
    bad = np.argwhere(lam[S.mul] != lam[sidx[:, None, None], lam[None, :, :]])
    if bad.size:
        return CheckResult(False, "hom-in-s", tuple(map(int, bad[0])), "lambda(s·t) != lambda(s)∘lambda(t)")
    # ρ(s+t) = ρ(s)+ρ(t), ρ(st) = ρ(t)∘ρ(s)
    bad = np.argwhere(rho[S.add] != B.add[rho[:, None, :], rho[None, :, :]])
    if bad.size:
        return CheckResult(False, "anti-hom-in-s", tuple(map(int, bad[0])), "rho(s+t) != rho(s)+rho(t)")
    bad = np.argwhere(rho[S.mul] != rho[sidx[None, :, None], rho[:, None, :]])
    if bad.size:
        return CheckResult(False, "anti-hom-in-s", tuple(map(int, bad[0])), "rho(s·t) != rho(t)∘rho(s)")
    # λ(s)∘ρ(t) = ρ(t)∘λ(s)
    lr = lam[sidx[:, None, None], rho[None, :, :]]
    rl = rho[sidx[None, :, None], lam[:, None, :]]
    bad = np.argwhere(lr != rl)
    if bad.size:
        return CheckResult(False, "commuting", tuple(map(int, bad[0])), "lambda(s)∘rho(t) != rho(t)∘lambda(s)")
    # ρ(s)(x)·y = x·λ(s)(y)
    for s in S.elements():
        bad = np.argwhere(B.mul[rho[s][x], y] != B.mul[x, lam[s][y]])
        if bad.size:
            return CheckResult(False, "middle-linearity", (s, *map(int, bad[0])), "rho(s)(x)·y != x·lambda(s)(y)")
    if S.one is not None:
        for name, tab in (("lambda", lam), ("rho", rho)):
            bad = np.flatnonzero(tab[S.one] != bx)
            if bad.size:
                return CheckResult(False, "unit-preservation", (S.one, int(bad[0])), f"{name}(1) is not the identity")
    return PASS


def build_sdprod(spec: SemidirectSpec, *, allow_nonunital: bool = False, provenance: str = "") -> FiniteRing:
    """The ring ``B ⋊ S``; unital with one ``(0, 1)``.

    A non-unital ``S`` is rejected unless ``allow_nonunital`` is set, in
    which case the result is a rng without a one.
    """
    report = verify_action_pair(spec)
    if not report:
        raise ActionPairError(report)
    B, S = spec.B, spec.S
    if S.one is None and not allow_nonunital:
        raise RingError("S has no one; pass allow_nonunital=True for a rng-level product")
    order = B.order * S.order
    check_cap(order, "semidirect product")
    i = np.arange(order)
    b, s = i // S.order, i % S.order
    b1, b2 = b[:, None], b[None, :]
    s1, s2 = s[:, None], s[None, :]
    add = B.add[b1, b2] * S.order + S.add[s1, s2]
    first = B.add[B.add[B.mul[b1, b2], spec.lam[s1, b2]], spec.rho[s2, b1]]
    mul = first * S.order + S.mul[s1, s2]
    one = S.one if S.one is not None else None  # index of (0, 1)
    labels = [f"({B.labels[u]},{S.labels[v]})" for u, v in zip(b, s)]
    name = provenance or f"sdprod({B.provenance}, {S.provenance})"
    return FiniteRing(add, mul, one, labels, name)


def injections(spec: SemidirectSpec, R: FiniteRing) -> tuple:
    """``i_B: b -> (b, 0)`` and ``i_S: s -> (0, s)`` as maps into ``R``."""
    nS = spec.S.order
    i_B = RingHom(spec.B, R, [b * nS for b in spec.B.elements()], False)
    i_S = RingHom(spec.S, R, list(spec.S.elements()), spec.S.one is not None)
    return i_B, i_S


def first_component_ideal(spec: SemidirectSpec, R: FiniteRing) -> IdealSubset:
    """``{(x, 0)}``: the kernel of the projection onto ``S``."""
    return IdealSubset(R, [b * spec.S.order for b in spec.B.elements()])


def multiplication_actions(R: FiniteRing, ring_members, ideal_members) -> SemidirectSpec:
    """Actions of a subring on an ideal of ``R`` by left/right multiplication.

    ``B`` is the ideal as a rng and ``S`` the subring, both reindexed in
    sorted member order.
    """
    ideal = sorted(set(ideal_members))
    ring = sorted(set(ring_members))
    B = R.restrict(ideal, unital=False, provenance=f"ideal of {R.provenance}")
    S = R.restrict(ring, provenance=f"subring of {R.provenance}")
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[ideal] = np.arange(len(ideal))
    u, x = np.array(ring)[:, None], np.array(ideal)[None, :]
    lam, rho = pos[R.mul[u, x]], pos[R.mul[x, u]]
    if (lam < 0).any() or (rho < 0).any():
        raise RingError("products leave the ideal")
    return SemidirectSpec(B, S, lam, rho)


def induced_actions(R: FiniteRing, kappa, M: IdealSubset) -> SemidirectSpec:
    """``M ⋊ κ`` data with λ(u)(x) = u·x and ρ(u)(x) = x·u computed in ``R``."""
    if not is_subfield(R, kappa):
        raise RingError(f"{sorted(kappa)} is not a subfield of {R!r}")
    if not is_ideal(R, M.members):
        raise RingError(f"{M!r} is not an ideal of {R!r}")
    spec = multiplication_actions(R, kappa, M.members)
    report = verify_action_pair(spec)
    if not report:
        raise ActionPairError(report)
    return spec


def algebra_sdprod(A: FiniteRing, kappa: FiniteRing, embed: RingHom) -> FiniteRing:
    """``A ⋊ κ`` for a κ-algebra ``A``, acting through the embedding ``κ -> A``."""
    if not is_field(kappa):
        raise RingError("algebra_sdprod needs a field")
    if not embed.unital or not check_hom(embed):
        raise RingError("the embedding must be a unital ring homomorphism")
    if not embed.is_injective():
        raise RingError("the embedding must be injective")
    e = embed.array
    u, a = e[:, None], np.arange(A.order)[None, :]
    spec = SemidirectSpec(A, kappa, A.mul[u, a], A.mul[a, u])
    return build_sdprod(spec, provenance=f"sdprod_alg({A.provenance}, {kappa.provenance})")


def prime_embedding(kappa: FiniteRing, A: FiniteRing) -> RingHom:
    """``n ↦ n·1_A`` from a prime field into ``A``."""
    if A.one is None:
        raise RingError("the algebra must be unital")
    if not is_field(kappa) or kappa.characteristic() != kappa.order:
        raise RingError(f"{kappa!r} is not a prime field")
    p = kappa.order
    if A.characteristic() != p:
        raise RingError(f"{A!r} has characteristic {A.characteristic()}, not {p}")
    table = [A.multiple(kappa_value(kappa, a), A.one) for a in kappa.elements()]
    return RingHom(kappa, A, table, True)


def kappa_value(kappa: FiniteRing, a: int) -> int:
    """The integer ``n`` with ``a = n·1`` in a prime field."""
    acc, n = 0, 0
    while acc != a:
        acc = int(kappa.add[acc, kappa.one])
        n += 1
    return n


# -- exhaustive search --------------------------------------------------------


def additive_generators(G: FiniteRing, prefer=()) -> List[int]:
    """A minimal-ish generating set of the additive group, built greedily.

    Candidates are taken by decreasing additive order (``prefer`` first,
    then lower index on ties) and kept when they enlarge the span.
    """
    orders = {a: G.additive_order(a) for a in G.elements()}
    ranked = sorted(G.elements(), key=lambda a: (a not in prefer, -orders[a], a))
    span = {0}
    gens = []
    for a in ranked:
        if len(span) == G.order:
            break
        if a in span:
            continue
        gens.append(a)
        span = _additive_span(G, gens)
    return gens


def _additive_span(G: FiniteRing, gens) -> set:
    span = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = int(G.add[v, g])
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return span


def _extend_additive(G: FiniteRing, gens, images, zero, plus) -> Optional[list]:
    """Extend generator images additively over ``G``; ``None`` if inconsistent.

    ``plus(u, v)`` adds two images.
    """
    table = {0: zero}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for g, img in zip(gens, images):
                w = int(G.add[v, g])
                val = plus(table[v], img)
                if w in table:
                    if not _same(table[w], val):
                        return None
                else:
                    table[w] = val
                    nxt.append(w)
        frontier = nxt
    if len(table) != G.order:
        return None
    return [table[a] for a in G.elements()]


def _same(u, v) -> bool:
    if isinstance(u, np.ndarray):
        return bool((u == v).all())
    return u == v


def additive_endomorphisms(B: FiniteRing) -> List[np.ndarray]:
    """Every additive endomorphism of ``B`` as an index table."""
    gens = additive_generators(B)
    orders = [B.additive_order(a) for a in B.elements()]
    found = []
    plus = lambda u, v: int(B.add[u, v])  # noqa: E731
    for imgs in cartesian(B.elements(), repeat=len(gens)):
        if any(orders[g] % orders[im] for g, im in zip(gens, imgs)):
            continue
        table = _extend_additive(B, gens, imgs, 0, plus)
        if table is not None:
            found.append(np.array(table, dtype=np.int64))
    return found


def _linear_endos(B: FiniteRing, side: str) -> List[np.ndarray]:
    x, y = _pairs(B.order)
    out = []
    for f in additive_endomorphisms(B):
        if side == "right" and (f[B.mul] == B.mul[f[x], y]).all():
            out.append(f)
        elif side == "left" and (f[B.mul] == B.mul[x, f[y]]).all():
            out.append(f)
    return out


def _action_maps(B: FiniteRing, S: FiniteRing, endos, anti: bool) -> List[np.ndarray]:
    """Additive maps ``S -> endos`` that are (anti-)multiplicative and unital."""
    gens = additive_generators(S, prefer=(S.one,) if S.one is not None else ())
    ident = np.arange(B.order)
    zero = np.zeros(B.order, dtype=np.int64)
    plus = lambda u, v: B.add[u, v]  # noqa: E731
    choices = []
    for g in gens:
        if g == S.one:
            choices.append([ident])
        else:
            choices.append(endos)
    out = []
    for imgs in cartesian(*choices):
        table = _extend_additive(S, gens, imgs, zero, plus)
        if table is None:
            continue
        tab = np.stack(table)
        prods = tab[S.mul]
        s_idx = np.arange(S.order)
        if anti:
            composed = tab[s_idx[None, :, None], tab[:, None, :]]   # ρ(t)∘ρ(s) at [s, t]
        else:
            composed = tab[s_idx[:, None, None], tab[None, :, :]]   # λ(s)∘λ(t)
        if (prods != composed).any():
            continue
        if S.one is not None and (tab[S.one] != ident).any():
            continue
        out.append(tab)
    return out


def enumerate_action_pairs(B: FiniteRing, S: FiniteRing) -> List[SemidirectSpec]:
    """All (λ, ρ) making ``B ⋊ S`` well defined (with λ(1) = ρ(1) = id).

    λ and ρ are additive in ``s``, so each is fixed by its values on an
    additive generating set of ``S``; those values range over the right-
    (resp. left-) linear additive endomorphisms of ``B``. Surviving
    candidates are paired and filtered by the full action check.
    """
    if S.one is None:
        raise RingError("enumerate_action_pairs needs a unital S")
    check_cap(B.order * S.order, "action-pair search")
    # λ(n·1) = n·id must vanish, so n kills every element of B
    n = S.additive_order(S.one)
    if any(n % B.additive_order(b) for b in B.elements()):
        return []
    lams =_action_maps(B, S, _linear_endos(B, "right"), anti=False)
    rhos = _action_maps(B, S, _linear_endos(B, "left"), anti=True)
    specs, seen = [], set()
    for lam in lams:
        for rho in rhos:
            spec = SemidirectSpec(B, S, lam, rho)
            if spec.key() in seen:
                continue
            if verify_action_pair(spec):
                seen.add(spec.key())
                specs.append(spec)
    return specs


# -- serialisation ------------------------------------------------------------


def spec_to_dict(spec: SemidirectSpec) -> dict:
    return {
        "B": ring_to_dict(spec.B),
        "S": ring_to_dict(spec.S),
        "lambda": spec.lam.tolist(),
        "rho": spec.rho.tolist(),
    }


def spec_from_dict(doc: Mapping) -> SemidirectSpec:
    try:
        B = ring_from_dict(doc["B"], provenance="B")
        S = ring_from_dict(doc["S"], provenance="S")
        return SemidirectSpec(B, S, doc["lambda"], doc["rho"])
    except KeyError as exc:
        raise TableShapeError(f"semidirect document is missing {exc}") from None


def load_spec(path) -> SemidirectSpec:
    return spec_from_dict(json.loads(Path(path).read_text()))


def save_spec(spec: SemidirectSpec, path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec)))
