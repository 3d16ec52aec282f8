"""Finite rings as explicit Cayley tables.

Elements are indexed ``0..order-1`` and index 0 is always the additive zero.
Rings may be non-unital (``one is None``); the zero ring is unital with
``one == 0``.
"""

from __future__ import annotations

import json
import os
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 512
_cap_override: Optional[int] = None


class RingError(Exception):
    """Base class for errors raised by finring."""


class TableShapeError(RingError):
    """Tables are malformed (wrong dimensions or out-of-range entries)."""


class RingAxiomError(RingError):
    """Tables are well formed but violate a ring axiom."""

    def __init__(self, report: "CheckResult"):
        super().__init__(str(report))
        self.report = report


class OrderCapError(RingError):
    """A construction or search would exceed the configured order cap."""


def get_order_cap() -> int:
    if _cap_override is not None:
        return _cap_override
    env = os.environ.get("FINRING_CAP")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise RingError(f"FINRING_CAP must be an integer, got {env!r}") from None
        if cap < 1:
            raise RingError("FINRING_CAP must be positive")
        return cap
    return DEFAULT_ORDER_CAP


def set_order_cap(cap: Optional[int]) -> None:
    """Set a process-wide order cap; ``None`` restores env/default lookup."""
    global _cap_override
    if cap is not None and cap < 1:
        raise ValueError("order cap must be positive")
    _cap_override = cap


@contextmanager
def order_cap(cap: int) -> Iterator[None]:
    global _cap_override
    saved = _cap_override
    set_order_cap(cap)
    try:
        yield
    finally:
        _cap_override = saved


def check_cap(order: int, what: str = "ring") -> None:
    cap = get_order_cap()
    if order > cap:
        raise OrderCapError(f"{what} of order {order} exceeds the order cap {cap}")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an axiom or homomorphism check.

    Truthy iff the check passed. On failure ``axiom`` names the first violated
    condition and ``witness`` holds the element indices exhibiting it.
    """

    ok: bool
    axiom: Optional[str] = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        text = f"fail: {self.axiom}"
        if self.witness:
            text += f" at {self.witness}"
        if self.message:
            text += f" ({self.message})"
        return text


PASS = CheckResult(True)


def _as_table(data, shape: tuple, name: str) -> np.ndarray:
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise TableShapeError(f"{name} is not an integer table: {exc}") from None
    if arr.shape != shape:
        raise TableShapeError(f"{name} has shape {arr.shape}, expected {shape}")
    n = shape[0] if shape else 0
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise TableShapeError(f"{name} has entries outside 0..{n - 1}")
    return arr


def _derive_neg(add: np.ndarray) -> np.ndarray:
    n = add.shape[0]
    hits = add == 0
    neg = np.full(n, -1, dtype=np.int64)
    has = hits.any(axis=1)
    neg[has] = hits[has].argmax(axis=1)
    return neg


class FiniteRing:
    """A finite, possibly non-unital, ring given by Cayley tables.

    Construct with ``check=True`` (the default) to reject tables that fail
    :func:`verify_ring_axioms`; ``check=False`` only validates dimensions,
    which is what fault-injection experiments need.
    """

    def __init__(
        self,
        add,
        mul,
        one: Optional[int] = None,
        labels: Optional[Sequence[str]] = None,
        provenance: str = "",
        *,
        check: bool = True,
    ):
        add_arr = np.asarray(add)
        if add_arr.ndim != 2 or add_arr.shape[0] != add_arr.shape[1] or add_arr.shape[0] < 1:
            raise TableShapeError(f"add table must be square and non-empty, got shape {add_arr.shape}")
        n = add_arr.shape[0]
        self.order = n
        self.add = _as_table(add, (n, n), "add table")
        self.mul = _as_table(mul, (n, n), "mul table")
        if one is not None:
            one = int(one)
            if not 0 <= one < n:
                raise TableShapeError(f"one={one} is outside 0..{n - 1}")
        self.one = one
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise TableShapeError(f"{len(labels)} labels for a ring of order {n}")
        self.labels = labels
        self.provenance = provenance
        self.neg = _derive_neg(self.add)
        for arr in (self.add, self.mul, self.neg):
            arr.setflags(write=False)
        self._commutative: Optional[bool] = None
        if check:
            report = verify_ring_axioms(self)
            if not report:
                raise RingAxiomError(report)

    def __repr__(self) -> str:
        name = self.provenance or "FiniteRing"
        return f"<{name}: order {self.order}{'' if self.is_unital else ', non-unital'}>"

    def __len__(self) -> int:
        return self.order

    @property
    def is_unital(self) -> bool:
        return self.one is not None

    @property
    def is_commutative(self) -> bool:
        if self._commutative is None:
            self._commutative = bool((self.mul == self.mul.T).all())
        return self._commutative

    def elements(self) -> range:
        return range(self.order)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def multiple(self, n: int, a: int) -> int:
        """``n·a`` for an integer ``n`` (repeated addition)."""
        if n < 0:
            n, a = -n, int(self.neg[a])
        acc = 0
        for _ in range(n):
            acc = int(self.add[acc, a])
        return acc

    def power(self, a: int, e: int) -> int:
        if e < 1:
            if e == 0 and self.one is not None:
                return self.one
            raise ValueError("power exponent must be >= 1 in a rng")
        acc = a
        for _ in range(e - 1):
            acc = int(self.mul[acc, a])
        return acc

    def additive_order(self, a: int) -> int:
        acc = a
        for k in range(1, self.order + 1):
            if acc == 0:
                return k
            acc = int(self.add[acc, a])
        raise RingError(f"element {a} has no finite additive order (tables are not a group)")

    def characteristic(self) -> int:
        """Additive order of 1 (unital rings) or exponent of the additive group."""
        if self.one is not None:
            return self.additive_order(self.one)
        return int(np.lcm.reduce([self.additive_order(a) for a in self.elements()]))

    def same_tables(self, other: "FiniteRing") -> bool:
        return (
            self.order == other.order
            and self.one == other.one
            and bool((self.add == other.add).all())
            and bool((self.mul == other.mul).all())
        )

    def restrict(self, members: Iterable[int], *, unital: bool = True, provenance: str = "") -> "FiniteRing":
        """The subring (or sub-rng) on ``members``, reindexed in sorted order.

        ``members`` must be closed under the ring operations and contain 0.
        With ``unital`` the parent's one is kept when it lies in ``members``.
        """
        mem = sorted(set(int(m) for m in members))
        if not mem or mem[0] != 0:
            raise RingError("a subring must contain 0")
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[mem] = np.arange(len(mem))
        idx = np.array(mem)
        add = pos[self.add[np.ix_(idx, idx)]]
        mul = pos[self.mul[np.ix_(idx, idx)]]
        if (add < 0).any() or (mul < 0).any():
            raise RingError("subset is not closed under the ring operations")
        one = None
        if unital and self.one is not None and pos[self.one] >= 0:
            one = int(pos[self.one])
        return FiniteRing(
            add, mul, one, [self.labels[m] for m in mem],
            provenance or f"sub({self.provenance})", check=False,
        )


def verify_ring_axioms(candidate) -> CheckResult:
    """Exhaustively check the ring axioms, reporting the first failure.

    ``candidate`` is a :class:`FiniteRing` (typically built with
    ``check=False``) or a mapping with ``add``, ``mul`` and optional ``one``.
    Axioms are scanned in a fixed order, each over witnesses in lexicographic
    index order: additive identity, additive inverses, additive
    commutativity, additive associativity, multiplicative associativity,
    left distributivity, right distributivity, unit.

    Malformed tables raise :class:`TableShapeError` instead.
    """
    if isinstance(candidate, Mapping):
        candidate = FiniteRing(candidate["add"], candidate["mul"], candidate.get("one"), check=False)
    add, mul, one, n = candidate.add, candidate.mul, candidate.one, candidate.order
    idx = np.arange(n)

    bad = np.flatnonzero((add[0] != idx) | (add[:, 0] != idx))
    if bad.size:
        return CheckResult(False, "additive identity", (int(bad[0]),), "index 0 must be the additive zero")
    bad = np.flatnonzero(~(add == 0).any(axis=1))
    if bad.size:
        return CheckResult(False, "additive inverse", (int(bad[0]),))
    bad = np.argwhere(add != add.T)
    if bad.size:
        return CheckResult(False, "additive commutativity", tuple(int(v) for v in bad[0]))
    for name, tab in (
        ("additive associativity", add),
        ("multiplicative associativity", mul),
        ("left distributivity", mul),
        ("right distributivity", mul),
    ):
        witness = _first_triple_failure(name, tab, add)
        if witness is not None:
            return CheckResult(False, name, witness)
    if one is not None:
        bad = np.flatnonzero((mul[one] != idx) | (mul[:, one] != idx))
        if bad.size:
            return CheckResult(False, "unit", (int(bad[0]),), f"{one} is not a two-sided identity")
    return PASS


def _first_triple_failure(name: str, tab: np.ndarray, add: np.ndarray) -> Optional[tuple]:
    # Chunked over the first index so memory stays O(n^2) per step.
    n = tab.shape[0]
    for a in range(n):
        if name.endswith("associativity"):
            lhs = tab[tab[a]]            # (a*b)*c over b, c
            rhs = tab[a][tab]            # a*(b*c)
        elif name == "left distributivity":
            lhs = tab[a][add]            # a*(b+c)
            rhs = add[tab[a][:, None], tab[a][None, :]]
        else:
            lhs = tab[add, a]            # (b+c)*a  indexed [b, c]
            col = tab[:, a]
            rhs = add[col[:, None], col[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            if name == "right distributivity":
                return (int(b), int(c), a)
            return (a, int(b), int(c))
    return None


@dataclass(frozen=True)
class RingHom:
    """A total map ``domain -> codomain`` given as a table of codomain indices."""

    domain: FiniteRing
    codomain: FiniteRing
    map: tuple
    unital: bool = True

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.map)
        if len(mapping) != self.domain.order:
            raise TableShapeError(f"map has {len(mapping)} entries for a domain of order {self.domain.order}")
        if any(not 0 <= v < self.codomain.order for v in mapping):
            raise TableShapeError("map has entries outside the codomain")
        object.__setattr__(self, "map", mapping)

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.map, dtype=np.int64)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.codomain.order

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self ∘ inner``."""
        if inner.codomain is not self.domain and not inner.codomain.same_tables(self.domain):
            raise RingError("cannot compose: codomain/domain mismatch")
        return RingHom(inner.domain, self.codomain, [self.map[v] for v in inner.map], self.unital and inner.unital)

    def inverse(self) -> "RingHom":
        if not (self.is_injective() and self.is_surjective()):
            raise RingError("only bijective homomorphisms can be inverted")
        inv = [0] * self.codomain.order
        for a, b in enumerate(self.map):
            inv[b] = a
        return RingHom(self.codomain, self.domain, inv, self.unital)


def check_hom(h: RingHom) -> CheckResult:
    """Check additivity, multiplicativity and (if flagged) unit preservation."""
    R, S = h.domain, h.codomain
    f = h.array
    bad = np.argwhere(f[R.add] != S.add[f[:, None], f[None, :]])
    if bad.size:
        return CheckResult(False, "additive", tuple(int(v) for v in bad[0]))
    bad = np.argwhere(f[R.mul] != S.mul[f[:, None], f[None, :]])
    if bad.size:
        return CheckResult(False, "multiplicative", tuple(int(v) for v in bad[0]))
    if h.unital:
        if R.one is None or S.one is None:
            return CheckResult(False, "unit", (), "unital flag set but a ring has no one")
        if f[R.one] != S.one:
            return CheckResult(False, "unit", (R.one,), f"1 maps to {int(f[R.one])}")
    return PASS


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, range(R.order), R.is_unital)


def subring_closure(R: FiniteRing, seed: Iterable[int]) -> frozenset:
    """Smallest subset containing ``seed`` closed under +, negation and ·."""
    mask = np.zeros(R.order, dtype=bool)
    mask[0] = True
    mask[list(seed)] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add[np.ix_(idx, idx)].ravel()] = True
        new[R.mul[np.ix_(idx, idx)].ravel()] = True
        new[R.neg[idx]] = True
        if (new == mask).all():
            return frozenset(int(i) for i in idx)
        mask = new


# -- isomorphism search ------------------------------------------------------


def _ring_invariants(R: FiniteRing) -> tuple:
    orders = sorted(R.additive_order(a) for a in R.elements())
    sq = R.mul[np.arange(R.order), np.arange(R.order)]
    idempotents = int((sq == np.arange(R.order)).sum())
    nil_sq = int((sq == 0).sum())
    return (R.order, R.is_commutative, tuple(orders), idempotents, nil_sq)


def _unital_generators(R: FiniteRing) -> list:
    gens: list = []
    closure = subring_closure(R, [R.one])
    while len(closure) < R.order:
        # prefer the element whose addition grows the closure the most
        best = max((a for a in R.elements() if a not in closure),
                   key=lambda a: (len(subring_closure(R, closure | {a})), -a))
        gens.append(best)
        closure = subring_closure(R, closure | {best})
    return gens


def _extend(R: FiniteRing, S: FiniteRing, f: np.ndarray) -> Optional[np.ndarray]:
    """Close a partial map under + and ·; ``None`` on conflict or non-injectivity."""
    f = f.copy()
    while True:
        dom = np.flatnonzero(f >= 0)
        img = f[dom]
        if len(np.unique(img)) != len(img):
            return None
        grown = False
        for rt, st in ((R.add, S.add), (R.mul, S.mul)):
            src = rt[np.ix_(dom, dom)].ravel()
            tgt = st[np.ix_(img, img)].ravel()
            probe = np.full(R.order, -1, dtype=np.int64)
            probe[src] = tgt
            if (probe[src] != tgt).any():
                return None
            known = f[src] >= 0
            if (f[src][known] != tgt[known]).any():
                return None
            if (~known).any():
                f[src[~known]] = tgt[~known]
                grown = True
        if not grown:
            return f


def find_isomorphism(R: FiniteRing, S: FiniteRing) -> Optional[RingHom]:
    """A unital ring isomorphism ``R -> S`` if one exists, else ``None``.

    Backtracks over images of a generating set of ``R`` (as a unital ring),
    pruning by additive order and by closing the partial map after each
    choice.
    """
    if R.one is None or S.one is None:
        raise RingError("find_isomorphism needs unital rings")
    if R.order != S.order:
        return None
    check_cap(R.order, "isomorphism search")
    if _ring_invariants(R) != _ring_invariants(S):
        return None
    f0 = np.full(R.order, -1, dtype=np.int64)
    f0[0], f0[R.one] = 0, S.one
    f0 = _extend(R, S, f0)
    if f0 is None:
        return None
    gens = _unital_generators(R)
    s_orders = [S.additive_order(b) for b in S.elements()]

    def search(i: int, f: np.ndarray) -> Optional[np.ndarray]:
        if i == len(gens):
            return f if (f >= 0).all() else None
        g = gens[i]
        if f[g] >= 0:
            return search(i + 1, f)
        used = set(f[f >= 0].tolist())
        g_order = R.additive_order(g)
        for b in S.elements():
            if b in used or s_orders[b] != g_order:
                continue
            trial = f.copy()
            trial[g] = b
            ext = _extend(R, S, trial)
            if ext is not None:
                done = search(i + 1, ext)
                if done is not None:
                    return done
        return None

    found = search(0, f0)
    if found is None:
        return None
    h = RingHom(R, S, found, True)
    assert check_hom(h)
    return h


# -- serialisation -----------------------------------------------------------


def ring_to_dict(R: FiniteRing) -> dict:
    return {
        "order": R.order,
        "one": R.one,
        "add": R.add.tolist(),
        "mul": R.mul.tolist(),
        "labels": list(R.labels),
    }


def ring_from_dict(doc: Mapping, *, check: bool = True, provenance: str = "") -> FiniteRing:
    try:
        order = int(doc["order"])
        add, mul = doc["add"], doc["mul"]
    except (KeyError, TypeError, ValueError) as exc:
        raise TableShapeError(f"ring document is missing a field: {exc}") from None
    if len(add) != order:
        raise TableShapeError(f"document declares order {order} but add table has {len(add)} rows")
    return FiniteRing(add, mul, doc.get("one"), doc.get("labels"), provenance or "table", check=check)


def save_ring(R: FiniteRing, path) -> None:
    Path(path).write_text(json.dumps(ring_to_dict(R)))


def load_ring(path, *, check: bool = True) -> FiniteRing:
    doc = json.loads(Path(path).read_text())
    return ring_from_dict(doc, check=check, provenance=f"table_file({str(path)!r})")
