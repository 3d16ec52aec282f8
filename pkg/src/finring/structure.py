"""Units, two-sided ideals, maximal ideals, subfields and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional

import numpy as np

from .constructors import is_field
from .ring import FiniteRing, RingError, RingHom, check_cap, check_hom, subring_closure


class NotAnIdealError(RingError):
    pass


@dataclass(frozen=True, eq=False)
class IdealSubset:
    """A two-sided ideal of ``parent`` given by its sorted member indices."""

    parent: FiniteRing
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(m) for m in self.members))))

    @classmethod
    def checked(cls, parent: FiniteRing, members: Iterable[int]) -> "IdealSubset":
        ideal = cls(parent, tuple(members))
        if not is_ideal(parent, ideal.members):
            raise NotAnIdealError(f"{sorted(ideal.members)} is not a two-sided ideal of {parent!r}")
        return ideal

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, a) -> bool:
        return a in self._set

    def __eq__(self, other) -> bool:
        if isinstance(other, IdealSubset):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return "{" + ", ".join(self.parent.labels[m] for m in self.members) + "}"

    @property
    def _set(self) -> frozenset:
        cached = self.__dict__.get("_cached_set")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_cached_set", cached)
        return cached

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.parent.order

    def issubset(self, other: "IdealSubset") -> bool:
        return self._set <= other._set


def is_ideal(R: FiniteRing, members: Iterable[int]) -> bool:
    idx = np.array(sorted(set(members)), dtype=np.int64)
    if idx.size == 0 or idx[0] != 0:
        return False
    mask = np.zeros(R.order, dtype=bool)
    mask[idx] = True
    return bool(
        mask[R.add[np.ix_(idx, idx)]].all()
        and mask[R.neg[idx]].all()
        and mask[R.mul[:, idx]].all()
        and mask[R.mul[idx, :]].all()
    )


def _ideal_closure(R: FiniteRing, seed: Iterable[int]) -> tuple:
    mask = np.zeros(R.order, dtype=bool)
    mask[0] = True
    mask[list(seed)] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul[:, idx].ravel()] = True
        new[R.mul[idx, :].ravel()] = True
        new[R.add[np.ix_(idx, idx)].ravel()] = True
        new[R.neg[idx]] = True
        if (new == mask).all():
            return tuple(int(i) for i in idx)
        mask = new


def units(R: FiniteRing) -> frozenset:
    """Elements with a two-sided inverse."""
    if R.one is None:
        raise RingError("units are only defined in a unital ring")
    both = (R.mul == R.one) & (R.mul.T == R.one)
    return frozenset(int(a) for a in np.flatnonzero(both.any(axis=1)))


def principal_ideal(R: FiniteRing, a: int) -> IdealSubset:
    """Smallest two-sided ideal containing ``a``."""
    return IdealSubset(R, _ideal_closure(R, [a]))


def ideal_sum(I: IdealSubset, J: IdealSubset) -> IdealSubset:
    R = I.parent
    idx_i, idx_j = np.array(I.members), np.array(J.members)
    return IdealSubset(R, np.unique(R.add[np.ix_(idx_i, idx_j)]).tolist())


def _sort_key(I: IdealSubset):
    return (len(I.members), I.members)


def all_ideals(R: FiniteRing) -> List[IdealSubset]:
    """Every two-sided ideal, sorted by size and then by members.

    The lattice is the closure of the principal ideals under pairwise sums;
    a worklist keyed by member tuples keeps each ideal once.
    """
    check_cap(R.order, "ideal enumeration")
    seen = {(0,): IdealSubset(R, (0,))}
    work = []
    for a in R.elements():
        P = principal_ideal(R, a)
        if P.members not in seen:
            seen[P.members] = P
            work.append(P)
    principals = list(work)
    while work:
        I = work.pop()
        for P in principals:
            J = ideal_sum(I, P)
            if J.members not in seen:
                seen[J.members] = J
                work.append(J)
    return sorted(seen.values(), key=_sort_key)


def maximal_ideals(R: FiniteRing, ideals: Optional[List[IdealSubset]] = None) -> List[IdealSubset]:
    """Proper ideals not strictly contained in another proper ideal.

    Decided by containment in the ideal lattice only; whether the quotient is
    a field is left as an independent check.
    """
    if R.order < 2:
        return []
    ideals = all_ideals(R) if ideals is None else ideals
    proper = [I for I in ideals if I.is_proper]
    return [I for I in proper if not any(I is not J and len(J) > len(I) and I.issubset(J) for J in proper)]


def is_local(R: FiniteRing) -> bool:
    return len(maximal_ideals(R)) == 1


def local_ideal(R: FiniteRing) -> Optional[IdealSubset]:
    """The unique maximal ideal of a local ring, else ``None``."""
    maxes = maximal_ideals(R)
    return maxes[0] if len(maxes) == 1 else None


def is_subfield(R: FiniteRing, members: Iterable[int]) -> bool:
    """``members`` is a subring containing ``R``'s one that is a field."""
    mem = sorted(set(members))
    if R.one is None or R.one not in mem or len(mem) < 2:
        return False
    if subring_closure(R, mem) != frozenset(mem):
        return False
    return is_field(R.restrict(mem))


def subfields(R: FiniteRing) -> List[tuple]:
    """All subfields sharing ``R``'s one, each as a sorted member tuple.

    A finite subfield is a simple extension of its prime field, so it is the
    unital subring generated by one element; scanning ``{1, a}`` for every
    ``a`` therefore finds all of them.
    """
    if R.one is None:
        raise RingError("subfields are only defined in a unital ring")
    found = set()
    for a in R.elements():
        closure = subring_closure(R, [R.one, a])
        if closure in found:
            continue
        found.add(closure)
    fields = [tuple(sorted(c)) for c in found if is_field(R.restrict(c))]
    return sorted(fields, key=lambda m: (len(m), m))


@dataclass(frozen=True)
class QuotientPresentation:
    """``parent / ideal`` with its canonical projection.

    ``coset_reps[q]`` is the least parent index in coset ``q``.
    """

    quotient: FiniteRing
    projection: RingHom
    coset_reps: tuple
    ideal: IdealSubset

    def lift(self, q: int) -> List[int]:
        """All parent elements projecting onto ``q``."""
        return [a for a, b in enumerate(self.projection.map) if b == q]


def quotient(R: FiniteRing, I: IdealSubset, *, allow_zero: bool = False) -> QuotientPresentation:
    """The quotient ring ``R/I``; ``I == R`` needs ``allow_zero``."""
    if I.parent is not R and not I.parent.same_tables(R):
        raise RingError("ideal belongs to a different ring")
    if not I.is_proper and not allow_zero:
        raise RingError("quotient by the whole ring is the zero ring; pass allow_zero=True")
    members = np.array(I.members)
    least = R.add[:, members].min(axis=1)
    reps = np.unique(least)
    coset = np.searchsorted(reps, least)
    add = coset[R.add[np.ix_(reps, reps)]]
    mul = coset[R.mul[np.ix_(reps, reps)]]
    one = int(coset[R.one]) if R.one is not None else None
    labels = [f"[{R.labels[r]}]" for r in reps]
    # a quotient of a ring by an ideal is a ring; the projection check below suffices
    Q = FiniteRing(add, mul, one, labels, f"{R.provenance}/{I!r}", check=False)
    proj = RingHom(R, Q, coset, R.one is not None)
    report = check_hom(proj)
    if not report:
        raise RingError(f"projection is not a homomorphism: {report}")
    return QuotientPresentation(Q, proj, tuple(int(r) for r in reps), I)


def analysis_report(R: FiniteRing) -> dict:
    """JSON-ready structural summary of ``R``."""
    ideals = all_ideals(R)
    maxes = maximal_ideals(R, ideals)
    report = {
        "ring": R.provenance,
        "order": R.order,
        "unital": R.is_unital,
        "commutative": R.is_commutative,
        "characteristic": R.characteristic(),
        "ideal_count": len(ideals),
        "maximal_ideals": [list(M.members) for M in maxes],
        "local": len(maxes) == 1,
    }
    if R.is_unital:
        report["unit_count"] = len(units(R))
        report["subfields"] = [list(K) for K in subfields(R)]
        report["is_field"] = is_field(R)
    return report
