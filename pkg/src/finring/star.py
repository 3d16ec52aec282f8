"""Deciding property (★): a maximal ideal whose residue field splits back into R.

Two independent procedures are provided:

* :func:`check_star_decomposition` pairs maximal ideals with subfields and
  accepts ``(M, κ)`` when every element is uniquely ``x + u`` with ``x`` in
  ``M`` and ``u`` in ``κ``;
* :func:`check_star_section` searches directly for a unital homomorphism
  ``R/M -> R`` that splits the canonical projection, never looking at the
  subfield lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .constructors import is_field
from .ring import FiniteRing, RingError, RingHom, check_hom, subring_closure
from .semidirect import (
    SemidirectSpec, build_sdprod, induced_actions, multiplication_actions, verify_action_pair,
)
from .structure import (
    IdealSubset, QuotientPresentation, is_ideal, is_subfield,
    maximal_ideals, quotient, subfields, units,
)


class UnsupportedQuotient(RingError):
    """The residue ring ``R/M`` is not commutative, so it is not a field."""


@dataclass(frozen=True)
class StarWitness:
    ring: FiniteRing
    M: IdealSubset
    kappa: tuple
    section: RingHom
    decomposition: tuple
    presentation: QuotientPresentation

    def decompose(self, a: int) -> Tuple[int, int]:
        return self.decomposition[a]

    def describe(self) -> str:
        R = self.ring
        kap = "{" + ", ".join(R.labels[u] for u in self.kappa) + "}"
        return f"M = {self.M!r}, κ = {kap}"


def _require_unital(R: FiniteRing) -> None:
    if R.one is None or R.order < 2:
        raise RingError("(★) is only considered for unital rings of order >= 2")


def witness_from(R: FiniteRing, M: IdealSubset, kappa) -> Optional[StarWitness]:
    """Build and verify a witness for the pair ``(M, κ)``, or ``None``.

    Since ``M ∩ κ = 0`` the sum map ``M × κ -> R`` is injective, so it is a
    bijection exactly when ``|M|·|κ| = |R|``.
    """
    kappa = tuple(sorted(kappa))
    if len(M) * len(kappa) != R.order:
        return None
    dec: List[Optional[tuple]] = [None] * R.order
    for x in M.members:
        for u in kappa:
            a = int(R.add[x, u])
            if dec[a] is not None:
                return None
            dec[a] = (x, u)
    if any(d is None for d in dec):
        return None
    pres = quotient(R, M)
    section = RingHom(pres.quotient, R, [dec[r][1] for r in pres.coset_reps], True)
    if not check_hom(section):
        return None
    if any(pres.projection(section(q)) != q for q in pres.quotient.elements()):
        return None
    return StarWitness(R, M, kappa, section, tuple(dec), pres)


def check_star_decomposition(R: FiniteRing, maxes=None, fields=None) -> Optional[StarWitness]:
    """First ``(M, κ)`` exhibiting (★), or ``None``.

    Maximal ideals are tried smallest first (ties by members), subfields in
    lexicographic order.
    """
    _require_unital(R)
    maxes = maximal_ideals(R) if maxes is None else maxes
    fields = subfields(R) if fields is None else fields
    for M in sorted(maxes, key=lambda I: (len(I), I.members)):
        for kappa in fields:
            w = witness_from(R, M, kappa)
            if w is not None:
                return w
    return None


def all_witnesses(R: FiniteRing, maxes=None, fields=None) -> List[StarWitness]:
    maxes = maximal_ideals(R) if maxes is None else maxes
    fields = subfields(R) if fields is None else fields
    found = []
    for M in maxes:
        for kappa in fields:
            w = witness_from(R, M, kappa)
            if w is not None:
                found.append(w)
    return found


def star_failure_reason(R: FiniteRing) -> str:
    maxes = maximal_ideals(R)
    fields = subfields(R)
    if not maxes:
        return "no maximal ideal exists"
    if not fields:
        return "no subfield exists"
    return (
        f"none of the {len(maxes)} maximal ideal(s) × {len(fields)} subfield(s) "
        "decomposes R as M ⊕ κ"
    )


def _polynomial_basis(Q: FiniteRing, g: int, p: int, k: int) -> Optional[dict]:
    """Map each element of ``Q`` to its coefficient vector in powers of ``g``."""
    powers = [Q.one]
    for _ in range(1, k):
        powers.append(int(Q.mul[powers[-1], g]))
    coords = {}
    for flat in range(p**k):
        coeffs = [(flat // p**i) % p for i in range(k)]
        v = 0
        for c, gp in zip(coeffs, powers):
            v = int(Q.add[v, Q.multiple(c, gp)])
        if v in coords:
            return None
        coords[v] = coeffs
    return coords if len(coords) == Q.order else None


def check_star_section(R: FiniteRing, M: IdealSubset) -> Optional[RingHom]:
    """A unital section ``R/M -> R`` of the canonical projection, or ``None``.

    The residue field ``F = R/M`` of order ``p^k`` is generated over its
    prime field by one element ``g``. A unital section is determined by the
    image ``r`` of ``g``, which must lie over ``g`` and satisfy ``g``'s
    minimal relation ``g^k = Σ c_i g^i``; each surviving candidate is
    extended to ``Σ a_i g^i ↦ Σ a_i r^i`` and verified exhaustively.
    Candidates are tried in element-index order.
    """
    _require_unital(R)
    pres = quotient(R, M)
    F = pres.quotient
    if not F.is_commutative:
        raise UnsupportedQuotient(f"R/M is a noncommutative ring of order {F.order}")
    if not is_field(F):
        raise RingError("R/M is not a field; is M maximal?")
    p = F.characteristic()
    k = round(np.log(F.order) / np.log(p))
    if R.multiple(p, R.one) != 0:
        return None  # s(p·1) = p·1_R must vanish
    g = next(a for a in F.elements() if len(_closure_in(F, a)) == F.order)
    coords = _polynomial_basis(F, g, p, k)
    relation = coords[F.power(g, k)] if k > 1 else coords[g]
    for r in pres.lift(g):
        if k > 1:
            lhs = R.power(r, k)
            rhs = _evaluate(R, relation, r)
            if lhs != rhs:
                continue
        table = [_evaluate(R, coords[q], r) for q in F.elements()]
        s = RingHom(F, R, table, True)
        if check_hom(s) and all(pres.projection(s(q)) == q for q in F.elements()):
            return s
    return None


def _closure_in(F: FiniteRing, a: int):
    return subring_closure(F, [F.one, a])


def _evaluate(R: FiniteRing, coeffs, r: int) -> int:
    acc, power = 0, R.one
    for c in coeffs:
        acc = int(R.add[acc, R.multiple(c, power)])
        power = int(R.mul[power, r])
    return acc


def decompose(w: StarWitness, a: int) -> Tuple[int, int]:
    """The unique ``(x, u)`` with ``x ∈ M``, ``u ∈ κ`` and ``a = x + u``."""
    return w.decomposition[a]


def build_phi(R: FiniteRing, M: IdealSubset, kappa) -> Tuple[RingHom, SemidirectSpec]:
    """``φ: M ⋊ κ -> R``, ``(x, u) ↦ x + u``, for any maximal ideal and subfield."""
    kappa = tuple(sorted(kappa))
    spec = induced_actions(R, kappa, M)
    P = build_sdprod(spec, provenance=f"{M!r} ⋊ κ")
    nk = len(kappa)
    table = [int(R.add[M.members[i // nk], kappa[i % nk]]) for i in P.elements()]
    return RingHom(P, R, table, True), spec


def build_phi_psi(R: FiniteRing, w: StarWitness) -> Tuple[RingHom, RingHom]:
    """The mutually inverse isomorphisms ``φ: M ⋊ κ -> R`` and ``ψ: R -> M ⋊ κ``.

    ``ψ(z) = (z - j([z]), j([z]))`` where ``j`` is the witness section.
    """
    phi, _ = build_phi(R, w.M, w.kappa)
    P = phi.domain
    pos_m = {x: i for i, x in enumerate(w.M.members)}
    pos_k = {u: i for i, u in enumerate(w.kappa)}
    psi_table = []
    for z in R.elements():
        u = w.section(w.presentation.projection(z))
        x = R.sub(z, u)
        psi_table.append(pos_m[x] * len(w.kappa) + pos_k[u])
    psi = RingHom(R, P, psi_table, True)
    for h in (phi, psi):
        report = check_hom(h)
        if not report:
            raise RingError(f"φ/ψ is not a homomorphism: {report}")
    return phi, psi


# -- classes (A) and (B) -----------------------------------------------------


@dataclass
class Classification:
    ring: FiniteRing
    is_field: bool
    star: Optional[StarWitness]
    class_a: bool
    class_a_witness: Optional[tuple] = None   # (M, κ)
    class_b: bool = False
    class_b_witness: Optional[tuple] = None   # (M, κ)
    notes: list = field(default_factory=list)

    def summary(self) -> dict:
        R = self.ring

        def names(members):
            return [R.labels[a] for a in members]

        out = {
            "ring": R.provenance,
            "is_field": self.is_field,
            "star": self.star is not None,
            "class_a": self.class_a,
            "class_b": self.class_b,
        }
        if self.star is not None:
            out["star_witness"] = {"M": names(self.star.M.members), "kappa": names(self.star.kappa)}
        for key, wit in (("class_a_witness", self.class_a_witness), ("class_b_witness", self.class_b_witness)):
            if wit is not None:
                out[key] = {"M": names(wit[0].members), "kappa": names(wit[1])}
        return out


def _decomposes(R: FiniteRing, elements, M: IdealSubset, kappa) -> bool:
    mset = M.mask
    for a in elements:
        if not any(mset[R.sub(a, u)] for u in kappa):
            return False
    return True


def classify(R: FiniteRing) -> Classification:
    """Decide field-ness, (★), and membership in classes (A) and (B).

    (A): local, and some subfield κ writes every unit as ``x + u`` with ``x``
    in the maximal ideal. (B): some subfield κ contains every unit and some
    maximal ideal writes every non-unit as ``x + u``. All subfields and
    maximal ideals are tried before answering no.
    """
    _require_unital(R)
    maxes = maximal_ideals(R)
    fields = subfields(R)
    U = sorted(units(R))
    non_units = [a for a in R.elements() if a not in set(U)]
    result = Classification(R, is_field(R), check_star_decomposition(R, maxes, fields), False)

    M = maxes[0] if len(maxes) == 1 else None
    if M is not None:
        for kappa in fields:
            if _decomposes(R, U, M, kappa):
                result.class_a, result.class_a_witness = True, (M, kappa)
                break
    for kappa in fields:
        if not set(U) <= set(kappa):
            continue
        for Mb in maxes:
            if _decomposes(R, non_units, Mb, kappa):
                result.class_b, result.class_b_witness = True, (Mb, kappa)
                break
        if result.class_b:
            break
    if not R.is_commutative:
        result.notes.append("ring is noncommutative")
    return result


# -- inheritance through semidirect products ----------------------------------


@dataclass
class InheritanceReport:
    ok: bool
    product: Optional[FiniteRing] = None
    predicted_M: Optional[IdealSubset] = None
    predicted_kappa: tuple = ()
    witness: Optional[StarWitness] = None
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_inheritance(S: FiniteRing, R: FiniteRing, spec: SemidirectSpec,
                      witness: Optional[StarWitness] = None) -> InheritanceReport:
    """Confirm that ``S ⋊ R`` has (★) via ``S ⋊ M`` and the field κ of ``R``.

    ``spec`` must have ``spec.B`` = ``S`` and ``spec.S`` = ``R``. The
    predicted ideal is checked to be maximal in the product and to carry the
    restricted actions, i.e. to be the rng ``S ⋊ M`` sitting inside.
    """
    if spec.B is not S or spec.S is not R:
        if not (spec.B.same_tables(S) and spec.S.same_tables(R)):
            raise RingError("spec must be an action pair of R on S")
    report = verify_action_pair(spec)
    if not report:
        raise RingError(f"invalid action pair: {report}")
    w = witness or check_star_decomposition(R)
    if w is None:
        raise RingError(f"{R!r} does not satisfy (★)")
    T = build_sdprod(spec)
    nR = R.order
    M_members = [b * nR + m for b in S.elements() for m in w.M.members]
    kappa = tuple(sorted(w.kappa))  # (0, u) has index u
    out = InheritanceReport(True, T, IdealSubset(T, M_members), kappa)

    if not is_ideal(T, M_members):
        out.failures.append("S ⋊ M is not an ideal")
    elif out.predicted_M.members not in {I.members for I in maximal_ideals(T)}:
        out.failures.append("S ⋊ M is not maximal")
    if not is_subfield(T, kappa):
        out.failures.append("κ is not a subfield of the product")

    # the predicted ideal carries the restricted actions λ' = λ|M, ρ' = ρ|M
    Mrng = R.restrict(w.M.members, unital=False, provenance="M")
    rows = list(w.M.members)
    restricted = SemidirectSpec(S, Mrng, spec.lam[rows], spec.rho[rows])
    if not verify_action_pair(restricted):
        out.failures.append("restricted actions are not an action pair")
    else:
        inner = build_sdprod(restricted, allow_nonunital=True)
        nM = len(rows)
        emb = RingHom(inner, T, [(i // nM) * nR + rows[i % nM] for i in inner.elements()], False)
        if not check_hom(emb) or sorted(emb.map) != list(out.predicted_M.members):
            out.failures.append("S ⋊ M does not embed onto the predicted ideal")

    if not out.failures:
        out.witness = witness_from(T, out.predicted_M, kappa)
        if out.witness is None:
            out.failures.append("predicted (M, κ) is not a (★) witness")
    out.ok = not out.failures
    return out


def ideal_action_spec(R: FiniteRing, I: IdealSubset) -> SemidirectSpec:
    """``R`` acting on its ideal ``I`` by multiplication (``B = I``, ``S = R``)."""
    return multiplication_actions(R, R.elements(), I.members)
