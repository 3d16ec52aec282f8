"""The fixed ring catalogue and the check matrix run over it."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional

import numpy as np

from .constructors import is_field, is_prime
from .expr import DATA_DIR, eval_text
from .ring import FiniteRing, check_hom, verify_ring_axioms
from .semidirect import (
    SemidirectSpec, build_sdprod, first_component_ideal, injections, load_spec,
)
from .structure import all_ideals, is_local, maximal_ideals, quotient, subfields, units
from .star import (
    UnsupportedQuotient, all_witnesses, build_phi, build_phi_psi, check_star_section, classify,
    witness_from,
)


@dataclass
class CatalogueEntry:
    ring_id: str
    build: Callable[[], FiniteRing]
    expect_star: Optional[bool] = None
    spec: Optional[Callable[[], SemidirectSpec]] = None
    # kappa ⋊ kappa entries get the explicit unit-formula check
    self_product_of: Optional[str] = None


def _expr(text: str) -> Callable[[], FiniteRing]:
    return lambda: eval_text(text)


def _self_spec(field_expr: str) -> Callable[[], SemidirectSpec]:
    def make():
        k = eval_text(field_expr)
        u, a = np.arange(k.order)[:, None], np.arange(k.order)[None, :]
        return SemidirectSpec(k, k, k.mul[u, a], k.mul[a, u])
    return make


def _two_z4_spec() -> SemidirectSpec:
    return load_spec(DATA_DIR / "two_z4_z2.json")


def default_catalogue() -> List[CatalogueEntry]:
    entries = []
    for n in range(2, 17):
        entries.append(CatalogueEntry(f"Zmod({n})", _expr(f"Zmod({n})"), is_prime(n)))
    for q in (2, 3, 4, 5, 7, 8, 9):
        entries.append(CatalogueEntry(f"GF({q})", _expr(f"GF({q})"), True))
    for q in (2, 3):
        entries.append(CatalogueEntry(f"GF({q})[x]/<x^2>", _expr(f"polyquot(GF({q}), [0,0,1])"), True))
        entries.append(CatalogueEntry(f"GF({q})[x]/<x^3>", _expr(f"polyquot(GF({q}), [0,0,0,1])"), True))
    for q in (2, 3):
        entries.append(CatalogueEntry(f"GF({q})xGF({q})", _expr(f"product(GF({q}), GF({q}))"), True))
    for q, x in ((2, 2), (2, 3), (3, 2)):
        entries.append(CatalogueEntry(f"GF({q})^{x}", _expr(f"fnring({x}, GF({q}))"), True))
    for q in (2, 3, 4, 5):
        spec = _self_spec(f"GF({q})")
        entries.append(CatalogueEntry(
            f"GF({q})⋊GF({q})", (lambda s=spec: build_sdprod(s())), True, spec, f"GF({q})",
        ))
    entries.append(CatalogueEntry(
        "2(Z/4Z)⋊Z/2Z", lambda: build_sdprod(_two_z4_spec()), True, _two_z4_spec,
    ))
    entries.append(CatalogueEntry("GF(4)⋊GF(2)", _expr("sdprod_alg(GF(4), GF(2))"), True))
    return entries


@dataclass
class CheckRow:
    ring_id: str
    check_id: str
    paper_ref: str
    passed: bool
    witness: str = ""


# check_id -> the statement being verified
CHECKS = {
    "ring-axioms": "tables form an associative ring",
    "expected-star": "known (★) status of the family",
    "residue-field": "R/M is a field for every maximal M",
    "subfield-meets-ideal": "κ ∩ M = {0} for subfields κ and maximal M",
    "lagrange": "|I| divides |R| for every ideal",
    "simple-iff-field": "fields have only trivial ideals and conversely",
    "section-agreement": "section exists iff some κ has |M|·|κ| = |R|",
    "maximal-field": "witness fields stay witnesses when enlarged; equal orders per M",
    "class-intersection": "rings in both classes (A) and (B) are fields",
    "field-star": "a field has (★) with M = {0}",
    "decomposition-bijection": "M × κ -> R, (x, u) -> x + u is a bijection for witnesses",
    "phi-psi-roundtrip": "φ and ψ are inverse ring isomorphisms",
    "phi-injective": "φ: M ⋊ κ -> R is an injective hom for all maximal M and subfields κ",
    "injections": "b -> (b,0) and s -> (0,s) preserve products",
    "first-component-maximal": "{(x,0)} is a maximal ideal with (★) witness",
    "not-local": "B ⋊ κ with unital B is not local",
    "unit-formula": "U(κ⋊κ) = {(a,b): b != 0 and (a = 0 or a != -b)}",
}


class _Checker:
    def __init__(self, entry: CatalogueEntry):
        self.entry = entry
        self.rows: List[CheckRow] = []

    def record(self, check_id: str, passed: bool, witness: str = "") -> None:
        self.rows.append(CheckRow(self.entry.ring_id, check_id, CHECKS[check_id], bool(passed), witness))

    def run(self, check_id: str, fn) -> None:
        try:
            result = fn()
        except Exception as exc:  # a crashing check is a failing check
            self.record(check_id, False, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(result, tuple):
            self.record(check_id, *result)
        else:
            self.record(check_id, result)


def check_ring(entry: CatalogueEntry, R: Optional[FiniteRing] = None) -> List[CheckRow]:
    """Run every applicable check on one catalogue entry."""
    c = _Checker(entry)
    if R is None:
        try:
            R = entry.build()
        except Exception as exc:
            c.record("ring-axioms", False, f"construction failed: {exc}")
            return c.rows
    report = verify_ring_axioms(R)
    c.record("ring-axioms", bool(report), "" if report else str(report))

    cache = {}

    def lattice():
        if "ideals" not in cache:
            cache["ideals"] = all_ideals(R)
            cache["maxes"] = maximal_ideals(R, cache["ideals"])
            cache["fields"] = subfields(R)
        return cache["ideals"], cache["maxes"], cache["fields"]

    def witnesses():
        if "witnesses" not in cache:
            _, maxes, fields = lattice()
            cache["witnesses"] = all_witnesses(R, maxes, fields)
        return cache["witnesses"]

    def expected_star():
        got = bool(witnesses())
        return got == entry.expect_star, f"star={got}, expected {entry.expect_star}"

    def residue_field():
        _, maxes, _ = lattice()
        skipped = []
        for M in maxes:
            Q = quotient(R, M).quotient
            if not Q.is_commutative:
                skipped.append(repr(M))  # noncommutative simple quotient: reported, not asserted
                continue
            if not is_field(Q):
                return False, f"R/{M!r} is not a field"
        return True, f"noncommutative quotient(s) skipped: {', '.join(skipped)}" if skipped else ""

    def subfield_meets_ideal():
        _, maxes, fields = lattice()
        for M in maxes:
            for K in fields:
                common = set(M.members) & set(K)
                if common != {0}:
                    return False, f"{M!r} ∩ {K} = {sorted(common)}"
        return True

    def lagrange():
        ideals, _, _ = lattice()
        bad = [I for I in ideals if R.order % len(I)]
        return not bad, f"{bad[0]!r}" if bad else ""

    def simple_iff_field():
        ideals, _, _ = lattice()
        field = is_field(R)
        if field and len(ideals) != 2:
            return False, f"field with {len(ideals)} ideals"
        if R.is_commutative and R.one is not None and len(ideals) == 2 and not field:
            return False, "only trivial ideals but not a field"
        return True

    def section_agreement():
        _, maxes, fields = lattice()
        unsupported = []
        for M in maxes:
            try:
                section = check_star_section(R, M)
            except UnsupportedQuotient:
                unsupported.append(repr(M))
                continue
            predicted = any(len(M) * len(K) == R.order for K in fields)
            if (section is not None) != predicted:
                return False, f"M={M!r}: section={section is not None}, decomposition={predicted}"
        return True, f"unsupported (noncommutative R/M): {', '.join(unsupported)}" if unsupported else ""

    def maximal_field():
        _, _, fields = lattice()
        for w in witnesses():
            for K in fields:
                if set(w.kappa) <= set(K) and witness_from(R, w.M, K) is None:
                    return False, f"{K} contains witness field {w.kappa} but is not a witness"
        by_m = {}
        for w in witnesses():
            by_m.setdefault(w.M.members, set()).add(len(w.kappa))
        bad = [m for m, sizes in by_m.items() if len(sizes) > 1]
        return not bad, f"M={bad[0]}" if bad else ""

    def class_intersection():
        cl = classify(R)
        return (not (cl.class_a and cl.class_b)) or cl.is_field, f"A={cl.class_a}, B={cl.class_b}"

    def field_star():
        if not is_field(R):
            return True, "not a field (vacuous)"
        return any(len(w.M) == 1 for w in witnesses())

    def decomposition_bijection():
        for w in witnesses():
            sums = {int(R.add[x, u]) for x in w.M.members for u in w.kappa}
            if len(sums) != R.order or any(int(R.add[x, u]) != a for a, (x, u) in enumerate(w.decomposition)):
                return False, w.describe()
        return True

    def phi_psi_roundtrip():
        for w in witnesses():
            phi, psi = build_phi_psi(R, w)
            if any(phi(psi(z)) != z for z in R.elements()):
                return False, f"φ∘ψ != id for {w.describe()}"
            if any(psi(phi(p)) != p for p in phi.domain.elements()):
                return False, f"ψ∘φ != id for {w.describe()}"
        return True

    def phi_injective():
        _, maxes, fields = lattice()
        for M in maxes:
            for K in fields:
                phi, _ = build_phi(R, M, K)
                if not check_hom(phi) or not phi.is_injective():
                    return False, f"M={M!r}, κ={K}"
        return True

    if entry.expect_star is not None:
        c.run("expected-star", expected_star)
    for check_id, fn in (
        ("residue-field", residue_field),
        ("subfield-meets-ideal", subfield_meets_ideal),
        ("lagrange", lagrange),
        ("simple-iff-field", simple_iff_field),
        ("section-agreement", section_agreement),
        ("maximal-field", maximal_field),
        ("class-intersection", class_intersection),
        ("field-star", field_star),
        ("decomposition-bijection", decomposition_bijection),
        ("phi-psi-roundtrip", phi_psi_roundtrip),
        ("phi-injective", phi_injective),
    ):
        if R.one is None or R.order < 2:
            break
        c.run(check_id, fn)

    if entry.spec is not None:
        _semidirect_checks(c, entry, R)
    return c.rows


def _semidirect_checks(c: _Checker, entry: CatalogueEntry, R: FiniteRing) -> None:
    spec = entry.spec()

    def injections_ok():
        i_B, i_S = injections(spec, R)
        return bool(check_hom(i_B)) and bool(check_hom(i_S))

    def first_component():
        M = first_component_ideal(spec, R)
        if M.members not in {I.members for I in maximal_ideals(R)}:
            return False, f"{M!r} not maximal"
        return witness_from(R, M, range(spec.S.order)) is not None

    def not_local():
        B = spec.B
        if B.one is None or B.order < 2:
            return True, "B not unital (vacuous)"
        nS = spec.S.order
        minus_one_one = int(B.neg[B.one]) * nS + spec.S.one
        outside = minus_one_one not in set(first_component_ideal(spec, R).members)
        return (not is_local(R)) and outside and minus_one_one not in units(R)

    def unit_formula():
        k = spec.S
        nS = k.order
        formula = {
            a * nS + b for a in k.elements() for b in k.elements()
            if b != 0 and (a == 0 or a != int(k.neg[b]))
        }
        scanned = set(units(R))
        return formula == scanned, f"formula-only={sorted(formula - scanned)}, scan-only={sorted(scanned - formula)}"

    c.run("injections", injections_ok)
    c.run("first-component-maximal", first_component)
    c.run("not-local", not_local)
    if entry.self_product_of is not None:
        c.run("unit-formula", unit_formula)


@dataclass
class CatalogueReport:
    rows: List[CheckRow]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> List[CheckRow]:
        return [r for r in self.rows if not r.passed]

    def matrix(self) -> List[dict]:
        return [
            {"ring_id": r.ring_id, "check_id": r.check_id, "paper_ref": r.paper_ref,
             "pass": r.passed, "witness": r.witness}
            for r in self.rows
        ]

    def to_json(self) -> str:
        return json.dumps(self.matrix(), indent=1, ensure_ascii=False)

    def format_table(self) -> str:
        width = max((len(r.ring_id) for r in self.rows), default=8)
        cw = max((len(r.check_id) for r in self.rows), default=8)
        lines = [f"{'ring':<{width}}  {'check':<{cw}}  result"]
        for r in self.rows:
            line = f"{r.ring_id:<{width}}  {r.check_id:<{cw}}  {'PASS' if r.passed else 'FAIL'}"
            if not r.passed and r.witness:
                line += f"  {r.witness}"
            lines.append(line)
        passed = sum(r.passed for r in self.rows)
        lines.append(f"{passed}/{len(self.rows)} checks passed")
        return "\n".join(lines)


def verify_catalogue(entries: Optional[Iterable[CatalogueEntry]] = None) -> CatalogueReport:
    """Run every check over ``entries`` (default: the fixed catalogue), in order."""
    entries = default_catalogue() if entries is None else list(entries)
    rows: List[CheckRow] = []
    for entry in entries:
        rows.extend(check_ring(entry))
    return CatalogueReport(rows)


__all__ = [
    "CatalogueEntry", "CatalogueReport", "CheckRow", "CHECKS",
    "check_ring", "default_catalogue", "verify_catalogue",
]
