import itertools

import numpy as np
import pytest

from finring import (
    FiniteRing, RingError, SemidirectSpec, build_phi_psi, build_sdprod, check_hom,
    check_inheritance, check_star_decomposition, check_star_section, classify, decompose,
    eval_text, is_field, load_spec, make_gf, make_poly_quotient, make_product, make_zmod,
    maximal_ideals, subfields,
)
from finring.catalogue import default_catalogue
from finring.expr import DATA_DIR
from finring.star import (
    UnsupportedQuotient, all_witnesses, build_phi, ideal_action_spec, star_failure_reason,
    witness_from,
)
from finring.structure import IdealSubset

from oracles import section_by_brute_force, subfields_by_subsets


def mult_spec(k):
    u, a = np.arange(k.order)[:, None], np.arange(k.order)[None, :]
    return SemidirectSpec(k, k, k.mul[u, a], k.mul[a, u])


def labels(R, members):
    return [R.labels[a] for a in members]


def test_dual_numbers_over_gf2():
    R = make_poly_quotient(make_gf(2), [0, 0, 1])
    w = check_star_decomposition(R)
    assert labels(R, w.M.members) == ["0", "x"]
    assert labels(R, w.kappa) == ["0", "1"]
    assert w.section.map[w.presentation.projection(R.one)] == R.one


def test_zmod4_has_no_star():
    R = make_zmod(4)
    assert subfields(R) == []
    assert check_star_decomposition(R) is None
    assert star_failure_reason(R) == "no subfield exists"


def test_zmod8_reason():
    assert star_failure_reason(make_zmod(8)) == "no subfield exists"


def matrix_ring_gf2():
    mats = list(itertools.product(range(2), repeat=4))
    index = {m: i for i, m in enumerate(mats)}

    def mul(a, b):
        return (
            (a[0] * b[0] + a[1] * b[2]) % 2, (a[0] * b[1] + a[1] * b[3]) % 2,
            (a[2] * b[0] + a[3] * b[2]) % 2, (a[2] * b[1] + a[3] * b[3]) % 2,
        )

    add = [[index[tuple((x + y) % 2 for x, y in zip(a, b))] for b in mats] for a in mats]
    mult = [[index[mul(a, b)] for b in mats] for a in mats]
    return FiniteRing(add, mult, index[(1, 0, 0, 1)])


def test_reason_when_subfields_do_not_fit():
    R = matrix_ring_gf2()
    # GF(2) and a single GF(4): an element of order 3 and its square span the same copy
    assert subfields(R) == subfields_by_subsets(R)
    assert [len(K) for K in subfields(R)] == [2, 4]
    assert check_star_decomposition(R) is None
    assert star_failure_reason(R).startswith("none of the 1 maximal ideal(s) × 2 subfield(s)")


def test_product_without_subfield():
    assert check_star_decomposition(eval_text("product(Zmod(4), GF(2))")) is None


def test_gf3_squared_first_witness_and_other_pair():
    k = make_gf(3)
    R = make_product(k, k)
    first = check_star_decomposition(R)
    # smallest M first, then lexicographic members: 0 x GF(3) = {0, 1, 2} comes before GF(3) x 0
    assert first.M.members == (0, 1, 2)
    M = IdealSubset(R, [0, 3, 6])  # GF(3) x 0
    diag = [0, 4, 8]
    w = witness_from(R, M, diag)
    assert w is not None
    assert w.decompose(R.index("(2,1)")) == (R.index("(1,0)"), R.index("(1,1)"))
    assert sorted(map(tuple, (w.M.members, w.kappa))) == sorted([(0, 3, 6), (0, 4, 8)])


def test_decompose_f2_semidirect():
    R = build_sdprod(mult_spec(make_gf(2)))
    w = check_star_decomposition(R)
    assert labels(R, w.M.members) == ["(0,0)", "(1,0)"]
    assert labels(R, w.kappa) == ["(0,0)", "(0,1)"]
    x, u = decompose(w, R.index("(1,1)"))
    assert (R.labels[x], R.labels[u]) == ("(1,0)", "(0,1)")
    assert decompose(w, 0) == (0, 0)


def test_field_star_trivial_ideal():
    for q in (2, 4, 9):
        R = eval_text(f"GF({q})")
        w = check_star_decomposition(R)
        assert w.M.members == (0,) and len(w.kappa) == q


def test_zero_ring_excluded():
    Z = FiniteRing([[0]], [[0]], 0)
    with pytest.raises(RingError):
        check_star_decomposition(Z)
    with pytest.raises(RingError):
        classify(Z)


def test_section_examples():
    R = make_poly_quotient(make_gf(2), [0, 0, 1])
    s = check_star_section(R, maximal_ideals(R)[0])
    assert s is not None and s.map == (0, 1)

    Z4 = make_zmod(4)
    assert check_star_section(Z4, IdealSubset(Z4, [0, 2])) is None

    k = make_gf(2)
    P = make_product(k, k)
    s = check_star_section(P, IdealSubset(P, [0, 2]))  # GF(2) x 0
    assert labels(P, s.map) == ["(0,0)", "(1,1)"]


def test_section_rejects_noncommutative_quotient():
    R = matrix_ring_gf2()
    M = maximal_ideals(R)
    assert [I.members for I in M] == [(0,)]
    with pytest.raises(UnsupportedQuotient):
        check_star_section(R, M[0])


def catalogue_rings():
    return [(e.ring_id, e.build()) for e in default_catalogue()]


@pytest.mark.parametrize("ring_id,R", catalogue_rings(), ids=lambda v: v if isinstance(v, str) else "")
def test_section_oracle_matches_brute_force(ring_id, R):
    for M in maximal_ideals(R):
        s = check_star_section(R, M)
        brute = section_by_brute_force(R, M.members)
        assert (s is None) == (brute is None), (ring_id, M)
        if s is not None:
            assert check_hom(s)
            proj = None
            for w in all_witnesses(R):
                if w.M.members == M.members:
                    proj = w.presentation.projection
            if proj is not None:
                assert all(proj(s(q)) == q for q in range(len(s.map)))


def test_phi_psi_dual_numbers():
    R = make_poly_quotient(make_gf(2), [0, 0, 1])
    w = check_star_decomposition(R)
    phi, psi = build_phi_psi(R, w)
    assert phi.domain.order == 4 and phi.is_injective() and phi.is_surjective()
    assert check_hom(phi) and check_hom(psi)


def test_phi_psi_field_is_identity_up_to_relabel():
    R = make_gf(5)
    w = check_star_decomposition(R)
    phi, psi = build_phi_psi(R, w)
    # M = {0}: (0, u) has index u
    assert phi.map == tuple(range(5)) and psi.map == tuple(range(5))


def test_phi_psi_gf3_semidirect_roundtrip():
    R = build_sdprod(mult_spec(make_gf(3)))
    w = check_star_decomposition(R)
    phi, psi = build_phi_psi(R, w)
    assert all(psi(phi(p)) == p for p in range(9))
    assert all(phi(psi(z)) == z for z in range(9))


def test_phi_injective_for_non_witness_pairs():
    R = make_product(make_gf(3), make_gf(3))
    for M in maximal_ideals(R):
        for K in subfields(R):
            phi, _ = build_phi(R, M, K)
            assert check_hom(phi) and phi.is_injective()


def test_classify_examples():
    c = classify(make_poly_quotient(make_gf(3), [0, 0, 1]))
    assert c.class_a and not c.class_b and c.star is not None and not c.is_field

    c = classify(build_sdprod(mult_spec(make_gf(2))))
    assert c.class_b and not c.class_a and c.star is not None

    c = classify(build_sdprod(mult_spec(make_gf(3))))
    assert c.star is not None and not c.class_a and not c.class_b


def test_classify_field_in_both_classes():
    c = classify(make_gf(2, 2))
    assert c.is_field and c.class_a and c.class_b


def test_classification_summary_keys():
    s = classify(make_zmod(4)).summary()
    assert s["star"] is False and s["is_field"] is False
    assert set(s) >= {"ring", "is_field", "star", "class_a", "class_b"}


def test_inheritance_gf2_on_gf2():
    k = make_gf(2)
    spec = mult_spec(k)
    rep = check_inheritance(spec.B, spec.S, spec)
    assert rep.ok, rep.failures
    assert labels(rep.product, rep.predicted_M.members) == ["(0,0)", "(1,0)"]


def test_inheritance_two_z4():
    spec = load_spec(DATA_DIR / "two_z4_z2.json")
    rep = check_inheritance(spec.B, spec.S, spec)
    assert rep.ok, rep.failures
    assert labels(rep.product, rep.predicted_M.members) == ["(0,0)", "(2,0)"]


def test_inheritance_ideal_of_product():
    k = make_gf(3)
    R = make_product(k, k)
    I = IdealSubset(R, [0, 3, 6])  # GF(3) x 0
    spec = ideal_action_spec(R, I)
    rep = check_inheritance(spec.B, R, spec)
    assert rep.ok, rep.failures
    assert rep.product.order == 27


def test_inheritance_requires_star():
    Z4 = make_zmod(4)
    spec = ideal_action_spec(Z4, IdealSubset(Z4, [0, 2]))
    with pytest.raises(RingError):
        check_inheritance(spec.B, Z4, spec)


def test_witness_from_rejects_bad_pairs():
    R = make_product(make_gf(2), make_gf(2))
    M = IdealSubset(R, [0, 2])
    assert witness_from(R, M, [0, 3]) is not None
    assert witness_from(R, IdealSubset(R, [0]), [0, 3]) is None


def test_is_field_consistency():
    for e in default_catalogue():
        R = e.build()
        w = check_star_decomposition(R)
        if is_field(R):
            assert w is not None and len(w.M) == 1
