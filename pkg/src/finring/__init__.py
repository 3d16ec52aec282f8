"""Finite rings as Cayley tables: ideals, semidirect products and split residue fields."""

from .ring import (
    CheckResult, FiniteRing, OrderCapError, RingAxiomError, RingError, RingHom, TableShapeError,
    check_hom, find_isomorphism, get_order_cap, load_ring, order_cap, ring_from_dict, ring_to_dict,
    save_ring, set_order_cap, subring_closure, verify_ring_axioms,
)
from .constructors import (
    is_field, make_function_ring, make_gf, make_poly_quotient, make_product, make_zmod,
)
from .structure import (
    IdealSubset, NotAnIdealError, QuotientPresentation, all_ideals, analysis_report, is_ideal,
    is_local, is_subfield, maximal_ideals, principal_ideal, quotient, subfields, units,
)
from .semidirect import (
    ActionPairError, SemidirectSpec, build_sdprod, enumerate_action_pairs, induced_actions,
    load_spec, multiplication_actions, save_spec, verify_action_pair,
)
from .star import (
    Classification, StarWitness, UnsupportedQuotient, build_phi_psi, check_inheritance,
    check_star_decomposition, check_star_section, classify, decompose,
)
from .expr import ExprError, eval_text, evaluate, parse, render
from .catalogue import default_catalogue, verify_catalogue

__version__ = "0.1.0"
