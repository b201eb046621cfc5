from fractions import Fraction

import pytest

from hopf_verifier.algebra import nc_commutator
from hopf_verifier.nullplane import (PHI, UnknownPresentation, build_presentation, casimir,
                                     casimir_centrality, casimir_classical_limit,
                                     check_subalgebra_closure, classical_r, cybe_classical,
                                     phi_morphism_check)


def test_unknown_presentation():
    with pytest.raises(UnknownPresentation):
        build_presentation("su2")


def test_subalgebra_closure_with_negative_control():
    rep = check_subalgebra_closure(6)
    assert rep
    # adding F1 must leave the subalgebra: the control records that it does
    assert rep.get("closure_negative_control(F1)").passed


def test_casimir_central_at_six():
    assert casimir_centrality(6)


def test_casimir_limit_exact():
    lim, expect = casimir_classical_limit(6)
    assert (lim - expect).is_zero()
    C = casimir(4)
    assert not C.is_zero()
    g = C.ring.gen
    assert nc_commutator(C, g("F1")).is_zero()


def test_phi_morphism():
    rep = phi_morphism_check(6)
    assert rep and len(rep) == 21


def test_phi_scales_by_two_z():
    assert {v[0] for v in PHI.values()} == {"E2", "E1", "P+", "K3", "P1", "P2"}


def test_classical_r_and_cybe():
    r = classical_r()
    assert len(r.terms) == 6
    assert set(r.terms.values()) == {Fraction(2), Fraction(-2)}
    assert cybe_classical()
