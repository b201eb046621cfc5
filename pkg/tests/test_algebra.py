from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopf_verifier.algebra import (NonTerminating, Presentation, RankMismatch, UnknownGenerator,
                                   check_jacobi, nc_commutator, nc_exp, normal_order, tensor)
from hopf_verifier.builder import DuplicateRule, PresentationBuilder
from hopf_verifier.nullplane import UZP31, _uzp31_builder, build_presentation

N = 6


@pytest.fixture(scope="module")
def U():
    return build_presentation("uzp31", N)


def test_k3_pplus_normal_ordering(U):
    r = U.ring(1)
    g = r.gen
    Pp = g("P+")
    expect = Pp * g("K3") + Pp + (Pp * Pp).scale(1, 1) + (Pp * Pp * Pp).scale(Fraction(2, 3), 2) \
        + (Pp * Pp * Pp * Pp).scale(Fraction(1, 3), 3)
    got = g("K3") * Pp
    assert (got - expect).truncate(3).is_zero()
    # the coefficients of (e^{2zP+} - 1)/(2z) are 2^n z^n P+^{n+1} / (n+1)!
    from math import factorial
    c = got - Pp * g("K3")
    for n in range(N + 1):
        assert c.coefficient(((U.gen_index("P+"),) * (n + 1),))[n] == Fraction(2 ** n, factorial(n + 1))


def test_f2_f1_rewrite(U):
    g = U.ring(1).gen
    expect = g("F1") * g("F2") + (g("P1") * g("F2") - g("P2") * g("F1")).scale(-2, 1)
    # [F1, F2] = 2z(P1 F2 - P2 F1), so F2 F1 = F1 F2 - 2z P1 F2 + 2z P2 F1
    assert (g("F2") * g("F1") - expect).is_zero()


def test_e1_f2_bracket(U):
    g = U.ring(1).gen
    e2 = nc_exp(g("P+").scale(2, 1))
    assert (nc_commutator(g("E1"), g("F2")) - g("J3") * e2).is_zero()


def test_classical_limit_is_poincare():
    cl = build_presentation("poincare_classical", N)
    g = cl.ring(1).gen
    assert (nc_commutator(g("K3"), g("P+")) - g("P+")).is_zero()
    assert (nc_commutator(g("F1"), g("F2"))).is_zero()


@pytest.mark.parametrize("name", ["uzp31", "uzg", "funzg", "funzg_E", "poincare_classical"])
def test_jacobi_builtin(name):
    assert check_jacobi(build_presentation(name, 4))


def test_jacobi_alternative_pbw_order():
    alt = build_presentation("uzp31", 4, pbw=tuple(reversed(UZP31)))
    assert check_jacobi(alt)


def test_jacobi_detects_perturbed_bracket():
    b = _uzp31_builder(3)
    i, j = b.free.gen_index("F1"), b.free.gen_index("P1")
    key = (i, j) if (i, j) in b.comms else (j, i)
    b.comms[key] = b.comms[key] + b.z() * b.g("P2")
    rep = check_jacobi(b.build())
    assert not rep
    assert any("F1" in e.check for e in rep.failures())


def test_errors():
    U = build_presentation("uzp31", 2)
    with pytest.raises(UnknownGenerator):
        U.ring(1).gen("Q7")
    b = PresentationBuilder("t", ("a", "b"), order=2)
    b.comm("a", "b", b.g("a"))
    with pytest.raises(DuplicateRule):
        b.comm("b", "a", b.g("a"))
    r1, r2 = U.ring(1), U.ring(2)
    with pytest.raises(RankMismatch):
        r1.gen("P+") + r2.gen("P+")


def test_nonterminating_rule_set_is_reported():
    pres = Presentation("loop", ("a", "b"), order=2, relations={(1, 0): {((1, 0), 0): 1}},
                        budget=1000)
    r = pres.ring(1)
    with pytest.raises(NonTerminating):
        r.gen("b") * r.gen("a")


words = st.lists(st.sampled_from(UZP31), min_size=1, max_size=3)


def _word(r, w):
    out = r.one()
    for x in w:
        out = out * r.gen(x)
    return out


@settings(max_examples=30, deadline=None)
@given(words, words, words)
def test_product_is_associative(a, b, c):
    r = build_presentation("uzp31", 3).ring(1)
    x, y, w = _word(r, a), _word(r, b), _word(r, c)
    assert ((x * y) * w - x * (y * w)).is_zero()


@settings(max_examples=30, deadline=None)
@given(words, words)
def test_normal_order_is_idempotent_and_tensor_is_slotwise(a, b):
    U = build_presentation("uzp31", 3)
    r1, r2 = U.ring(1), U.ring(2)
    x, y = _word(r1, a), _word(r1, b)
    assert (normal_order(x * y) - x * y).is_zero()
    t = tensor(x, y, ring=r2)
    assert (t * t - tensor(x * x, y * y, ring=r2)).is_zero()
