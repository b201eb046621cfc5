import pytest
from hypothesis import given, settings, strategies as st

from hopf_verifier.algebra import RankMismatch
from hopf_verifier.hopf import (antipode, check_all_axioms, check_hopf_axioms, coproduct,
                                counit, flip)
from hopf_verifier.nullplane import FUNZG, UZP31, _uzp31_builder, build_presentation


@pytest.mark.parametrize("name", ["uzp31", "uzg", "funzg", "funzg_E", "poincare_classical"])
def test_axioms_hold(name):
    rep = check_all_axioms(build_presentation(name, 4), sample=6, seed=1)
    assert rep, str(rep)


def test_one_entry_per_axiom_and_generator():
    pres = build_presentation("uzg", 3)
    assert len(check_hopf_axioms(pres, "coassociativity")) == 6
    assert len(check_hopf_axioms(pres, "antipode")) == 12
    with pytest.raises(ValueError):
        check_hopf_axioms(pres, "bialgebra")


def test_primitive_and_twisted_coproducts():
    U = build_presentation("uzp31", 4)
    r1, r2 = U.ring(1), U.ring(2)
    P = r1.gen("P+")
    assert (coproduct(P) - r2.gen("P+", 0) - r2.gen("P+", 1)).is_zero()
    assert counit(r1.gen("K3")).is_zero()
    assert (antipode(antipode(P)) - P).is_zero()


def test_flip_rank_errors():
    r2 = build_presentation("uzg", 2).ring(2)
    with pytest.raises(RankMismatch):
        flip(r2.gen("P+", 0), 0, 2)


def test_perturbed_antipode_fails():
    b = _uzp31_builder(3)
    i = b.free.gen_index("F1")
    b.antipodes[i] = b.antipodes[i] + b.z() * b.g("P1")
    rep = check_hopf_axioms(b.build(), "antipode")
    assert not rep
    assert {e.check for e in rep.failures()} >= {"antipode_left(F1)"}


def test_perturbed_bracket_breaks_coproduct_hom():
    b = _uzp31_builder(3)
    i, j = b.free.gen_index("F1"), b.free.gen_index("P1")
    key = (i, j) if (i, j) in b.comms else (j, i)
    b.comms[key] = b.comms[key] + b.z() * b.g("P2")
    assert not check_hopf_axioms(b.build(), "coproduct_hom", pairs=[("F1", "P1")])


def _word(r, w):
    out = r.one()
    for x in w:
        out = out * r.gen(x)
    return out


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(UZP31), min_size=1, max_size=3),
       st.lists(st.sampled_from(UZP31), min_size=1, max_size=2))
def test_coproduct_multiplicative_antipode_antimultiplicative(a, b):
    U = build_presentation("uzp31", 3)
    r = U.ring(1)
    x, y = _word(r, a), _word(r, b)
    assert (coproduct(x * y) - coproduct(x) * coproduct(y)).is_zero()
    assert (antipode(x * y) - antipode(y) * antipode(x)).is_zero()
    assert counit(x * y) == counit(x) * counit(y)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(FUNZG), min_size=1, max_size=3))
def test_dual_coproduct_multiplicative(a):
    F = build_presentation("funzg", 4)
    r = F.ring(1)
    x = _word(r, a)
    y = r.gen("a+")
    assert (coproduct(x * y) - coproduct(x) * coproduct(y)).is_zero()
