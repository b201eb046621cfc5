import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hopf_verifier import matrixrep as m
from hopf_verifier.dsl import parse_presentation
from hopf_verifier.hopf import counit


def test_rep_matrix_arithmetic():
    A = m.RepMatrix.units(2, [(0, 1)])
    B = m.RepMatrix.units(2, [(1, 0)])
    assert (A @ B) == m.RepMatrix.units(2, [(0, 0)])
    assert m.commutator(A, B) == m.RepMatrix.units(2, [(0, 0), (-1, 1, 1)])
    assert A.kron(B).shape == (4, 4) and A.kron(B)[(1, 2)] == 1
    with pytest.raises(ValueError):
        A @ m.RepMatrix((3, 3))


def test_rep_relations_exact():
    assert m.check_rep_relations(6)


def test_nilpotent_generators():
    D = m.build_rep()
    for X in ("P+", "P1", "P2", "P-", "E1", "E2"):
        M, k = D[X], 1
        while not M.is_zero():
            M, k = M @ D[X], k + 1
        assert k <= 3
    K = D["K3"]
    assert K @ K @ K == K


def test_group_element_matches_display():
    T, expect = m.rep_T(4)
    assert (T - expect).is_zero()
    assert set(T.entries) == set(expect.entries)


def test_group_coproduct_and_inverse():
    assert m.rep_T_and_coproduct(4)


def test_rep_R_and_matrix_qybe():
    rep = m.rep_R_and_qybe()
    assert rep
    R, expect, squares, r = m.rep_R()
    assert all(ok for _, ok in squares)
    assert all(v.degree() <= 1 for v in R.entries.values())


def test_ddc_rule_reduces_row_relations_to_zero():
    r = m.qgroup(2, "none").ring(1)
    L = {(a, b): r.gen(f"L{a}{b}") for a in range(4) for b in range(4)}
    for mu, rho in itertools.product(range(4), repeat=2):
        rel = sum((L[(mu, n)] * L[(rho, n)] * m.ETA[n] for n in range(4)), r.zero())
        rel = rel - r.scalar(m.ETA[mu] if mu == rho else 0)
        assert m.ddc_reduce(rel).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(m.LAMBDA), min_size=0, max_size=4))
def test_ddc_reduction_leaves_at_most_one_column_zero_factor(word):
    r = m.qgroup(2, "none").ring(1)
    p = r.one()
    for x in word:
        p = p * r.gen(x)
    red = m.ddc_reduce(p)
    for (key, _k) in red.terms:
        assert sum(1 for i in key[0] if i < 16 and i % 4 == 0) <= 1
    # reducing twice changes nothing
    assert (m.ddc_reduce(red) - red).is_zero()


def test_frt_with_derived_relations_closes():
    rep = m.frt_check(3, relations="derived")
    assert rep and len(rep) == 626


def test_printed_relations_fail_on_four_constants():
    """The printed [L, x+] brackets at (mu, nu) in {0,3}^2 carry a wrong constant."""
    rel = m.compare_relation_sets()
    bad = sorted(e.check for e in rel.failures())
    assert bad == ["relation[L00,x+]", "relation[L03,x+]", "relation[L30,x+]", "relation[L33,x+]"]
    pres = m.qgroup(3)
    inconsistent = [(a, b) for a, b in itertools.combinations(m.QGROUP, 2)
                    if counit(pres.commutator_poly(a, b))]
    assert inconsistent == [("L00", "x+"), ("L03", "x+"), ("L30", "x+"), ("L33", "x+")]
    frt = m.frt_check(3)
    assert "16 entries" in frt.get("frt_all_entries").detail
    with pytest.raises(m.ReductionFailure):
        m.frt_check(3, strict=True)


def test_derived_relations_are_hopf_consistent():
    assert m.relation_consistency(3, "derived")


def test_derived_relations_reingest_through_dsl():
    p = parse_presentation(m.derived_relations_dsl(), order=3)
    q = m.qgroup(3, "derived")
    assert p.generators == q.generators
    for a, b in itertools.combinations(m.QGROUP, 2):
        assert (p.commutator_poly(a, b).truncate(3).terms == q.commutator_poly(a, b).terms)


def test_quantum_group_hopf():
    assert m.quantum_group_hopf(3)
    assert m.quantum_group_hopf(3, "derived")


def test_poisson_constant_and_vanishing_lorentz_brackets():
    rep = m.poisson_check()
    assert "constant -1" in rep.get("poisson_constant").detail
    ll = [e for e in rep if e.check.startswith("poisson_LL")]
    assert ll and all(e.passed for e in ll)
    assert all(e.passed for e in rep if e.check.startswith("poisson_antisym"))
    failed = sorted(e.check for e in rep.failures())
    assert failed == ["poisson[L00,x+]", "poisson[L03,x+]", "poisson[L30,x+]", "poisson[L33,x+]"]
