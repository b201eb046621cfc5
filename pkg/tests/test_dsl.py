import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import hopf_verifier
from hopf_verifier.builder import PresentationBuilder
from hopf_verifier.dsl import (DuplicateRuleError, ParseError, UndeclaredGenerator, _Expr,
                               load_presentation, parse_presentation, poly_to_expr, serialize,
                               tokenize)
from hopf_verifier.nullplane import UZP31, build_presentation

DATA = os.path.join(os.path.dirname(hopf_verifier.__file__), "data")
SHIPPED = ["uzp31", "uzg", "funzg"]

HEAD = "gen P+ order 0;\ngen K3 order 1;\n"


@pytest.mark.parametrize("name", SHIPPED)
@pytest.mark.parametrize("order", [3, 6])
def test_shipped_files_match_builtins(name, order):
    p = load_presentation(os.path.join(DATA, f"{name}.alg"), order=order)
    assert p.same_tables(build_presentation(name, order))


@pytest.mark.parametrize("name", SHIPPED + ["funzg_E"])
def test_serialize_roundtrip(name):
    pres = build_presentation(name, 4)
    text = serialize(pres)
    again = parse_presentation(text, order=4, degree=pres.degree)
    assert again.same_tables(pres)
    assert serialize(again) == text


def test_example_line_gives_the_series():
    p = parse_presentation(HEAD + "comm K3 P+ = (exp(2*z*P+) - 1)/(2*z);", order=3)
    r = p.ring(1)
    P = r.gen("P+")
    expect = P + (P * P).scale(1, 1) + (P * P * P).scale(Fraction(2, 3), 2) \
        + (P * P * P * P).scale(Fraction(1, 3), 3)
    assert (r.gen("K3") * P - P * r.gen("K3") - expect).is_zero()


def test_empty_relation_block_commutes():
    p = parse_presentation(HEAD, order=2)
    r = p.ring(1)
    assert (r.gen("K3") * r.gen("P+") - r.gen("P+") * r.gen("K3")).is_zero()


def test_longest_match_names():
    toks = tokenize("P+-P- + x", {"P+", "P-", "x"})
    assert [t.text for t in toks] == ["P+", "-", "P-", "+", "x"]


@pytest.mark.parametrize("text, err, line, col", [
    (HEAD + "comm K3 Q = 1;", UndeclaredGenerator, 3, 9),
    (HEAD + "comm K3 P+ = (1 + ;", ParseError, 3, 19),
    (HEAD + "comm K3 P+ = P+;\ncomm P+ K3 = 1;", DuplicateRuleError, 4, 1),
    (HEAD + "comm K3 P+ = exp(P+);", ParseError, 3, 14),
    (HEAD + "comm K3 P+ = P+ / K3;", ParseError, 3, 17),
    (HEAD + "comm K3 P+ = P+ $ 1;", ParseError, 3, 17),
    (HEAD + "comm K3 P+ = P+", ParseError, 3, 14),
])
def test_errors_carry_positions(text, err, line, col):
    with pytest.raises(err) as info:
        parse_presentation(text, order=2)
    assert (info.value.line, info.value.col) == (line, col)


def test_coproduct_needs_two_slots():
    with pytest.raises(ParseError):
        parse_presentation(HEAD + "coprod K3 = K3;", order=2)


coef = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda c: c != 0)
term = st.tuples(coef, st.integers(0, 3), st.lists(st.sampled_from(UZP31), max_size=3),
                 st.lists(st.sampled_from(UZP31), max_size=2))


@settings(max_examples=40, deadline=None)
@given(st.lists(term, max_size=5), st.booleans())
def test_expression_roundtrip(terms, two):
    b = PresentationBuilder("t", UZP31, order=4)
    r = b.ring(2 if two else 1)
    p = r.zero()
    for c, k, w1, w2 in terms:
        x = r.scalar(c) * r.zpow(k)
        for g in w1:
            x = x * r.gen(g, 0)
        if two:
            for g in w2:
                x = x * r.gen(g, 1)
        p = p + x
    toks = tokenize(poly_to_expr(p), set(UZP31))
    end = toks[-1] if toks else None
    got = _Expr(toks, b, end).parse()
    if isinstance(got, Fraction):
        got = r.scalar(got)
    elif got.rank != r.rank:
        got = r.scalar(got.scalar_value())
    assert (got - p).is_zero()
