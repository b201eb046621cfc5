"""The null-plane quantum Poincare algebra, its Hopf subalgebra, the dual group and friends.

Identifiers understood by :func:`build_presentation`:

``uzp31``
    ten generators ``E2 E1 P+ K3 P1 P2 P- F1 F2 J3`` (this is the PBW order)
``uzg``
    the six-generator Hopf subalgebra ``E2 E1 P+ K3 P1 P2``
``funzg``
    coordinates ``e2 e1 a+ k3 a1 a2`` of the dual group, truncated by the
    degree filtration (``e^{k3}`` is a series in ``k3``)
``funzg_E``
    the same coordinates with ``k3`` replaced by group-like symbols
    ``E+ = e^{k3}`` and ``E- = e^{-k3}``; z filtration
``poincare_classical``
    ``uzp31`` at ``z = 0``
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import factorial

from .algebra import (NCPolynomial, Presentation, WordMap, exp_gen, map_slots, nc_commutator,
                      normal_order, power_series_in, tensor)
from .builder import PresentationBuilder, divide
from .hopf import coproduct, flip
from .report import Report
from .series import DEFAULT_ORDER, ZSeries

UZP31 = ("E2", "E1", "P+", "K3", "P1", "P2", "P-", "F1", "F2", "J3")
UZG = UZP31[:6]
FUNZG = ("e2", "e1", "a+", "k3", "a1", "a2")
FUNZG_E = ("e2", "e1", "a+", "E+", "E-", "a1", "a2")
PRESENTATIONS = ("uzp31", "uzg", "funzg", "funzg_E", "poincare_classical")

# funzg generator -> (uzg generator, coefficient); the image is coeff * 2z * X
PHI = {"a+": ("K3", -1), "a1": ("E1", -1), "a2": ("E2", -1), "k3": ("P+", 1),
       "e1": ("P1", 1), "e2": ("P2", 1)}

# the change of basis from the tilde generators, kept for reference only:
# name -> (prefactor exp(z*P~+) applied?, list of (coeff, z power, word))
TILDE_MAP = {
    "P+": (False, [(1, 0, ("P~+",))]),
    "E1": (False, [(1, 0, ("E~1",))]),
    "E2": (False, [(1, 0, ("E~2",))]),
    "J3": (False, [(1, 0, ("J~3",))]),
    "P-": (True, [(1, 0, ("P~-",))]),
    "P1": (True, [(1, 0, ("P~1",))]),
    "P2": (True, [(1, 0, ("P~2",))]),
    "F1": (True, [(1, 0, ("F~1",)), (-1, 1, ("E~1", "P~-")), (-1, 1, ("J~3", "P~2"))]),
    "F2": (True, [(1, 0, ("F~2",)), (-1, 1, ("E~2", "P~-")), (1, 1, ("J~3", "P~1"))]),
    "K3": (True, [(1, 0, ("K~3",)), (-1, 1, ("E~1", "P~1")), (-1, 1, ("E~2", "P~2"))]),
}


class UnknownPresentation(KeyError):
    pass


def _zs(b: PresentationBuilder, c=1, k=1) -> ZSeries:
    return ZSeries.z(b.order + b.margin, k) * c


def _uzp31_builder(order, pbw=None) -> PresentationBuilder:
    gens = UZP31 if pbw is None else tuple(pbw)
    if sorted(gens) != sorted(UZP31):
        raise ValueError("pbw must be a permutation of the uzp31 generators")
    b = PresentationBuilder("uzp31", gens, order=order)
    g, one, z = b.g, b.one(), b.z()
    e2 = exp_gen(b.ring(), "P+", 2)
    em2 = exp_gen(b.ring(), "P+", -2)
    qp = divide(e2 - one, _zs(b, 2))          # (e^{2zP+} - 1)/(2z)
    P1, P2, Pm = g("P1"), g("P2"), g("P-")
    E = {1: g("E1"), 2: g("E2")}
    F = {1: g("F1"), 2: g("F2")}
    P = {1: P1, 2: P2}
    K3, J3 = g("K3"), g("J3")
    psq = z * (P1 * P1 + P2 * P2)

    b.comm("K3", "P+", qp)
    b.comm("K3", "P-", -Pm - psq)
    for i in (1, 2):
        b.comm("K3", f"E{i}", E[i] * e2)
        b.comm("K3", f"F{i}", -F[i] - (z * K3 * P[i]).scale(2))
        b.comm(f"E{i}", f"P{i}", qp)
        b.comm(f"F{i}", f"P{i}", Pm + psq)
        b.comm(f"E{i}", f"F{i}", K3)
        b.comm("P+", f"F{i}", -P[i])
        b.comm("P-", f"E{i}", -P[i])
    # [J3, X_i] = -eps_{ij3} X_j
    for X in ("P", "E", "F"):
        b.comm("J3", f"{X}1", -g(f"{X}2"))
        b.comm("J3", f"{X}2", g(f"{X}1"))
    b.comm("E1", "F2", J3 * e2)
    b.comm("E2", "F1", -(J3 * e2))
    b.comm("F1", "F2", (z * (P1 * F[2] - P2 * F[1])).scale(2))

    r2 = b.ring(2)

    def t(x, y):
        return tensor(x, y, ring=r2)

    for X in ("P+", "E1", "E2", "J3"):
        b.coprod(X, t(one, g(X)) + t(g(X), one))
        b.antipode(X, -g(X))
    for Y in ("P-", "P1", "P2"):
        b.coprod(Y, t(one, g(Y)) + t(g(Y), e2))
        b.antipode(Y, -(g(Y) * em2))
    two_z = ZSeries.z(b.order + b.margin) * 2
    b.coprod("F1", t(one, F[1]) + t(F[1], e2) - t(Pm, E[1] * e2) * two_z - t(P2, J3 * e2) * two_z)
    b.coprod("F2", t(one, F[2]) + t(F[2], e2) - t(Pm, E[2] * e2) * two_z + t(P1, J3 * e2) * two_z)
    b.coprod("K3", t(one, K3) + t(K3, e2) - t(P1, E[1] * e2) * two_z - t(P2, E[2] * e2) * two_z)
    b.antipode("F1", -((F[1] + (z * Pm * E[1] + z * P2 * J3).scale(2)) * em2))
    b.antipode("F2", -((F[2] + (z * Pm * E[2] - z * P1 * J3).scale(2)) * em2))
    b.antipode("K3", -((K3 + (z * P1 * E[1] + z * P2 * E[2]).scale(2)) * em2))
    for X in gens:
        b.counit(X, 0)
    return b


def _restrict(pres: Presentation, name, keep) -> Presentation:
    """Sub-presentation on the generators ``keep`` (a PBW prefix of ``pres``)."""
    n = len(keep)
    if pres.generators[:n] != tuple(keep):
        raise ValueError("restriction needs a PBW prefix")

    def inside(words):
        return all(i < n for w in words for i in w)

    comms = {ab: v for ab, v in pres.commutators.items() if ab[0] < n}
    for v in comms.values():
        if not all(inside((w,)) for (w, _) in v):
            raise ValueError(f"{name} is not closed under brackets")
    out = Presentation(name, keep, order=pres.order, degree=pres.degree,
                       filtration=pres.filtration, commutators=comms,
                       coproduct={a: v for a, v in pres.coproduct.items() if a < n},
                       counit={a: v for a, v in pres.counit.items() if a < n},
                       antipode={a: v for a, v in pres.antipode.items() if a < n})
    for a in range(n):
        if not all(inside(key) for (key, _) in out.coproduct[a]):
            raise ValueError(f"{name} is not closed under the coproduct")
    return out


def _classical(pres: Presentation) -> Presentation:
    def z0(table):
        return {a: {t: c for t, c in v.items() if t[1] == 0} for a, v in table.items()}
    return Presentation("poincare_classical", pres.generators, order=pres.order,
                        commutators=z0(pres.commutators), coproduct=z0(pres.coproduct),
                        counit={a: {0: v.get(0, 0)} for a, v in pres.counit.items()},
                        antipode=z0(pres.antipode))


def _funzg_builder(order, degree) -> PresentationBuilder:
    b = PresentationBuilder("funzg", FUNZG, order=order, degree=degree, filtration="degree")
    g, one, z = b.g, b.one(), b.z()
    ring = b.ring()

    def ek(sign=1, r=ring):
        # e^{sign k3} as a z-free series in k3 (slot 0)
        return power_series_in(r, "k3", lambda n: (Fraction(sign) ** n / factorial(n), 0))

    ek1 = ek()
    b.comm("k3", "a+", (z * (ek1 - one)).scale(2))
    for i in (1, 2):
        b.comm(f"a{i}", "a+", (z * g(f"a{i}") * ek1).scale(2))
        b.comm(f"e{i}", f"a{i}", (z * (ek1 - one)).scale(2))
    r2 = b.ring(2)
    ek_2 = ek(r=r2)

    def t(x, y):
        return tensor(x, y, ring=r2)

    for X in ("k3", "a1", "a2"):
        b.coprod(X, t(one, g(X)) + t(g(X), one))
        b.antipode(X, -g(X))
    ekm = ek(-1)
    for i in (1, 2):
        b.coprod(f"e{i}", ek_2 * t(one, g(f"e{i}")) + t(g(f"e{i}"), one))
        b.antipode(f"e{i}", -(ekm * g(f"e{i}")))
    b.coprod("a+", ek_2 * t(one, g("a+")) + t(g("a+"), one)
             - t(g("a1") * ek1, g("e1")) - t(g("a2") * ek1, g("e2")))
    b.antipode("a+", -(ekm * g("a+")) - ekm * g("a1") * g("e1") - ekm * g("a2") * g("e2"))
    for X in FUNZG:
        b.counit(X, 0)
    return b


def _funzg_e_builder(order) -> PresentationBuilder:
    b = PresentationBuilder("funzg_E", FUNZG_E, order=order)
    g, one, z = b.g, b.one(), b.z()
    Ep, Em = g("E+"), g("E-")
    b.comm("E+", "a+", (z * (Ep * Ep - Ep)).scale(2))
    b.comm("E-", "a+", (z * (Em - one)).scale(2))
    for i in (1, 2):
        b.comm(f"a{i}", "a+", (z * Ep * g(f"a{i}")).scale(2))
        b.comm(f"a{i}", f"e{i}", (z * (Ep - one)).scale(-2))
    b.rule("E+", "E-", one)
    b.rule("E-", "E+", one)
    r2 = b.ring(2)

    def t(x, y):
        return tensor(x, y, ring=r2)

    for X in ("a1", "a2"):
        b.coprod(X, t(one, g(X)) + t(g(X), one))
        b.antipode(X, -g(X))
    b.coprod("E+", t(Ep, Ep))
    b.coprod("E-", t(Em, Em))
    b.antipode("E+", Em)
    b.antipode("E-", Ep)
    for i in (1, 2):
        b.coprod(f"e{i}", t(Ep, g(f"e{i}")) + t(g(f"e{i}"), one))
        b.antipode(f"e{i}", -(Em * g(f"e{i}")))
    b.coprod("a+", t(Ep, g("a+")) + t(g("a+"), one)
             - t(g("a1") * Ep, g("e1")) - t(g("a2") * Ep, g("e2")))
    b.antipode("a+", -(Em * g("a+")) - Em * g("a1") * g("e1") - Em * g("a2") * g("e2"))
    for X in FUNZG_E:
        b.counit(X, 1 if X in ("E+", "E-") else 0)
    return b


@functools.lru_cache(maxsize=None)
def build_presentation(ident: str, order: int = DEFAULT_ORDER, degree: int | None = None,
                       pbw: tuple | None = None) -> Presentation:
    """Built-in presentation by identifier (cached; presentations are not mutated).

    ``degree`` only matters for ``funzg`` and defaults to ``order``.  ``pbw``
    reorders the generators of ``uzp31``.
    """
    if ident == "uzp31":
        return _uzp31_builder(order, pbw).build()
    if ident == "uzg":
        return _restrict(build_presentation("uzp31", order), "uzg", UZG)
    if ident == "poincare_classical":
        return _classical(build_presentation("uzp31", order))
    if ident == "funzg":
        return _funzg_builder(order, order if degree is None else degree).build()
    if ident == "funzg_E":
        return _funzg_e_builder(order).build()
    raise UnknownPresentation(f"unknown presentation {ident!r}; expected one of {PRESENTATIONS}")


# ---------------------------------------------------------------------------
# dedicated checks


def classical_r(pres: Presentation | None = None) -> NCPolynomial:
    """``r = 2 (K3^P+ + E1^P1 + E2^P2)`` with ``a^b = a(x)b - b(x)a``."""
    pres = pres or build_presentation("poincare_classical", 0)
    r2 = pres.ring(2)
    out = r2.zero()
    for a, b in (("K3", "P+"), ("E1", "P1"), ("E2", "P2")):
        out = out + r2.gen(a, 0) * r2.gen(b, 1) - r2.gen(b, 0) * r2.gen(a, 1)
    return out.scale(2)


def casimir(order: int = DEFAULT_ORDER) -> NCPolynomial:
    """Deformed mass ``P-(1 - e^{-2zP+})/z - (P1^2 + P2^2) e^{-2zP+}``, normal-ordered."""
    pres = build_presentation("uzp31", order)
    b = PresentationBuilder("casimir", UZP31, order=order)
    g = b.g
    em2 = exp_gen(b.ring(), "P+", -2)
    m = g("P-") * divide(b.one() - em2, _zs(b)) - (g("P1") * g("P1") + g("P2") * g("P2")) * em2
    return normal_order(b._truncate(m), pres.ring(1))


def casimir_classical_limit(order: int = DEFAULT_ORDER):
    """(z^0 part of the Casimir, 2 P- P+ - P1^2 - P2^2), both in the classical algebra."""
    cl = build_presentation("poincare_classical", order)
    r = cl.ring(1)
    lim = normal_order(casimir(order).z_part(0), r)
    expect = (r.gen("P-") * r.gen("P+")).scale(2) - r.gen("P1") * r.gen("P1") - r.gen("P2") * r.gen("P2")
    return lim, expect


def check_subalgebra_closure(order: int = DEFAULT_ORDER) -> Report:
    pres = build_presentation("uzp31", order)
    alphabet = set(UZG)
    rep = Report("subalgebra", caps={"order": order})

    def used(p):
        return {name for name, _ in p.generators_used()}

    for a, b in itertools.combinations(UZG, 2):
        extra = used(pres.commutator_poly(a, b)) - alphabet
        rep.flag(f"closure[{a},{b}]", "brackets of the subalgebra stay inside it", not extra,
                 "" if not extra else f"outside: {sorted(extra)}")
    for a in UZG:
        extra = used(pres.table_poly(pres.coproduct[pres.gen_index(a)], 2)) - alphabet
        rep.flag(f"closure_coproduct({a})", "coproducts of the subalgebra stay inside it",
                 not extra, "" if not extra else f"outside: {sorted(extra)}")
    # negative control: the coproduct of F1 leaves the alphabet
    extra = used(pres.table_poly(pres.coproduct[pres.gen_index("F1")], 2)) - alphabet
    rep.flag("closure_negative_control(F1)", "the check detects generators outside", bool(extra),
             f"detected {sorted(extra)}")
    return rep


def casimir_centrality(order: int = DEFAULT_ORDER) -> Report:
    pres = build_presentation("uzp31", order)
    ring = pres.ring(1)
    m = casimir(order)
    rep = Report("casimir", caps={"order": order})
    for X in UZP31:
        rep.record(f"casimir_central({X})", "deformed mass commutes with every generator",
                   nc_commutator(m, ring.gen(X)))
    lim, expect = casimir_classical_limit(order)
    rep.record("casimir_classical_limit", "z -> 0 limit is 2 P- P+ - P1^2 - P2^2", lim - expect)
    return rep


def phi_map(order: int = DEFAULT_ORDER, target: Presentation | None = None) -> WordMap:
    """The map from the dual group coordinates (degree cap = ``order``) into U_z g."""
    src = build_presentation("funzg", order, order)
    tgt = target or build_presentation("uzg", order)
    r1 = tgt.ring(1)
    images = {a: r1.gen(X).scale(2 * c, 1) for a, (X, c) in PHI.items()}
    return WordMap(src, images, r1)


def phi_apply(p: NCPolynomial, wm: WordMap, target_ring) -> NCPolynomial:
    return map_slots(p, [wm] * p.rank, target_ring)


def phi_morphism_check(order: int = DEFAULT_ORDER) -> Report:
    """Algebra homomorphism and coalgebra anti-homomorphism residuals of the map."""
    src = build_presentation("funzg", order, order)
    tgt = build_presentation("uzg", order)
    wm = phi_map(order, tgt)
    r1, r2 = tgt.ring(1), tgt.ring(2)
    s1 = src.ring(1)

    def phi(p):
        return phi_apply(p, wm, r1 if p.rank == 1 else r2)

    rep = Report("phi", caps={"order": order, "degree": order})
    for a, b in itertools.combinations(FUNZG, 2):
        x, y = s1.gen(a), s1.gen(b)
        rep.record(f"phi_hom({a},{b})", "Phi preserves brackets",
                   phi(nc_commutator(x, y)) - nc_commutator(phi(x), phi(y)))
    for a in FUNZG:
        x = s1.gen(a)
        rep.record(f"phi_cohom({a})", "(Phi (x) Phi) D_F = flip D_U Phi",
                   phi(coproduct(x)) - flip(coproduct(phi(x))))
    return rep


def cybe_classical() -> Report:
    cl = build_presentation("poincare_classical", 0)
    r = classical_r(cl)
    r3 = cl.ring(3)

    def emb(i, j):
        out = {}
        for (key, k), c in r.terms.items():
            nk = [()] * 3
            nk[i], nk[j] = key
            out[(tuple(nk), k)] = c
        return NCPolynomial(r3, out)

    r12, r13, r23 = emb(0, 1), emb(0, 2), emb(1, 2)
    rep = Report("cybe", caps={"order": 0})
    rep.record("cybe", "[[r,r]] = 0 with classical brackets",
               nc_commutator(r12, r13) + nc_commutator(r12, r23) + nc_commutator(r13, r23))
    rep.record("r_antisymmetric", "flip(r) = -r", flip(r) + r)
    return rep
