"""Coproduct, counit and antipode on tensor powers, and the Hopf axiom suite."""

from __future__ import annotations

import itertools
import random

from .algebra import (NCPolynomial, Presentation, RankMismatch, TensorRing, WordMap,
                      _add_into, map_slots, nc_commutator)
from .report import Report
from .series import ZSeries

AXIOMS = ("coassociativity", "counit", "antipode", "coproduct_hom")


class HopfOps:
    """Memoized structure maps of one presentation."""

    def __init__(self, pres: Presentation):
        missing = [g for i, g in enumerate(pres.generators) if i not in pres.coproduct]
        if missing:
            raise KeyError(f"{pres.name} has no coproduct for {missing}")
        self.pres = pres
        self.r0 = TensorRing((), pres.order)
        self.r1 = pres.ring(1)
        self.r2 = pres.ring(2)
        self.r3 = pres.ring(3)
        self.delta = WordMap(pres, {i: pres.table_poly(t, 2) for i, t in pres.coproduct.items()},
                             self.r2)
        self.eps = WordMap(pres, {i: self.r0.scalar(ZSeries.from_dict(t, pres.order))
                                  for i, t in pres.counit.items()}, self.r0)
        self.gamma = WordMap(pres, {i: pres.table_poly(t) for i, t in pres.antipode.items()},
                             self.r1, mode="antihom")


def hopf_ops(pres: Presentation) -> HopfOps:
    ops = getattr(pres, "_hopf_ops", None)
    if ops is None:
        ops = HopfOps(pres)
        pres._hopf_ops = ops
    return ops


def _single(p: NCPolynomial) -> Presentation:
    if p.rank != 1:
        raise RankMismatch("expected a single-slot element")
    return p.ring.slots[0]


def coproduct(p: NCPolynomial) -> NCPolynomial:
    """Extend the generator coproducts multiplicatively to ``p``."""
    ops = hopf_ops(_single(p))
    return map_slots(p, [ops.delta], ops.r2)


def counit(p: NCPolynomial) -> ZSeries:
    ops = hopf_ops(_single(p))
    return map_slots(p, [ops.eps], ops.r0).scalar_value()


def antipode(p: NCPolynomial) -> NCPolynomial:
    ops = hopf_ops(_single(p))
    return map_slots(p, [ops.gamma], ops.r1)


def tensor_multiply(s: NCPolynomial, t: NCPolynomial) -> NCPolynomial:
    if s.rank != t.rank:
        raise RankMismatch(f"rank {s.rank} times rank {t.rank}")
    return s * t


def flip(t: NCPolynomial, i: int = 0, j: int = 1) -> NCPolynomial:
    """Exchange tensor slots ``i`` and ``j`` (0-based)."""
    r = t.rank
    if not (0 <= i < r and 0 <= j < r):
        raise RankMismatch(f"slots ({i}, {j}) out of range for rank {r}")
    if i == j:
        return t
    slots = list(t.ring.slots)
    slots[i], slots[j] = slots[j], slots[i]
    ring = t.ring
    if tuple(slots) != ring.slots:
        ring = ring.with_slots(slots)
    out = {}
    for (key, k), c in t.terms.items():
        key = list(key)
        key[i], key[j] = key[j], key[i]
        out[(tuple(key), k)] = c
    return NCPolynomial(ring, out)


def embed(t: NCPolynomial, positions, ring: TensorRing) -> NCPolynomial:
    """Place the slots of ``t`` at ``positions`` of a larger ring, 1 elsewhere."""
    if len(positions) != t.rank:
        raise RankMismatch("one position per slot is required")
    out = {}
    for (key, k), c in t.terms.items():
        nk = [()] * ring.rank
        for s, pos in enumerate(positions):
            nk[pos] = key[s]
        out[(tuple(nk), k)] = c
    return NCPolynomial(ring, out)


def multiply_slots(t: NCPolynomial, ring: TensorRing | None = None) -> NCPolynomial:
    """The multiplication map ``a (x) b -> a b`` on a two-slot element."""
    if t.rank != 2:
        raise RankMismatch("multiplication acts on two-slot elements")
    ring = ring or t.ring.slots[0].ring(1)
    N = ring.order
    out = {}
    for (key, k), c in t.terms.items():
        for (nk, k2), c2 in ring.mul_keys((key[0],), (key[1],), N - k, k).items():
            _add_into(out, (nk, k + k2), c * c2)
    return NCPolynomial(ring, out)


def sample_monomials(pres: Presentation, count: int, seed: int = 0):
    """Seeded sample of degree-2 normal monomials ``g_a g_b`` with ``a <= b``."""
    n = len(pres.generators)
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    rng = random.Random(seed)
    rng.shuffle(pairs)
    return sorted(pairs[:count])


def check_hopf_axioms(pres: Presentation, axiom: str, sample: int = 0, seed: int = 0,
                      reducer=None, pairs=None) -> Report:
    """Check one Hopf axiom on the generators (plus ``sample`` degree-2 monomials).

    ``reducer`` is applied to each residual before the zero test; the
    quantum group coordinates use it for the pseudo-orthogonality ideal.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}")
    ops = hopf_ops(pres)
    r1, r2, r3 = ops.r1, ops.r2, ops.r3
    names = pres.generators
    rep = Report(f"{axiom}[{pres.name}]", caps={"order": pres.order, "degree": pres.degree})
    red = reducer or (lambda x: x)

    elements = [((i,), r1.gen(i)) for i in range(len(names))]
    for a, b in sample_monomials(pres, sample, seed):
        elements.append(((a, b), r1.gen(a) * r1.gen(b)))

    def label(word):
        return "*".join(names[i] for i in word)

    if axiom == "coproduct_hom":
        todo = pairs if pairs is not None else itertools.combinations(range(len(names)), 2)
        for a, b in todo:
            a, b = pres.gen_index(a), pres.gen_index(b)
            x, y = r1.gen(a), r1.gen(b)
            lhs = coproduct(nc_commutator(x, y))
            rhs = nc_commutator(coproduct(x), coproduct(y))
            rep.record(f"coproduct_hom({names[a]},{names[b]})",
                       "coproduct preserves brackets", red(lhs - rhs))
        return rep

    for word, x in elements:
        dx = coproduct(x)
        if axiom == "coassociativity":
            lhs = map_slots(dx, [ops.delta, None], r3)
            rhs = map_slots(dx, [None, ops.delta], r3)
            rep.record(f"coassociativity({label(word)})", "(D (x) id) D = (id (x) D) D",
                       red(lhs - rhs))
        elif axiom == "counit":
            left = map_slots(dx, [ops.eps, None], r1)
            right = map_slots(dx, [None, ops.eps], r1)
            rep.record(f"counit_left({label(word)})", "(e (x) id) D = id", red(left - x))
            rep.record(f"counit_right({label(word)})", "(id (x) e) D = id", red(right - x))
        else:
            unit = r1.one() * counit(x)
            left = multiply_slots(map_slots(dx, [ops.gamma, None], r2), r1)
            right = multiply_slots(map_slots(dx, [None, ops.gamma], r2), r1)
            rep.record(f"antipode_left({label(word)})", "m (S (x) id) D = e", red(left - unit))
            rep.record(f"antipode_right({label(word)})", "m (id (x) S) D = e", red(right - unit))
    return rep


def check_all_axioms(pres: Presentation, sample: int = 0, seed: int = 0, reducer=None,
                     axioms=AXIOMS) -> Report:
    rep = Report(f"hopf[{pres.name}]", caps={"order": pres.order, "degree": pres.degree})
    for ax in axioms:
        rep.extend(check_hopf_axioms(pres, ax, sample=sample, seed=seed, reducer=reducer))
    return rep


