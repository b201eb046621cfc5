"""Assemble a :class:`Presentation` from right-hand sides written as free expressions.

Right-hand sides are evaluated in a *free* ring (no rewriting) at a slightly
raised precision, so that expressions such as ``(exp(2 z P+) - 1) / (2 z)``
keep full order after the division.  :meth:`PresentationBuilder.build` then
truncates them and brings every table entry to PBW normal form.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (NCPolynomial, Presentation, PrecisionError, UnknownGenerator,
                      normal_order)
from .series import DEFAULT_ORDER, ZSeries

MARGIN = 2


class DuplicateRule(ValueError):
    pass


def _raw1(p: NCPolynomial) -> dict:
    return {(key[0], k): c for (key, k), c in p.terms.items()}


class PresentationBuilder:
    def __init__(self, name, generators, order=DEFAULT_ORDER, degree=None,
                 filtration="z", margin=MARGIN):
        self.name = name
        self.generators = tuple(generators)
        self.order = order
        self.degree = degree
        self.filtration = filtration
        self.margin = margin
        self.free = Presentation(
            name + "~free", self.generators, order=order + margin,
            degree=None if degree is None else degree + margin,
            filtration=filtration, free=True)
        self.comms = {}
        self.rules = {}
        self.coprods = {}
        self.counits = {}
        self.antipodes = {}

    # -- free-ring helpers -------------------------------------------------
    def ring(self, rank=1):
        return self.free.ring(rank)

    def g(self, name, slot=0, rank=1):
        return self.free.ring(rank).gen(name, slot)

    def one(self, rank=1):
        return self.free.ring(rank).one()

    def z(self, k=1, rank=1):
        return self.free.ring(rank).zpow(k)

    def _index(self, name):
        try:
            return self.free.gen_index(name)
        except UnknownGenerator:
            raise UnknownGenerator(f"undeclared generator {name!r} in {self.name}") from None

    # -- table entries -----------------------------------------------------
    def comm(self, a, b, rhs: NCPolynomial):
        """Record ``[a, b] = rhs``."""
        ia, ib = self._index(a), self._index(b)
        if ia == ib:
            raise ValueError(f"[{a},{b}] is identically zero")
        if ia < ib:
            ia, ib, rhs = ib, ia, -rhs
        if (ia, ib) in self.comms or (ia, ib) in self.rules:
            raise DuplicateRule(f"second rule for the pair ({a}, {b})")
        self.comms[(ia, ib)] = rhs

    def rule(self, a, b, rhs: NCPolynomial):
        """Record the rewrite ``a b -> rhs``."""
        ia, ib = self._index(a), self._index(b)
        if (ia, ib) in self.rules or (ia, ib) in self.comms:
            raise DuplicateRule(f"second rule for the word {a} {b}")
        self.rules[(ia, ib)] = rhs

    def coprod(self, a, rhs: NCPolynomial):
        ia = self._index(a)
        if ia in self.coprods:
            raise DuplicateRule(f"second coproduct for {a}")
        if rhs.rank != 2:
            raise ValueError("a coproduct must be a two-slot element")
        self.coprods[ia] = rhs

    def counit(self, a, value):
        ia = self._index(a)
        if ia in self.counits:
            raise DuplicateRule(f"second counit for {a}")
        if isinstance(value, NCPolynomial):
            value = value.scalar_value()
        if not isinstance(value, ZSeries):
            value = ZSeries.const(value, self.order)
        self.counits[ia] = value

    def antipode(self, a, rhs: NCPolynomial):
        ia = self._index(a)
        if ia in self.antipodes:
            raise DuplicateRule(f"second antipode for {a}")
        self.antipodes[ia] = rhs

    # -- assembly ------------------------------------------------------------
    def _truncate(self, p: NCPolynomial) -> NCPolynomial:
        N, D = self.order, self.degree
        terms = {}
        for (key, k), c in p.terms.items():
            if k > N:
                continue
            if self.filtration == "degree" and sum(len(w) for w in key) + k > D:
                continue
            terms[(key, k)] = c
        return NCPolynomial(p.ring, terms)

    def build(self) -> Presentation:
        N, D = self.order, self.degree
        comms = {ab: _raw1(self._truncate(p)) for ab, p in self.comms.items()}
        rules = {ab: _raw1(self._truncate(p)) for ab, p in self.rules.items()}
        kwargs = dict(order=N, degree=D, filtration=self.filtration)
        raw = Presentation(self.name, self.generators, commutators=comms, relations=rules, **kwargs)
        ring1 = raw.ring(1)

        def norm1(p):
            return _raw1(normal_order(self._truncate(p), ring1))

        comms = {ab: norm1(p) for ab, p in self.comms.items()}
        rules = {ab: norm1(p) for ab, p in self.rules.items()}
        pres = Presentation(self.name, self.generators, commutators=comms, relations=rules, **kwargs)
        ring1, ring2 = pres.ring(1), pres.ring(2)
        pres.coproduct = {a: dict(normal_order(self._truncate(p), ring2).terms)
                          for a, p in self.coprods.items()}
        pres.antipode = {a: _raw1(normal_order(self._truncate(p), ring1))
                         for a, p in self.antipodes.items()}
        for a, s in self.counits.items():
            if s.order < N:
                raise PrecisionError(f"counit of {self.generators[a]} known only to order {s.order}")
            pres.counit[a] = {k: c for k, c in s.truncate(N).items()}
        return pres


def divide(p: NCPolynomial, s, loss_ok=None) -> NCPolynomial:
    """Divide ``p`` by a scalar series ``s`` (possibly with zero constant term).

    The z-valuation of ``s`` is split off first; the quotient is then known to
    ``v`` fewer orders than ``p``, which is why builders evaluate with a margin.
    """
    if isinstance(s, NCPolynomial):
        s = s.scalar_value()
    if not isinstance(s, ZSeries):
        return p.scale(Fraction(1) / Fraction(s))
    v = s.valuation()
    if v is None:
        raise ZeroDivisionError("division by the zero series")
    if loss_ok is not None and v > loss_ok:
        raise PrecisionError(f"division by z^{v} loses more than {loss_ok} orders")
    if any(k < v for (_, k) in p.terms):
        raise PrecisionError(f"numerator is not divisible by z^{v}")
    unit = s.shift_down(v).inverse() if v else s.inverse()
    shifted = NCPolynomial(p.ring, {(key, k - v): c for (key, k), c in p.terms.items()})
    out = {}
    for j, cj in unit.items():
        for (key, k), c in shifted.terms.items():
            if k + j <= p.ring.order - v:
                t = (key, k + j)
                out[t] = out.get(t, 0) + c * cj
    return NCPolynomial(p.ring, {t: c for t, c in out.items() if c}).truncate(p.ring.order - v)
