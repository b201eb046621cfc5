"""Noncommutative polynomials over truncated z-series and PBW normal ordering.

A presentation fixes a total order on its generators (the PBW order) and a
table of quadratic rewrite rules ``g_a g_b -> rhs``.  For Lie-type
presentations every pair with ``a > b`` is rewritten as
``g_b g_a + [g_a, g_b]``; extra rules may override a pair (group-like
symbols use ``E+ E- -> 1``).

Elements live in a :class:`TensorRing`: a tensor product of one or more
presentations.  A term is keyed by ``(key, k)`` where ``key`` holds one
normal word per tensor slot and ``k`` is the power of ``z``.  Slots commute
with each other, so products are computed slot by slot.

Truncation is by a filtration that rewriting never lowers:

* ``z`` filtration: the power of ``z`` (cap ``N``).
* ``degree`` filtration: word length plus power of ``z`` (cap ``D``).  Used
  by coordinate algebras whose relations are series in the generators.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .report import Report
from .series import DEFAULT_ORDER, ZSeries

ONE = Fraction(1)
REWRITE_BUDGET = 10_000_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class AlgebraError(Exception):
    pass


class UnknownGenerator(AlgebraError, KeyError):
    pass


class UnmappedGenerator(AlgebraError, KeyError):
    pass


class NonTerminating(AlgebraError):
    """The rewrite budget ran out; the rule table is most likely inconsistent."""


class NonConvergent(AlgebraError):
    pass


class RankMismatch(AlgebraError, ValueError):
    pass


class PrecisionError(AlgebraError, ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    rank: int
    slot: int = 0


def _add_into(out: dict, key, c):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Presentation:
    """Generators in PBW order plus rewrite, coproduct, counit and antipode tables.

    Table formats (generator indices are PBW ranks):

    * ``commutators[(a, b)]`` with ``a > b``: ``{(word, k): c}`` for ``[g_a, g_b]``
    * ``relations[(a, b)]``: ``{(word, k): c}`` replacing the word ``g_a g_b``
    * ``coproduct[a]``: ``{((w1, w2), k): c}``
    * ``counit[a]``: ``{k: c}``
    * ``antipode[a]``: ``{(word, k): c}``, applied as an anti-homomorphism
    """

    def __init__(self, name, generators, *, order=DEFAULT_ORDER, degree=None,
                 filtration="z", commutators=None, relations=None, coproduct=None,
                 counit=None, antipode=None, free=False, budget=REWRITE_BUDGET):
        if filtration not in ("z", "degree"):
            raise ValueError(f"unknown filtration {filtration!r}")
        if filtration == "degree" and degree is None:
            raise ValueError("a degree-filtered presentation needs a degree cap")
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.order = order
        self.degree = degree
        self.filtration = filtration
        self.free = free
        self.commutators = {k: dict(v) for k, v in (commutators or {}).items()}
        self.relations = {k: dict(v) for k, v in (relations or {}).items()}
        self.coproduct = {k: dict(v) for k, v in (coproduct or {}).items()}
        self.counit = {k: dict(v) for k, v in (counit or {}).items()}
        self.antipode = {k: dict(v) for k, v in (antipode or {}).items()}
        self.budget = budget
        self.steps = 0
        self._cache = {}
        self._rings = {}
        self._rules = {}
        if not free:
            n = len(self.generators)
            for a in range(n):
                for b in range(a):
                    rhs = {((b, a), 0): ONE}
                    for t, c in self.commutators.get((a, b), {}).items():
                        _add_into(rhs, t, c)
                    self._rules[(a, b)] = rhs
            for ab, rhs in self.relations.items():
                self._rules[ab] = dict(rhs)
        for (a, b) in self.commutators:
            if a <= b:
                raise ValueError(f"commutator key {(a, b)} must have a > b")
        if filtration == "degree":
            for ab, rhs in self._rules.items():
                for (w, k) in rhs:
                    if len(w) + k < 2:
                        raise ValueError(
                            f"rule for {self.word_str(ab)} lowers the degree filtration")

    # -- naming -----------------------------------------------------------
    def __repr__(self):
        return f"Presentation({self.name!r}, order={self.order}, degree={self.degree})"

    def gen_index(self, name) -> int:
        if isinstance(name, int):
            if 0 <= name < len(self.generators):
                return name
            raise UnknownGenerator(name)
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGenerator(f"{name!r} is not a generator of {self.name}") from None

    def generator(self, name, slot=0) -> Generator:
        i = self.gen_index(name)
        return Generator(self.generators[i], i, slot)

    def word_str(self, word) -> str:
        return "*".join(self.generators[i] for i in word) if word else "1"

    # -- rewriting --------------------------------------------------------
    def is_reducible(self, a: int, b: int) -> bool:
        return (a, b) in self._rules

    def is_normal(self, word) -> bool:
        return all((word[i], word[i + 1]) not in self._rules for i in range(len(word) - 1))

    def reset_cache(self):
        self._cache.clear()
        self.steps = 0

    def mul_words(self, u, v, m, wmax=None):
        """Normal form of ``u*v`` for normal words ``u``, ``v``.

        Returns ``{(word, k): c}`` keeping powers ``k <= m`` and, under the
        degree filtration, ``len(word) + k <= wmax``.
        """
        if not u or not v or (u[-1], v[0]) not in self._rules:
            w = u + v
            if wmax is not None and len(w) > wmax:
                return {}
            return {(w, 0): ONE}
        key = (u, v, m, wmax)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > self.budget:
            raise NonTerminating(f"rewrite budget {self.budget} exceeded in {self.name}")
        if wmax is not None and len(u) + len(v) > wmax:
            self._cache[key] = {}
            return {}
        out = {}
        prefix, suffix = u[:-1], v[1:]
        rule = self._rules[(u[-1], v[0])]
        try:
            for (w, k), c in rule.items():
                if k > m:
                    continue
                # rule right-hand sides are folded in letter by letter, so
                # they need not be normal themselves
                cur = {(prefix, k): c}
                for g in w:
                    nxt = {}
                    for (cw, ck), cc in cur.items():
                        for (w2, k2), c2 in self.mul_words(
                                cw, (g,), m - ck, None if wmax is None else wmax - ck).items():
                            _add_into(nxt, (w2, ck + k2), cc * c2)
                    cur = nxt
                for (cw, ck), cc in cur.items():
                    for (w3, k3), c3 in self.mul_words(
                            cw, suffix, m - ck, None if wmax is None else wmax - ck).items():
                        _add_into(out, (w3, ck + k3), cc * c3)
        except RecursionError:
            raise NonTerminating(f"rewriting in {self.name} recursed too deeply") from None
        self._cache[key] = out
        return out

    def normalize_word(self, word, m, wmax=None):
        """Normal form of an arbitrary word."""
        cur = {((), 0): ONE}
        for g in word:
            nxt = {}
            for (w, k), c in cur.items():
                for (w2, k2), c2 in self.mul_words(
                        w, (g,), m - k, None if wmax is None else wmax - k).items():
                    _add_into(nxt, (w2, k + k2), c * c2)
            cur = nxt
        return cur

    # -- rings ------------------------------------------------------------
    def ring(self, rank: int = 1) -> "TensorRing":
        r = self._rings.get(rank)
        if r is None:
            r = TensorRing((self,) * rank, self.order, self.degree)
            self._rings[rank] = r
        return r

    def gen(self, name, slot=0, rank=1):
        return self.ring(rank).gen(name, slot)

    def table_poly(self, table_entry, rank=1):
        """Wrap a raw table entry as an element of ``ring(rank)``."""
        ring = self.ring(rank)
        if rank == 1:
            return ring.from_terms({((w,), k): c for (w, k), c in table_entry.items()})
        return ring.from_terms(table_entry)

    def commutator_poly(self, a, b):
        a, b = self.gen_index(a), self.gen_index(b)
        if a > b:
            return self.table_poly(self.commutators.get((a, b), {}))
        if a < b:
            return -self.table_poly(self.commutators.get((b, a), {}))
        return self.ring(1).zero()

    def has_hopf_tables(self) -> bool:
        n = len(self.generators)
        return all(i in self.coproduct and i in self.counit and i in self.antipode
                   for i in range(n))

    def same_tables(self, other: "Presentation") -> bool:
        return (self.generators == other.generators
                and self.filtration == other.filtration
                and _clean(self.commutators) == _clean(other.commutators)
                and _clean(self.relations) == _clean(other.relations)
                and _clean(self.coproduct) == _clean(other.coproduct)
                and _clean(self.counit) == _clean(other.counit)
                and _clean(self.antipode) == _clean(other.antipode))


def _clean(table):
    return {k: {t: c for t, c in v.items() if c} for k, v in table.items() if any(v.values())}


class TensorRing:
    """Tensor product of presentations (slot ``s`` uses ``slots[s]``)."""

    def __init__(self, slots, order=DEFAULT_ORDER, degree=None):
        self.slots = tuple(slots)
        self.rank = len(self.slots)
        for p in self.slots:
            if p.order < order:
                raise PrecisionError(f"{p.name} tables only hold order {p.order} < {order}")
        self.order = order
        self.deg_slots = tuple(i for i, p in enumerate(self.slots) if p.filtration == "degree")
        if self.deg_slots:
            caps = [self.slots[i].degree for i in self.deg_slots]
            self.degree = min(caps) if degree is None else min([degree] + caps)
        else:
            self.degree = None
        self._cache = {}

    def __repr__(self):
        names = " (x) ".join(p.name for p in self.slots)
        return f"TensorRing[{names}](order={self.order}, degree={self.degree})"

    def with_slots(self, slots):
        return TensorRing(slots, self.order, self.degree)

    # -- element constructors ---------------------------------------------
    def from_terms(self, terms) -> "NCPolynomial":
        out = {}
        for (key, k), c in terms.items():
            if c and self.keep(key, k):
                _add_into(out, (key, k), Fraction(c))
        return NCPolynomial(self, out)

    def zero(self):
        return NCPolynomial(self, {})

    def one(self):
        return NCPolynomial(self, {(((),) * self.rank, 0): ONE})

    def scalar(self, c):
        if isinstance(c, ZSeries):
            if c.order < self.order:
                raise PrecisionError("scalar series has lower order than the ring")
            key = ((),) * self.rank
            return self.from_terms({(key, k): v for k, v in c.items()})
        return self.from_terms({(((),) * self.rank, 0): Fraction(c)})

    def zpow(self, k=1, c=1):
        return self.from_terms({(((),) * self.rank, k): Fraction(c)})

    def gen(self, name, slot=0):
        if not 0 <= slot < self.rank:
            raise RankMismatch(f"slot {slot} out of range for rank {self.rank}")
        i = self.slots[slot].gen_index(name)
        key = tuple((i,) if s == slot else () for s in range(self.rank))
        return self.from_terms({(key, 0): ONE})

    def word(self, names, slot=0):
        """Product of named generators in one slot, normal-ordered."""
        out = self.one()
        for n in names:
            out = out * self.gen(n, slot)
        return out

    def monomial(self, words, k=0, c=1, normalize=True):
        """Element with one (possibly non-normal) word per slot."""
        key = tuple(tuple(self.slots[s].gen_index(g) for g in w) for s, w in enumerate(words))
        p = NCPolynomial(self, {(key, k): Fraction(c)} if self.keep(key, k) else {})
        return normal_order(p) if normalize else p

    # -- truncation -------------------------------------------------------
    def weight(self, key, k):
        return k + sum(len(key[i]) for i in self.deg_slots)

    def keep(self, key, k) -> bool:
        if k > self.order:
            return False
        if self.degree is not None and self.weight(key, k) > self.degree:
            return False
        return True

    # -- products ---------------------------------------------------------
    def mul_keys(self, a, b, m, w0=0):
        """Normal form of key ``a`` times key ``b``.

        ``m`` is the remaining z budget; ``w0`` the z power already carried
        by the coefficients (it counts against the degree cap).
        """
        if self.degree is None:
            w0 = 0
        ck = (a, b, m, w0)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        parts = []
        trivial = True
        dslots = self.deg_slots
        if dslots:
            base = sum(len(a[i]) + len(b[i]) for i in dslots)
        for s in range(self.rank):
            u, v = a[s], b[s]
            p = self.slots[s]
            if not u or not v or (u[-1], v[0]) not in p._rules:
                parts.append(((u + v, 0, ONE),))
                continue
            trivial = False
            wmax = None
            if s in dslots:
                wmax = self.degree - w0 - base + len(u) + len(v)
            res = p.mul_words(u, v, m, wmax)
            parts.append(tuple((w, k, c) for (w, k), c in res.items()))
        if trivial:
            key = tuple(pt[0][0] for pt in parts)
            out = {(key, 0): ONE} if self.keep(key, w0) else {}
        else:
            out = {}
            for combo in itertools.product(*parts):
                k = 0
                c = ONE
                for (_, kk, cc) in combo:
                    k += kk
                    c *= cc
                if k > m:
                    continue
                key = tuple(w for (w, _, _) in combo)
                if self.degree is not None and self.weight(key, k + w0) > self.degree:
                    continue
                _add_into(out, (key, k), c)
        self._cache[ck] = out
        return out

    def mul(self, p: "NCPolynomial", q: "NCPolynomial") -> "NCPolynomial":
        N = self.order
        out = {}
        qterms = sorted(q.terms.items(), key=lambda t: t[0][1])
        for (ka, ea), ca in p.terms.items():
            m = N - ea
            for (kb, eb), cb in qterms:
                if eb > m:
                    break
                cab = ca * cb
                for (key, k), c in self.mul_keys(ka, kb, m - eb, ea + eb).items():
                    _add_into(out, (key, k + ea + eb), cab * c)
        return NCPolynomial(self, out)

    def clear_cache(self):
        self._cache.clear()


class NCPolynomial:
    """Finite sum of z-power times a key of normal words, one word per slot."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TensorRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- inspection -------------------------------------------------------
    @property
    def rank(self):
        return self.ring.rank

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def keys(self):
        """Distinct words (keys), sorted."""
        return sorted({key for (key, _) in self.terms})

    def coefficient(self, key) -> ZSeries:
        if self.rank == 1 and (not key or not isinstance(key[0], tuple)):
            key = (tuple(key),)
        d = {k: c for (kk, k), c in self.terms.items() if kk == key}
        return ZSeries.from_dict(d, self.ring.order)

    def coefficients(self) -> dict:
        out = {}
        for (key, k), c in self.terms.items():
            out.setdefault(key, {})[k] = c
        return {key: ZSeries.from_dict(d, self.ring.order) for key, d in out.items()}

    def z_part(self, k: int) -> "NCPolynomial":
        """The z^k coefficient, returned as a z-free element."""
        return NCPolynomial(self.ring, {(key, 0): c for (key, kk), c in self.terms.items() if kk == k})

    def truncate(self, order: int) -> "NCPolynomial":
        return NCPolynomial(self.ring, {t: c for t, c in self.terms.items() if t[1] <= order})

    def max_z(self) -> int:
        return max((k for (_, k) in self.terms), default=-1)

    def summary(self):
        deg = max((sum(len(w) for w in key) for (key, _) in self.terms), default=-1)
        return len(self.terms), deg

    def generators_used(self) -> set:
        out = set()
        for (key, _) in self.terms:
            for s, w in enumerate(key):
                p = self.ring.slots[s]
                out.update((p.generators[i], s) for i in w)
        return out

    def is_normal(self) -> bool:
        return all(self.ring.slots[s].is_normal(w)
                   for (key, _) in self.terms for s, w in enumerate(key))

    def is_scalar(self) -> bool:
        return all(all(not w for w in key) for (key, _) in self.terms)

    def scalar_value(self) -> ZSeries:
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        return self.coefficient(((),) * self.rank)

    # -- arithmetic -------------------------------------------------------
    def _same_ring(self, other):
        if other.ring is not self.ring and other.ring.slots != self.ring.slots:
            raise RankMismatch("elements live in different rings")

    def _lift(self, other):
        if isinstance(other, NCPolynomial):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction, ZSeries)):
            return self.ring.scalar(other)
        raise TypeError(f"cannot combine NCPolynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for t, c in other.terms.items():
            _add_into(out, t, c)
        return NCPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial(self.ring, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for t, c in other.terms.items():
            _add_into(out, t, -c)
        return NCPolynomial(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c, k: int = 0):
        """Multiply by the scalar ``c * z**k``."""
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return self.ring.from_terms({(key, kk + k): v * c for (key, kk), v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, ZSeries):
            if other.order < self.ring.order:
                raise PrecisionError("scalar series has lower order than the ring")
            out = {}
            for k, c in other.items():
                for (key, kk), v in self.terms.items():
                    if self.ring.keep(key, kk + k):
                        _add_into(out, (key, kk + k), v * c)
            return NCPolynomial(self.ring, out)
        if isinstance(other, NCPolynomial):
            self._same_ring(other)
            return self.ring.mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ZSeries)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ZSeries)):
            other = self.ring.scalar(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        if other.ring.slots != self.ring.slots:
            return False
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"NCPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coef in sorted(self.coefficients().items()):
            ws = " @ ".join(self.ring.slots[s].word_str(w) for s, w in enumerate(key))
            cs = str(coef)
            if all(not w for w in key):
                parts.append(f"({cs})" if (" " in cs) else cs)
            elif cs == "1":
                parts.append(ws)
            elif cs == "-1":
                parts.append("-" + ws)
            else:
                parts.append(f"({cs})*{ws}" if " " in cs or "*" in cs else f"{cs}*{ws}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


# ---------------------------------------------------------------------------
# operations


def normal_order(p: NCPolynomial, ring: TensorRing | None = None) -> NCPolynomial:
    """Rewrite every word of ``p`` into PBW normal form.

    ``ring`` defaults to the ring of ``p``; passing another ring with the same
    generator alphabets reinterprets the words there (used to move elements
    out of a free ring).
    """
    target = p.ring if ring is None else ring
    if target.rank != p.ring.rank:
        raise RankMismatch("normal_order target has a different rank")
    if ring is not None:
        for s in range(target.rank):
            src, dst = p.ring.slots[s], target.slots[s]
            if src.generators != dst.generators:
                for (key, _) in p.terms:
                    for i in key[s]:
                        if src.generators[i] not in dst.index:
                            raise UnknownGenerator(src.generators[i])
    N = target.order
    out = {}
    for (key, k), c in p.terms.items():
        if k > N:
            continue
        cur = {(((),) * target.rank, k): c}
        for s, w in enumerate(key):
            src = p.ring.slots[s]
            dst = target.slots[s]
            if src is not dst:
                w = tuple(dst.gen_index(src.generators[i]) for i in w)
            nxt = {}
            for (ckey, ck), cc in cur.items():
                m = N - ck
                wmax = None
                if s in target.deg_slots:
                    wmax = target.degree - target.weight(ckey, ck)
                for (w2, k2), c2 in dst.normalize_word(w, m, wmax).items():
                    nk = ckey[:s] + (w2,) + ckey[s + 1:]
                    if target.keep(nk, ck + k2):
                        _add_into(nxt, (nk, ck + k2), cc * c2)
            cur = nxt
        for t, cc in cur.items():
            _add_into(out, t, cc)
    return NCPolynomial(target, out)


def nc_multiply(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return p * q


def nc_commutator(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return p * q - q * p


def tensor(*elements, ring: TensorRing) -> NCPolynomial:
    """Tensor product of elements; their ranks must add up to ``ring.rank``."""
    if sum(e.rank for e in elements) != ring.rank:
        raise RankMismatch("ranks of the factors do not add up")
    cur = {((), 0): ONE}
    N = ring.order
    for e in elements:
        nxt = {}
        for (key, k), c in cur.items():
            for (key2, k2), c2 in e.terms.items():
                if k + k2 <= N:
                    _add_into(nxt, (key + key2, k + k2), c * c2)
        cur = nxt
    return ring.from_terms(cur)


class WordMap:
    """Multiplicative extension of a generator map, memoized per word.

    ``images[i]`` is the image of generator ``i`` of ``source`` in ``target``.
    With ``mode="antihom"`` word order is reversed.
    """

    def __init__(self, source: Presentation, images: dict, target: TensorRing, mode="hom"):
        if mode not in ("hom", "antihom"):
            raise ValueError(f"unknown map mode {mode!r}")
        self.source = source
        self.target = target
        self.mode = mode
        self.images = {}
        for g, img in images.items():
            i = source.gen_index(g)
            if img.ring.slots != target.slots:
                img = _rehome(img, target)
            self.images[i] = img
        self._memo = {(): target.one()}

    def __call__(self, word) -> NCPolynomial:
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        last = word[-1]
        try:
            img = self.images[last]
        except KeyError:
            raise UnmappedGenerator(
                f"no image for {self.source.generators[last]!r}") from None
        head = self(word[:-1])
        out = head * img if self.mode == "hom" else img * head
        self._memo[word] = out
        return out


def _rehome(p: NCPolynomial, ring: TensorRing) -> NCPolynomial:
    if p.ring.rank != ring.rank:
        raise RankMismatch("image has the wrong rank")
    return normal_order(p, ring)


def map_slots(t: NCPolynomial, maps, target: TensorRing) -> NCPolynomial:
    """Apply one word map per slot and tensor the images together.

    ``maps[s]`` is a callable from a normal word of slot ``s`` to an element
    of some ring; ``None`` means the identity on that slot.
    """
    N = target.order
    out = {}
    for (key, k), c in t.terms.items():
        cur = {((), k): c}
        for s, w in enumerate(key):
            f = maps[s]
            if f is None:
                img_terms = {((w,), 0): ONE}
            else:
                img_terms = f(w).terms
            nxt = {}
            for (ck, kk), cc in cur.items():
                for (k2, e2), c2 in img_terms.items():
                    if kk + e2 <= N:
                        _add_into(nxt, (ck + k2, kk + e2), cc * c2)
            cur = nxt
        for (key2, k2), c2 in cur.items():
            if target.keep(key2, k2):
                _add_into(out, (key2, k2), c2)
    # images are normal and slots commute, so the tensored keys are normal
    return NCPolynomial(target, out)


def apply_generator_map(mapping: dict, p: NCPolynomial, target: TensorRing | None = None,
                        mode: str = "hom") -> NCPolynomial:
    """Extend ``mapping`` (generator name -> element) to ``p``.

    ``mode="hom"`` multiplies images in word order, ``"antihom"`` in reverse.
    ``p`` must be a single-slot element.
    """
    if p.rank != 1:
        raise RankMismatch("apply_generator_map acts on single-slot elements")
    if target is None:
        target = next(iter(mapping.values())).ring
    wm = WordMap(p.ring.slots[0], mapping, target, mode)
    out = target.zero()
    for (key, k), c in p.terms.items():
        out = out + wm(key[0]).scale(c, k)
    return out


def nc_exp(p: NCPolynomial, budget: int = 256) -> NCPolynomial:
    """``sum p**n / n!``; stops when a power vanishes under truncation or nilpotency."""
    result = p.ring.one()
    term = p.ring.one()
    for n in range(1, budget + 1):
        term = (term * p).scale(Fraction(1, n))
        if term.is_zero():
            return result
        result = result + term
    raise NonConvergent(f"exp did not terminate within {budget} terms")


def power_series_in(ring: TensorRing, gen, coeff, slot=0, start=0):
    """``sum_n coeff(n) * g**n`` where ``coeff(n)`` returns ``(c, k)`` for ``c z^k``.

    The z power must not decrease with ``n``; the sum stops at the first
    term the truncation removes.
    """
    i = ring.slots[slot].gen_index(gen)
    out = {}
    for n in itertools.count(start):
        c, k = coeff(n)
        key = tuple((i,) * n if s == slot else () for s in range(ring.rank))
        if not ring.keep(key, k):
            break
        if c:
            _add_into(out, (key, k), Fraction(c))
        if n > 10_000:
            raise NonConvergent("power series did not truncate")
    return NCPolynomial(ring, out)


def exp_gen(ring: TensorRing, gen, scale=1, zpow=1, slot=0):
    """``exp(scale * z**zpow * g)`` for a single generator ``g`` (commutative series)."""
    scale = Fraction(scale)
    return power_series_in(ring, gen, lambda n: (scale ** n / factorial(n), zpow * n), slot)


def check_jacobi(pres: Presentation, triples=None) -> Report:
    """Jacobi identity for every triple of distinct generators."""
    ring = pres.ring(1)
    gens = [ring.gen(i) for i in range(len(pres.generators))]
    names = pres.generators
    rep = Report(f"jacobi[{pres.name}]", caps={"order": ring.order, "degree": ring.degree})
    if triples is None:
        triples = itertools.combinations(range(len(names)), 3)
    for a, b, c in triples:
        a, b, c = pres.gen_index(a), pres.gen_index(b), pres.gen_index(c)
        x, y, w = gens[a], gens[b], gens[c]
        res = (nc_commutator(x, nc_commutator(y, w)) + nc_commutator(y, nc_commutator(w, x))
               + nc_commutator(w, nc_commutator(x, y)))
        rep.record(f"jacobi({names[a]},{names[b]},{names[c]})", "Jacobi identity of the bracket table", res)
    return rep
