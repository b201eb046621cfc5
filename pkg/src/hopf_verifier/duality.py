"""Coproduct structure tensor on PBW monomials, the dual basis, and the universal T-matrix.

A multi-index ``(a, b, c, d, e, f)`` addresses the monomial
``E2^a E1^b P+^c K3^d P1^e P2^f`` of U_z g, which is exactly a normal word in
the PBW order used here.  The dual monomial with the same index is
``e2^a/a! e1^b/b! a+^c/c! k3^d/d! a1^e/e! a2^f/f!``, again a normal word of
the coordinate algebra.  ``F[a][(i, j)]`` is the coefficient of
``X^i (x) X^j`` in the coproduct of ``X^a``; it is also the multiplication
table of the dual basis.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .algebra import NCPolynomial, Presentation, TensorRing, _add_into, nc_exp
from .hopf import hopf_ops
from .nullplane import FUNZG, UZG, build_presentation
from .report import Report
from .series import DEFAULT_ORDER, ZSeries

ZERO6 = (0,) * 6
# the six degree-1 indices, named by the dual generator they address
UNIT = {name: tuple(int(k == s) for k in range(6)) for s, name in enumerate(FUNZG)}


class DegreeCapExceeded(ValueError):
    pass


class MultiIndex(tuple):
    """Six exponents ``(a, b, c, d, e, f)``."""

    def __new__(cls, *args):
        vals = tuple(args[0]) if len(args) == 1 else tuple(args)
        if len(vals) != 6 or any(int(v) != v or v < 0 for v in vals):
            raise ValueError(f"a multi-index needs six non-negative integers, got {vals}")
        return super().__new__(cls, (int(v) for v in vals))

    @property
    def degree(self) -> int:
        return sum(self)

    def word(self):
        return tuple(itertools.chain.from_iterable([i] * n for i, n in enumerate(self)))

    @classmethod
    def from_word(cls, word):
        counts = [0] * 6
        for i in word:
            counts[i] += 1
        return cls(counts)

    def factorial(self) -> int:
        out = 1
        for n in self:
            out *= factorial(n)
        return out

    def __str__(self):
        return "".join(map(str, self))


def indices(D: int):
    """All multi-indices of total degree <= D, by degree then lexicographically."""
    out = []
    for deg in range(D + 1):
        for combo in itertools.combinations_with_replacement(range(6), deg):
            out.append(MultiIndex.from_word(combo))
    return sorted(set(out), key=lambda m: (m.degree, tuple(-x for x in m)))


def _uzg(N):
    return build_presentation("uzg", N)


def monomial_coproduct(ix, D: int = DEFAULT_ORDER, N: int = DEFAULT_ORDER) -> NCPolynomial:
    """Coproduct of ``X^ix`` in U_z g (x) U_z g, to order z^N."""
    ix = MultiIndex(ix)
    if ix.degree > D:
        raise DegreeCapExceeded(f"monomial {ix} has degree {ix.degree} > {D}")
    return hopf_ops(_uzg(N)).delta(ix.word())


def _as_components(delta: NCPolynomial, N: int) -> dict:
    out = {}
    for ((w1, w2), k), c in delta.terms.items():
        key = (MultiIndex.from_word(w1), MultiIndex.from_word(w2))
        out.setdefault(key, {})[k] = c
    return {key: ZSeries.from_dict(d, N) for key, d in out.items()}


class StructureTensor:
    """Lazily computed ``F``; ``F[a]`` maps ``(left, right)`` to a z-series."""

    def __init__(self, N: int = DEFAULT_ORDER):
        self.N = N
        self._rows = {}

    def __getitem__(self, a) -> dict:
        a = MultiIndex(a)
        row = self._rows.get(a)
        if row is None:
            row = _as_components(monomial_coproduct(a, a.degree, self.N), self.N)
            self._rows[a] = row
        return row

    def get(self, a, i, j) -> ZSeries:
        s = self[a].get((MultiIndex(i), MultiIndex(j)))
        return s if s is not None else ZSeries.zero(self.N)

    def targets(self):
        return sorted(self._rows)

    def nonzero(self):
        for a in sorted(self._rows):
            for (i, j), s in sorted(self._rows[a].items()):
                if not s.is_zero():
                    yield a, i, j, s

    def export(self, path=None) -> str:
        """Sorted sparse triplets: ``target left right coefficient`` per line."""
        lines = [f"{a} {i} {j} {s}" for a, i, j, s in self.nonzero()]
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def structure_tensor(D: int = DEFAULT_ORDER, N: int = DEFAULT_ORDER) -> StructureTensor:
    F = StructureTensor(N)
    for a in indices(D):
        F[a]
    return F


# ---------------------------------------------------------------------------
# the six component families


def _family_checks(F: StructureTensor, D: int) -> Report:
    """The identity components and the six closed-form families of ``F``."""
    N = F.N
    rep = Report("F_families", caps={"order": N, "degree": D})
    targets = indices(D)

    def minus(a, s):
        b = list(a)
        b[s] -= 1
        return MultiIndex(b)

    def family(name, anchor, select, expect):
        bad = 0
        for a in targets:
            row = F[a]
            got = {key: s for key, s in row.items() if select(*key) and not s.is_zero()}
            want = expect(a)
            keys = set(got) | set(want)
            for key in keys:
                g = got.get(key, ZSeries.zero(N))
                w = ZSeries.const(want.get(key, 0), N)
                if g != w:
                    bad += 1
        rep.flag(name, anchor, bad == 0, "" if not bad else f"{bad} mismatching components")

    # identity components
    family("F_id_left", "F^a_{0;j} = delta^a_j", lambda i, j: i == ZERO6,
           lambda a: {(MultiIndex(ZERO6), a): 1})
    family("F_id_right", "F^a_{i;0} = delta^a_i", lambda i, j: j == ZERO6,
           lambda a: {(a, MultiIndex(ZERO6)): 1})
    bad = sum(1 for (i, j), s in F[ZERO6].items() if (i, j) != (ZERO6, ZERO6) and not s.is_zero())
    rep.flag("F_id_target", "F^0_{i;j} = delta_i^0 delta_j^0", bad == 0 and F.get(ZERO6, ZERO6, ZERO6) == 1)

    e = [MultiIndex(UNIT[n]) for n in FUNZG]   # E2, E1, P+, K3, P1, P2 in index order

    def unit_left(s, zero_right):
        return (lambda i, j: i == e[s] and all(j[t] == 0 for t in zero_right))

    def expect_left(s, zero_target):
        def f(a):
            if a[s] == 0 or any(a[t] for t in zero_target):
                return {}
            return {(e[s], minus(a, s)): a[s]}
        return f

    family("F_family_E2", "F^a_{100000;j} = a delta(a - e_1, j)", unit_left(0, ()), expect_left(0, ()))
    family("F_family_E1", "F^a_{010000;0qrstu} = b delta", unit_left(1, (0,)), expect_left(1, (0,)))
    family("F_family_P+", "F^a_{001000;00rstu} = c delta", unit_left(2, (0, 1)), expect_left(2, (0, 1)))

    def unit_right(s, free_left):
        # right index e_s; left index vanishes outside the positions free_left
        return (lambda i, j: j == e[s] and all(i[t] == 0 for t in range(6) if t not in free_left))

    def expect_right(s, free_left):
        def f(a):
            if a[s] == 0 or any(a[t] for t in range(6) if t not in free_left and t != s):
                return {}
            return {(minus(a, s), e[s]): a[s]}
        return f

    family("F_family_P2", "F^a_{000lmn;000001} = f delta", unit_right(5, (3, 4, 5)), expect_right(5, (3, 4, 5)))
    family("F_family_P1", "F^a_{000lm0;000010} = e delta", unit_right(4, (3, 4)), expect_right(4, (3, 4)))
    family("F_family_K3", "F^a_{000l00;000100} = d delta", unit_right(3, (3,)), expect_right(3, (3,)))
    return rep


def check_f_families(D: int = 5, N: int = 5) -> Report:
    return _family_checks(structure_tensor(D, N), D)


# ---------------------------------------------------------------------------
# dual products and relations


def _pbasis(N: int) -> TensorRing:
    """Free ring on the dual generators; its normal words are the dual monomials."""
    return Presentation("pbasis", FUNZG, order=N, free=True).ring(1)


def dual_product(F: StructureTensor, i, j, D: int) -> dict:
    """``p_i p_j`` in the dual basis: ``{a: F^a_{i;j}}`` over targets of degree <= D."""
    i, j = MultiIndex(i), MultiIndex(j)
    out = {}
    for a in indices(D):
        s = F.get(a, i, j)
        if not s.is_zero():
            out[a] = s
    return out


def to_coordinates(pdict: dict, ring: TensorRing) -> NCPolynomial:
    """``sum c_a p_a`` as a polynomial in the coordinates (``p_a`` = monomial / a!)."""
    terms = {}
    for a, s in pdict.items():
        a = MultiIndex(a)
        inv = Fraction(1, a.factorial())
        for k, c in s.items():
            _add_into(terms, (((a.word()),), k), c * inv)
    return ring.from_terms(terms)


def from_coordinates(p: NCPolynomial) -> dict:
    """Inverse of :func:`to_coordinates` for normal words of the coordinate algebra."""
    out = {}
    N = p.ring.order
    for ((w,), k), c in p.terms.items():
        a = MultiIndex.from_word(w)
        out.setdefault(a, {})[k] = c * a.factorial()
    return {a: ZSeries.from_dict(d, N) for a, d in out.items()}


def closed_form(x: str, y: str, D: int, N: int) -> dict:
    """The expected ``[x, y]`` in the dual basis, every series in k3 cut at degree D."""
    out = {}
    two_z = ZSeries.z(N) * 2

    def k3_series(extra, start):
        # 2z * k3^n/n! * extra = 2z p_{000n..}; extra adds one a_i
        for n in range(start, D + 1):
            a = [0, 0, 0, n, 0, 0]
            if extra is not None:
                a[extra] += 1
            a = MultiIndex(a)
            if a.degree <= D:
                out[a] = two_z

    sign = 1
    pair = (x, y)
    if pair in (("a+", "k3"), ("a+", "a1"), ("a+", "a2"), ("a1", "e1"), ("a2", "e2")):
        pair, sign = (y, x), -1
    if pair == ("k3", "a+"):
        k3_series(None, 1)
    elif pair in (("a1", "a+"), ("a2", "a+")):
        k3_series(4 if pair[0] == "a1" else 5, 0)
    elif pair in (("e1", "a1"), ("e2", "a2")):
        k3_series(None, 1)
    if sign < 0:
        out = {a: -s for a, s in out.items()}
    return out


def _diff(u: dict, v: dict, N: int) -> dict:
    out = {}
    for a in set(u) | set(v):
        s = u.get(a, ZSeries.zero(N)) - v.get(a, ZSeries.zero(N))
        if not s.is_zero():
            out[a] = s
    return out


def dual_commutator(F: StructureTensor, x: str, y: str, D: int) -> dict:
    i, j = UNIT[x], UNIT[y]
    return _diff(dual_product(F, i, j, D), dual_product(F, j, i, D), F.N)


def dual_relation_check(D: int = 5, N: int = 5, F: StructureTensor | None = None,
                        stabilization: bool = True) -> Report:
    """All fifteen dual-generator commutators against the closed forms."""
    F = F or structure_tensor(D, N)
    ring = _pbasis(N)
    rep = Report("dual_relations", caps={"order": N, "degree": D})
    for x, y in itertools.combinations(FUNZG, 2):
        got = dual_commutator(F, x, y, D)
        want = closed_form(x, y, D, N)
        rep.record(f"dual_comm({x},{y})", "[p_i, p_j] = sum (F^a_ij - F^a_ji) p_a matches the closed form",
                   to_coordinates(_diff(got, want, N), ring))
    if stabilization:
        # once D >= 4 a larger cap only adds components of higher degree
        F2 = structure_tensor(D + 1, N)
        for x, y in itertools.combinations(FUNZG, 2):
            lo = dual_commutator(F, x, y, D)
            hi = {a: s for a, s in dual_commutator(F2, x, y, D + 1).items() if a.degree <= D}
            rep.record(f"dual_stable({x},{y})", "relations do not depend on the degree cap",
                       to_coordinates(_diff(lo, hi, N), ring))
    return rep


def dual_product_check(D: int = 5, N: int = 5, F: StructureTensor | None = None) -> Report:
    """``p_i p_j`` from F against the product in the coordinate algebra (all 36 ordered pairs)."""
    F = F or structure_tensor(D, N)
    fun = build_presentation("funzg", N, D)
    r = fun.ring(1)
    ring = _pbasis(N)
    rep = Report("dual_products", caps={"order": N, "degree": D})
    for x, y in itertools.product(FUNZG, repeat=2):
        got = dual_product(F, UNIT[x], UNIT[y], D)
        # the coordinate algebra truncates z-power + word length; cut the dual side alike
        got = {a: ZSeries.from_dict({k: c for k, c in s.items() if a.degree + k <= D}, N)
               for a, s in got.items()}
        want = from_coordinates(r.gen(x) * r.gen(y))
        rep.record(f"dual_prod({x},{y})", "dual product through F equals the coordinate product",
                   to_coordinates(_diff(got, want, N), ring))
    return rep


def dual_associativity(D: int = 4, N: int = 4, F: StructureTensor | None = None) -> Report:
    """``(p_i p_j) p_k = p_i (p_j p_k)`` through F on every degree-1 triple, up to caps."""
    F = F or StructureTensor(N)
    rep = Report("dual_associativity", caps={"order": N, "degree": D})
    ring = _pbasis(N)
    zero = ZSeries.zero(N)
    units = [MultiIndex(UNIT[n]) for n in FUNZG]
    targets = indices(D)
    for i, j, k in itertools.product(range(6), repeat=3):
        pi, pj, pk = units[i], units[j], units[k]
        lhs, rhs = {}, {}
        for b in targets:
            left = right = zero
            for (u, v), s in F[b].items():
                if v == pk:
                    left = left + s * F.get(u, pi, pj)
                if u == pi:
                    right = right + s * F.get(v, pj, pk)
            if not left.is_zero():
                lhs[b] = left
            if not right.is_zero():
                rhs[b] = right
        rep.record(f"dual_assoc({FUNZG[i]},{FUNZG[j]},{FUNZG[k]})", "dual product is associative",
                   to_coordinates(_diff(lhs, rhs, N), ring))
    return rep


# ---------------------------------------------------------------------------
# pairing and the T-matrix


def pairing(d, ix) -> ZSeries | Fraction:
    """``<p_d, X^ix>`` for multi-indices, or the bilinear extension to polynomials.

    Polynomials are a coordinate-algebra element (normal words) and a U_z g
    element; the result is a z-series.
    """
    if isinstance(d, NCPolynomial) or isinstance(ix, NCPolynomial):
        N = min(d.ring.order, ix.ring.order)
        out = ZSeries.zero(N)
        fd = from_coordinates(d)
        for ((w,), k), c in ix.terms.items():
            s = fd.get(MultiIndex.from_word(w))
            if s is not None:
                out = out + s * ZSeries.z(N, k) * c if k <= N else out
        return out
    return Fraction(int(MultiIndex(d) == MultiIndex(ix)))


def t_matrix(D: int = 4, N: int = DEFAULT_ORDER):
    """Factorized T-matrix and the canonical sum, both in U_z g (x) coordinates."""
    uzg = _uzg(N)
    fun = build_presentation("funzg", N, D)
    ring = TensorRing((uzg, fun), N, D)
    T = ring.one()
    for X, x in zip(UZG, FUNZG):
        T = T * nc_exp(ring.gen(X, 0) * ring.gen(x, 1))
    canon = {}
    for a in indices(D):
        w = a.word()
        canon[((w, w), 0)] = Fraction(1, a.factorial())
    return T, ring.from_terms(canon)


def t_matrix_check(D: int = 4, N: int = DEFAULT_ORDER) -> Report:
    T, canon = t_matrix(D, N)
    rep = Report("t_matrix", caps={"order": N, "degree": D})
    rep.record("t_matrix", "ordered exponentials equal sum X^mu (x) p_mu", T - canon)
    deg1 = T.ring.from_terms({k: c for k, c in T.terms.items() if sum(map(len, k[0])) == 2})
    expect = T.ring.zero()
    for X, x in zip(UZG, FUNZG):
        expect = expect + T.ring.gen(X, 0) * T.ring.gen(x, 1)
    rep.record("t_matrix_degree1", "first order is sum X (x) x", deg1 - expect)
    return rep
