"""The universal R-matrix as an ordered product of six exponentials.

Every check multiplies one exponential factor at a time; full expansions are
only formed when they are the object being compared.  A factor
``exp(c z A (x) B)`` with single generators ``A`` and ``B`` expands as
``sum (c z)^n / n! A^n (x) B^n`` with no rewriting at all.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import NCPolynomial, TensorRing, nc_exp, normal_order
from .hopf import coproduct, flip
from .nullplane import UZP31, build_presentation, classical_r
from .report import Report
from .series import DEFAULT_ORDER

# (coefficient of z, left generator, right generator), in product order
FACTORS = ((2, "E2", "P2"), (2, "E1", "P1"), (-2, "P+", "K3"),
           (2, "K3", "P+"), (-2, "P1", "E1"), (-2, "P2", "E2"))


class UniversalR:
    """R and its inverse in U (x) U for the ten-generator algebra, to order z^N."""

    def __init__(self, N: int = DEFAULT_ORDER):
        self.N = N
        self.pres = build_presentation("uzp31", max(N, 1))
        self.ring = TensorRing((self.pres, self.pres), N)
        self.factors = list(FACTORS)
        self._expanded = None
        self._inverse = None

    # -- pieces -----------------------------------------------------------
    def exponent(self, f, slots=(0, 1), ring=None) -> NCPolynomial:
        c, a, b = f
        ring = ring or self.ring
        return (ring.gen(a, slots[0]) * ring.gen(b, slots[1])).scale(c, 1)

    def factor(self, f, sign=1, slots=(0, 1), ring=None) -> NCPolynomial:
        """``exp(sign * c z A (x) B)`` placed on ``slots`` of ``ring``."""
        c, a, b = f
        ring = ring or self.ring
        pa = ring.slots[slots[0]].gen_index(a)
        pb = ring.slots[slots[1]].gen_index(b)
        terms = {}
        for n in range(ring.order + 1):
            key = [()] * ring.rank
            key[slots[0]] = (pa,) * n
            key[slots[1]] = (pb,) * n
            terms[(tuple(key), n)] = Fraction(sign * c) ** n / factorial(n)
        return ring.from_terms(terms)

    def factor_list(self, slots=(0, 1), ring=None, inverse=False):
        if inverse:
            return [self.factor(f, -1, slots, ring) for f in reversed(self.factors)]
        return [self.factor(f, 1, slots, ring) for f in self.factors]

    # -- expanded forms ---------------------------------------------------
    @property
    def expanded(self) -> NCPolynomial:
        if self._expanded is None:
            out = self.ring.one()
            for f in self.factor_list():
                out = out * f
            self._expanded = out
        return self._expanded

    @property
    def inverse(self) -> NCPolynomial:
        if self._inverse is None:
            out = self.ring.one()
            for f in self.factor_list(inverse=True):
                out = out * f
            self._inverse = out
        return self._inverse

    def A1(self) -> NCPolynomial:
        return (self.exponent((1, "E1", "P1")) + self.exponent((1, "E2", "P2"))
                - self.exponent((1, "P+", "K3"))).scale(2)

    def A2(self) -> NCPolynomial:
        return -(self.exponent((1, "P1", "E1")) + self.exponent((1, "P2", "E2"))
                 - self.exponent((1, "K3", "P+"))).scale(2)

    def left_apply(self, t: NCPolynomial) -> NCPolynomial:
        """``R t`` one factor at a time (innermost factor first)."""
        for f in reversed(self.factor_list()):
            t = f * t
        return t

    def right_apply(self, t: NCPolynomial) -> NCPolynomial:
        """``t R`` one factor at a time."""
        for f in self.factor_list():
            t = t * f
        return t

    def export(self, path=None) -> str:
        """Sparse ``word (x) word <TAB> coefficient`` lines of the expanded R."""
        lines = []
        for key, s in sorted(self.expanded.coefficients().items()):
            words = " @ ".join(self.pres.word_str(w) for w in key)
            lines.append(f"{words}\t{s}")
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def build_universal_R(N: int = DEFAULT_ORDER) -> UniversalR:
    return UniversalR(N)


def r_classical_limit(N: int = DEFAULT_ORDER) -> Report:
    R = UniversalR(max(N, 1))
    rep = Report("r_limit", caps={"order": R.N})
    r = normal_order(classical_r(), R.ring)
    rep.record("R_z0", "R = 1 (x) 1 at z = 0", R.expanded.z_part(0) - R.ring.one())
    rep.record("R_z1", "z^1 coefficient of R is the classical r-matrix", R.expanded.z_part(1) - r)
    rep.record("A2_flip_A1", "A2 = -flip(A1)", R.A2() + flip(R.A1()))
    rep.record("R_A1_A2", "R = exp(A1) exp(A2)", nc_exp(R.A1()) * nc_exp(R.A2()) - R.expanded)
    return rep


def check_inverse(N: int = DEFAULT_ORDER) -> Report:
    R = UniversalR(N)
    rep = Report("r_inverse", caps={"order": N})
    one = R.ring.one()
    rep.record("R_Rinv", "R R^-1 = 1 (x) 1", R.left_apply(R.inverse) - one)
    rep.record("Rinv_R", "R^-1 R = 1 (x) 1", R.right_apply(R.inverse) - one)
    rep.record("Rinv_flip", "R^-1 = flip(R)", R.inverse - flip(R.expanded))
    return rep


def check_triangularity(N: int = DEFAULT_ORDER) -> Report:
    R = UniversalR(N)
    rep = Report("triangularity", caps={"order": N})
    t = R.ring.one()
    for f in R.factor_list():
        t = t * flip(f)
    t = R.right_apply(t)
    rep.record("flipR_R", "flip(R) R = 1 (x) 1", t - R.ring.one())
    if N >= 1:
        r1 = R.expanded.z_part(1)
        rep.record("r_antisymmetric", "flip(r) + r = 0", flip(r1) + r1)
    return rep


def check_intertwining(N: int = 4, generators=UZP31) -> Report:
    """``R D(X) = flip(D(X)) R`` for each generator (no inversion needed)."""
    R = UniversalR(N)
    rep = Report("intertwining", caps={"order": N})
    r1 = R.pres.ring(1)
    for X in generators:
        d = coproduct(r1.gen(X))
        if N < R.pres.order:
            d = d.truncate(N)
        d = NCPolynomial(R.ring, dict(d.terms))
        res = R.left_apply(d) - R.right_apply(flip(d))
        rep.record(f"intertwining({X})", "R D(X) = flip(D(X)) R", res)
    return rep


def check_qybe(N: int = 4) -> Report:
    """``R12 R13 R23 = R23 R13 R12`` in the triple tensor product, to order z^N."""
    rep = Report("qybe", caps={"order": N})
    if N == 0:
        rep.flag("qybe", "R12 R13 R23 = R23 R13 R12", True, "trivial at order 0")
        return rep
    R = UniversalR(N)
    r3 = TensorRing((R.pres,) * 3, N)

    def seq(*pairs):
        out = r3.one()
        for slots in pairs:
            for f in R.factor_list(slots, r3):
                out = out * f
        return out

    lhs = seq((0, 1), (0, 2), (1, 2))
    rhs = seq((1, 2), (0, 2), (0, 1))
    res = lhs - rhs
    rep.record("qybe", "R12 R13 R23 = R23 R13 R12", res)
    for k in range(N + 1):
        part = res.z_part(k)
        rep.record(f"qybe_z{k}", f"order z^{k} of the Yang-Baxter residual", part)
    return rep
