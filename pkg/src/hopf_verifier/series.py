"""Truncated power series in the deformation parameter ``z``.

Coefficients are exact rationals (:class:`fractions.Fraction`).  A series of
order ``N`` stores ``c_0 .. c_N``; everything above ``z**N`` is unknown and
dropped.  Combining two series of different orders keeps the smaller one.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

DEFAULT_ORDER = 6


class SeriesError(ArithmeticError):
    pass


class ExpOfUnit(SeriesError):
    """exp() was asked for a series with nonzero constant term."""


class InverseOfNonUnit(SeriesError):
    """inverse() was asked for a series with zero constant term."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class ZSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls([c], order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls([1], order)

    @classmethod
    def z(cls, order: int = DEFAULT_ORDER, power: int = 1) -> "ZSeries":
        cs = [0] * (power + 1)
        cs[power] = 1
        return cls(cs, order)

    @classmethod
    def from_dict(cls, d, order: int) -> "ZSeries":
        cs = [0] * (order + 1)
        for k, c in d.items():
            if k <= order:
                cs[k] += c
        return cls(cs, order)

    # -- basic protocol ---------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        if k < 0:
            return Fraction(0)
        raise IndexError(f"coefficient z^{k} is beyond the truncation order {self.order}")

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def valuation(self) -> int | None:
        """Index of the lowest nonzero coefficient, None for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def degree(self) -> int | None:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return None

    def truncate(self, order: int) -> "ZSeries":
        return ZSeries(self.coeffs[: order + 1], min(order, self.order))

    def items(self):
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def __eq__(self, other):
        if isinstance(other, ZSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ZSeries({self}, order={self.order})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            zs = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if zs and c == 1:
                s = zs
            elif zs and c == -1:
                s = "-" + zs
            elif zs:
                s = f"{c}*{zs}" if c.denominator == 1 else f"({c})*{zs}"
            else:
                s = str(c)
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "ZSeries":
        if isinstance(other, ZSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return ZSeries([other], self.order)
        raise TypeError(f"cannot combine ZSeries with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return ZSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, ZSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return ZSeries(out, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZSeries([c / other for c in self.coeffs], self.order)
        if isinstance(other, ZSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ZSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift_down(self, v: int) -> "ZSeries":
        """Divide by ``z**v``; the low coefficients must vanish.  Order drops by ``v``."""
        if any(self.coeffs[:v]):
            raise SeriesError(f"series is not divisible by z^{v}")
        if v > self.order:
            raise SeriesError("not enough precision to divide")
        return ZSeries(self.coeffs[v:], self.order - v)

    def exp(self) -> "ZSeries":
        if self.coeffs[0]:
            raise ExpOfUnit("exp needs a series with zero constant term")
        n = self.order
        out = ZSeries.one(n)
        term = ZSeries.one(n)
        for k in range(1, n + 1):
            term = term * self
            if term.is_zero():
                break
            out = out + term * Fraction(1, factorial(k))
        return out

    def inverse(self) -> "ZSeries":
        a = self.coeffs
        if not a[0]:
            raise InverseOfNonUnit("series with zero constant term has no inverse")
        n = self.order
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, n + 1):
            s = sum((a[j] * b[k - j] for j in range(1, k + 1)), Fraction(0))
            b.append(-s * inv0)
        return ZSeries(b, n)


def series_arith(a: ZSeries, b: ZSeries, kind: str) -> ZSeries:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown series operation {kind!r}")


def series_exp_inv(a: ZSeries, kind: str) -> ZSeries:
    if kind == "exp":
        return a.exp()
    if kind == "inverse":
        return a.inverse()
    raise ValueError(f"unknown series operation {kind!r}")
