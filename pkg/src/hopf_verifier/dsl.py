"""A small text format for presentations, with a parser and a serializer.

Statements end with ``;`` and ``#`` starts a comment::

    algebra uzg;
    filtration z;            # or: filtration degree;
    gen E2 order 0;
    comm K3 P+ = (exp(2*z*P+) - 1)/(2*z);
    rule E+ E- = 1;
    coprod P+ = P+ @ 1 + 1 @ P+;
    counit P+ = 0;
    antipode P+ = -P+;

Expressions use ``+ - * / ^``, parentheses, ``z``, rational numbers and
``exp(...)``.  ``@`` separates tensor factors and binds tighter than ``+``
but looser than ``*``.  Division is only by scalars; a scalar with a
positive power of z may be divided out (the result loses that many orders,
which the build margin absorbs).  ``exp`` needs an argument of positive
weight in the declared filtration, so the series is finite after truncation.
Generator names are matched longest first, so ``P+`` is one token.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import NCPolynomial, Presentation, nc_exp, tensor
from .builder import DuplicateRule, PresentationBuilder, divide
from .series import DEFAULT_ORDER

KEYWORDS = ("algebra", "filtration", "gen", "comm", "rule", "coprod", "counit", "antipode")


class ParseError(ValueError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


class UndeclaredGenerator(ParseError):
    pass


class DuplicateRuleError(ParseError, DuplicateRule):
    pass


_WORD = re.compile(r"[A-Za-z_~][A-Za-z0-9_~]*")
_NUM = re.compile(r"\d+")


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text}"


def tokenize(text: str, names=None):
    """Split into tokens.  With ``names`` given, identifiers are extended by
    trailing ``+``/``-`` only when that spells a declared generator."""
    toks = []
    for ln, line in enumerate(text.splitlines(), 1):
        i = 0
        line = line.split("#", 1)[0]
        while i < len(line):
            c = line[i]
            if c.isspace():
                i += 1
                continue
            m = _WORD.match(line, i)
            if m:
                word = m.group()
                j = m.end()
                if names is None:
                    while j < len(line) and line[j] in "+-":
                        word += line[j]
                        j += 1
                else:
                    k = j
                    while k < len(line) and line[k] in "+-" and word + line[j:k + 1] in names:
                        k += 1
                    word += line[j:k]
                    j = k
                toks.append(Token("name", word, ln, i + 1))
                i = j
                continue
            m = _NUM.match(line, i)
            if m:
                toks.append(Token("num", m.group(), ln, i + 1))
                i = m.end()
                continue
            if c in "+-*/^@()=;":
                toks.append(Token("op", c, ln, i + 1))
                i += 1
                continue
            raise ParseError(f"unexpected character {c!r}", ln, i + 1)
    return toks


def _statements(toks):
    cur = []
    for t in toks:
        if t.kind == "op" and t.text == ";":
            if cur:
                yield cur, t
            cur = []
        else:
            cur.append(t)
    if cur:
        raise ParseError("missing ';' after statement", cur[-1].line, cur[-1].col)


class _Expr:
    """Recursive-descent evaluator over the builder's free ring."""

    def __init__(self, toks, b: PresentationBuilder, end):
        self.toks, self.b, self.pos, self.end = toks, b, 0, end

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def fail(self, msg, tok=None):
        tok = tok or self.peek() or self.end
        raise ParseError(msg, tok.line, tok.col)

    def take(self, text=None):
        t = self.peek()
        if t is None or (text is not None and t.text != text):
            self.fail(f"expected {text!r}" if text else "unexpected end of expression")
        self.pos += 1
        return t

    def parse(self):
        v = self.sum()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek().text!r}")
        return v

    # values are Fraction or NCPolynomial (rank 1 or 2)
    def _lift(self, a, b):
        if isinstance(a, NCPolynomial) and isinstance(b, NCPolynomial) and a.rank != b.rank:
            if a.is_scalar():
                a = b.ring.scalar(a.scalar_value())
            elif b.is_scalar():
                b = a.ring.scalar(b.scalar_value())
            else:
                self.fail("cannot add elements of different tensor rank")
        return a, b

    def sum(self):
        v = self.tensor()
        while self.peek() is not None and self.peek().text in "+-":
            op = self.take().text
            w = self.tensor()
            v, w = self._lift(v, w)
            v = v + w if op == "+" else v - w
        return v

    def tensor(self):
        first = self.peek()
        parts = [self.product()]
        while self.peek() is not None and self.peek().text == "@":
            self.take()
            parts.append(self.product())
        if len(parts) == 1:
            return parts[0]
        if len(parts) != 2:
            self.fail("only two tensor factors are supported", first)
        r1 = self.b.ring()
        a, c = (p if isinstance(p, NCPolynomial) else r1.scalar(p) for p in parts)
        if a.rank != 1 or c.rank != 1:
            self.fail("tensor factors must be single-slot", first)
        return tensor(a, c, ring=self.b.ring(2))

    def product(self):
        v = self.unary()
        while self.peek() is not None and self.peek().text in "*/":
            op = self.take()
            w = self.unary()
            if op.text == "*":
                v, w = self._lift(v, w)
                v = v * w
            else:
                v = self._divide(v, w, op)
        return v

    def _divide(self, v, w, tok):
        if isinstance(w, NCPolynomial):
            if not w.is_scalar():
                self.fail("division is only by scalars", tok)
            w = w.scalar_value()
            if isinstance(v, Fraction):
                v = self.b.ring().scalar(v)
        elif w == 0:
            self.fail("division by zero", tok)
        if isinstance(v, Fraction) and isinstance(w, Fraction):
            return v / w
        try:
            return divide(v, w)
        except (ValueError, ArithmeticError) as e:
            self.fail(str(e), tok)

    def unary(self):
        if self.peek() is not None and self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek() is not None and self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() is not None and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "num":
                self.fail("exponent must be a non-negative integer", t)
            n = int(t.text)
            if isinstance(v, Fraction):
                return v ** n
            out = v.ring.one()
            for _ in range(n):
                out = out * v
            return out
        return v

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return Fraction(int(t.text))
        if t.text == "(":
            v = self.sum()
            self.take(")")
            return v
        if t.kind == "name":
            if t.text == "z":
                return self.b.z()
            if t.text == "exp":
                self.take("(")
                arg = self.sum()
                self.take(")")
                return self._exp(arg, t)
            try:
                return self.b.g(t.text)
            except KeyError:
                raise UndeclaredGenerator(f"undeclared generator {t.text!r}", t.line, t.col) from None
        self.fail(f"unexpected {t.text!r}", t)

    def _exp(self, arg, tok):
        if not isinstance(arg, NCPolynomial):
            self.fail("exp of a constant is not allowed", tok)
        ring = arg.ring
        for (key, k) in arg.terms:
            if ring.weight(key, k) < 1:
                self.fail("exp argument must have positive weight in the filtration", tok)
        return nc_exp(arg)


def _name(toks, i, stmt, names=None):
    if i >= len(stmt):
        last = stmt[-1]
        raise ParseError("statement is incomplete", last.line, last.col + len(last.text))
    t = stmt[i]
    if t.kind != "name":
        raise ParseError(f"expected a name, found {t.text!r}", t.line, t.col)
    if names is not None and t.text not in names:
        raise UndeclaredGenerator(f"undeclared generator {t.text!r}", t.line, t.col)
    return t.text


def parse_presentation(text: str, order: int = DEFAULT_ORDER, degree: int | None = None,
                       name: str | None = None) -> Presentation:
    """Build a presentation from DSL text, truncated at z-order ``order``.

    Under ``filtration degree`` the weighted-degree cap is ``degree``
    (default ``order``).
    """
    # pass 1: header and generator declarations
    gens, filt, alg = {}, "z", None
    for stmt, _ in _statements(tokenize(text)):
        head = stmt[0]
        if head.text == "gen":
            if len(stmt) != 4 or stmt[2].text != "order" or stmt[3].kind != "num":
                raise ParseError("expected 'gen <name> order <rank>'", head.line, head.col)
            g = _name(None, 1, stmt)
            if g in gens:
                raise DuplicateRuleError(f"generator {g} declared twice", stmt[1].line, stmt[1].col)
            if g in ("z", "exp") or g in KEYWORDS:
                raise ParseError(f"{g!r} is reserved", stmt[1].line, stmt[1].col)
            gens[g] = int(stmt[3].text)
        elif head.text == "filtration":
            if len(stmt) != 2 or stmt[1].text not in ("z", "degree"):
                raise ParseError("expected 'filtration z' or 'filtration degree'", head.line, head.col)
            filt = stmt[1].text
        elif head.text == "algebra":
            alg = _name(None, 1, stmt)
        elif head.text not in KEYWORDS:
            raise ParseError(f"unknown statement {head.text!r}", head.line, head.col)
    ranks = sorted(gens.values())
    if ranks != list(range(len(ranks))):
        raise ParseError("generator ranks must be 0, 1, ..., n-1 without gaps", 1, 1)
    order_gens = tuple(sorted(gens, key=gens.get))
    if degree is None and filt == "degree":
        degree = order
    b = PresentationBuilder(name or alg or "dsl", order_gens, order=order,
                            degree=degree if filt == "degree" else None, filtration=filt)
    names = set(order_gens)

    # pass 2: tables
    for stmt, semi in _statements(tokenize(text, names)):
        head = stmt[0]
        kind = head.text
        if kind in ("gen", "filtration", "algebra"):
            continue
        nlhs = 2 if kind in ("comm", "rule") else 1
        lhs = [_name(None, 1 + i, stmt, names) for i in range(nlhs)]
        eq = 1 + nlhs
        if eq >= len(stmt) or stmt[eq].text != "=":
            t = stmt[min(eq, len(stmt) - 1)]
            raise ParseError("expected '='", t.line, t.col)
        body = stmt[eq + 1:]
        if not body:
            raise ParseError("empty right-hand side", stmt[eq].line, stmt[eq].col + 1)
        val = _Expr(body, b, semi).parse()
        r1 = b.ring()
        try:
            if kind == "coprod":
                if isinstance(val, Fraction) or val.rank != 2:
                    raise ParseError("a coproduct must be a two-slot expression", head.line, head.col)
                b.coprod(lhs[0], val)
            elif kind == "counit":
                if isinstance(val, NCPolynomial) and not val.is_scalar():
                    raise ParseError("a counit must be a scalar", head.line, head.col)
                b.counit(lhs[0], val)
            else:
                if isinstance(val, Fraction):
                    val = r1.scalar(val)
                if val.rank != 1:
                    raise ParseError("expected a single-slot expression", head.line, head.col)
                if kind == "comm":
                    b.comm(lhs[0], lhs[1], val)
                elif kind == "rule":
                    b.rule(lhs[0], lhs[1], val)
                else:
                    b.antipode(lhs[0], val)
        except DuplicateRule as e:
            raise DuplicateRuleError(str(e), head.line, head.col) from None
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), head.line, head.col) from None
    return b.build()


# ---------------------------------------------------------------------------
# serialization


def _coef(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_to_expr(p: NCPolynomial) -> str:
    """Canonical DSL text of ``p`` (one or two slots)."""
    if p.rank not in (1, 2):
        raise ValueError("only one- and two-slot elements have a DSL form")
    parts = []
    for (key, k), c in sorted(p.terms.items(), key=lambda t: (t[0][1], t[0][0])):
        head = [] if abs(c) == 1 else [_coef(abs(c))]
        if k:
            head.append("z" if k == 1 else f"z^{k}")
        slots = []
        for s, w in enumerate(key):
            f = (head if s == 0 else []) + [p.ring.slots[s].generators[i] for i in w]
            slots.append("*".join(f) or "1")
        parts.append(("-" if c < 0 else "+", " @ ".join(slots)))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def serialize(pres: Presentation) -> str:
    g = pres.generators
    lines = [f"algebra {pres.name};", f"filtration {pres.filtration};"]
    lines += [f"gen {x} order {i};" for i, x in enumerate(g)]
    for (a, c), v in sorted(pres.commutators.items()):
        lines.append(f"comm {g[a]} {g[c]} = {poly_to_expr(pres.table_poly(v))};")
    for (a, c), v in sorted(pres.relations.items()):
        lines.append(f"rule {g[a]} {g[c]} = {poly_to_expr(pres.table_poly(v))};")
    for a, v in sorted(pres.coproduct.items()):
        lines.append(f"coprod {g[a]} = {poly_to_expr(pres.table_poly(v, 2))};")
    for a, v in sorted(pres.counit.items()):
        lines.append(f"counit {g[a]} = {poly_to_expr(pres.ring(1).scalar(_series(v, pres)))};")
    for a, v in sorted(pres.antipode.items()):
        lines.append(f"antipode {g[a]} = {poly_to_expr(pres.table_poly(v))};")
    return "\n".join(lines) + "\n"


def _series(v, pres):
    from .series import ZSeries
    return ZSeries.from_dict(v, pres.order)


def load_presentation(path, order: int = DEFAULT_ORDER, degree: int | None = None) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), order=order, degree=degree)
