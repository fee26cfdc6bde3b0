"""Exact integer expressions: sums of rational multiples of monomials and
exponentials with linear exponents, e.g. ``54*4^(k+1) - 27*2^(k+3) + 26k + 86``.

Terms are kept in a canonical dict so that structurally equal expressions
compare equal.  Evaluation is done with a common denominator in plain
integers; a result that is not an integer raises :class:`DivisibilityError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Mapping

# monomial: tuple of (var, power) sorted; exponentials: tuple of
# (base, ((var, coef), ...)) sorted.  Constant parts of exponents are folded
# into the coefficient.
Key = tuple[tuple[tuple[str, int], ...], tuple[tuple[int, tuple[tuple[str, int], ...]], ...]]


class DivisibilityError(ArithmeticError):
    """An expression evaluated to a non-integer."""


class IntExprSyntaxError(ValueError):
    pass


def _merge(a: dict, b: dict) -> dict:
    out = dict(a)
    for v, c in b.items():
        out[v] = out.get(v, 0) + c
        if out[v] == 0:
            del out[v]
    return out


class IntExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        self.terms: dict[Key, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "IntExpr":
        return cls({((), ()): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "IntExpr":
        return cls({(((name, 1),), ()): Fraction(1)})

    @classmethod
    def exp(cls, base: int, exponent: "IntExpr") -> "IntExpr":
        """``base ** exponent`` where ``exponent`` is linear in the variables."""
        if base < 2:
            raise IntExprSyntaxError("exponential base must be >= 2")
        linear: dict[str, int] = {}
        shift = Fraction(0)
        for (mono, exps), c in exponent.terms.items():
            if exps or len(mono) > 1 or (mono and mono[0][1] != 1):
                raise IntExprSyntaxError("exponents must be linear in the variables")
            if c.denominator != 1:
                raise IntExprSyntaxError("exponent coefficients must be integers")
            if mono:
                linear[mono[0][0]] = int(c)
            else:
                shift = c
        coef = Fraction(base) ** int(shift)
        if not linear:
            return cls.const(coef)
        return cls({((), ((base, tuple(sorted(linear.items()))),)): coef})

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "IntExpr":
        other = _lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return IntExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "IntExpr":
        return IntExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "IntExpr":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "IntExpr":
        return _lift(other) - self

    def __mul__(self, other) -> "IntExpr":
        other = _lift(other)
        out: dict[Key, Fraction] = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                mono = tuple(sorted(_merge(dict(m1), dict(m2)).items()))
                ex: dict[int, dict] = {b: dict(l) for b, l in e1}
                for b, l in e2:
                    ex[b] = _merge(ex.get(b, {}), dict(l))
                exps = tuple(sorted((b, tuple(sorted(l.items()))) for b, l in ex.items() if l))
                key = (mono, exps)
                out[key] = out.get(key, 0) + c1 * c2
        return IntExpr(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "IntExpr":
        other = _lift(other)
        c = other.constant_value()
        if c is None or c == 0:
            raise IntExprSyntaxError("division is only allowed by nonzero constants")
        return IntExpr({k: v / c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "IntExpr":
        if not isinstance(n, int) or n < 0:
            raise IntExprSyntaxError("powers must be nonnegative integer constants")
        out = IntExpr.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = IntExpr.const(other)
        return isinstance(other, IntExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # inspection ---------------------------------------------------------
    def variables(self) -> set[str]:
        out = set()
        for mono, exps in self.terms:
            out.update(v for v, _ in mono)
            for _, lin in exps:
                out.update(v for v, _ in lin)
        return out

    def constant_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {((), ())}:
            return self.terms[((), ())]
        return None

    def is_affine(self) -> bool:
        return all(not exps and (len(mono) == 0 or (len(mono) == 1 and mono[0][1] == 1))
                   for mono, exps in self.terms)

    def evaluate(self, env: Mapping[str, int]) -> int:
        """Exact value at integer point ``env``."""
        den = lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1
        num = 0
        for (mono, exps), c in self.terms.items():
            t = c.numerator * (den // c.denominator)
            for v, p in mono:
                t *= env[v] ** p
            lost = 1
            for b, lin in exps:
                e = sum(a * env[v] for v, a in lin)
                if e >= 0:
                    t *= b ** e
                else:
                    lost *= b ** -e
            if lost != 1:
                if t % lost:
                    raise DivisibilityError(f"{self} is not an integer at {dict(env)}")
                t //= lost
            num += t
        q, r = divmod(num, den)
        if r:
            raise DivisibilityError(f"{self} is not an integer at {dict(env)}")
        return q

    __call__ = evaluate

    # serialization ------------------------------------------------------
    def to_json(self) -> list[dict]:
        out = []
        for (mono, exps), c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            term: dict = {"coef": [str(c.numerator), str(c.denominator)]}
            if mono:
                term["powers"] = dict(mono)
            if exps:
                term["exps"] = [{"base": b, "linear": dict(lin) | {"const": 0}} for b, lin in exps]
            out.append(term)
        return out

    @classmethod
    def from_json(cls, data) -> "IntExpr":
        """Accept the term list, a plain integer / decimal string, or an
        expression string."""
        if isinstance(data, bool):
            raise IntExprSyntaxError("booleans are not expressions")
        if isinstance(data, int):
            return cls.const(data)
        if isinstance(data, str):
            return parse_intexpr(data)
        if isinstance(data, dict):
            data = [data]
        total = cls()
        for term in data:
            coef = term.get("coef", [1, 1])
            if isinstance(coef, (list, tuple)):
                c = Fraction(int(coef[0]), int(coef[1]) if len(coef) > 1 else 1)
            else:
                c = Fraction(str(coef))
            t = cls.const(c)
            for v, p in term.get("powers", {}).items():
                t = t * cls.var(v) ** int(p)
            for e in term.get("exps", []):
                lin = dict(e.get("linear", {}))
                shift = int(lin.pop("const", 0))
                ex = cls.const(shift)
                for v, a in lin.items():
                    ex = ex + int(a) * cls.var(v)
                t = t * cls.exp(int(e["base"]), ex)
            total = total + t
        return total

    def __repr__(self) -> str:
        return f"IntExpr({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            mono, exps = key
            factors = [v if p == 1 else f"{v}^{p}" for v, p in mono]
            for b, lin in exps:
                lin_s = " + ".join(v if a == 1 else f"{a}{v}" for v, a in lin).replace("+ -", "- ")
                factors.append(f"{b}^({lin_s})" if len(lin) > 1 or lin[0][1] != 1 else f"{b}^{lin[0][0]}")
            body = "*".join(factors)
            mag = abs(c)
            cs = str(mag) if mag.denominator == 1 else f"({mag})"
            text = cs if not body else (body if mag == 1 else f"{cs}*{body}")
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def _sort_key(key: Key):
    mono, exps = key
    return (-len(exps), -sum(p for _, p in mono), mono, exps)


def _lift(x) -> IntExpr:
    if isinstance(x, IntExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return IntExpr.const(x)
    raise TypeError(f"cannot combine IntExpr with {type(x).__name__}")


# ---------------------------------------------------------------- parser

_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(){}×·−]))")


def _tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOK.match(text, pos)
        if mt is None or mt.end() == pos:
            raise IntExprSyntaxError(f"unexpected character in {text!r} at {pos}")
        pos = mt.end()
        tok = mt.group(0).strip()
        tok = {"×": "*", "·": "*", "−": "-", "**": "^", "{": "(", "}": ")"}.get(tok, tok)
        if tok:
            toks.append(tok)
    return toks


class _Parser:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise IntExprSyntaxError(f"expected {want or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> IntExpr:
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> IntExpr:
        out = self.unary()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                out = out * rhs if tok == "*" else out / rhs
            elif tok is not None and (tok == "(" or tok[0].isalnum() or tok[0] == "_"):
                out = out * self.power()  # implicit multiplication: 26k, 2(k+1)
            else:
                return out

    def unary(self) -> IntExpr:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> IntExpr:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        if self.peek() == "-":
            raise IntExprSyntaxError("negative powers are not supported")
        ex = self.atom()
        c = ex.constant_value()
        if c is not None and c.denominator == 1:
            return base ** int(c)
        b = base.constant_value()
        if b is None or b.denominator != 1:
            raise IntExprSyntaxError("variable exponents need an integer base")
        return IntExpr.exp(int(b), ex)

    def atom(self) -> IntExpr:
        tok = self.take()
        if tok == "(":
            out = self.expr()
            self.take(")")
            return out
        if tok.isdigit():
            return IntExpr.const(int(tok))
        if tok[0].isalpha() or tok[0] == "_":
            return IntExpr.var(tok)
        raise IntExprSyntaxError(f"unexpected token {tok!r}")


def parse_intexpr(text: str) -> IntExpr:
    """Parse ``54*4^(k+1) - 27*2^{k+3} + 26k + 86`` style text.

    Multiplication may be written ``*``, ``×``, ``·`` or by juxtaposition;
    ``^`` binds tighter than multiplication; division is by constants only.
    """
    p = _Parser(_tokenize(text))
    if p.peek() is None:
        raise IntExprSyntaxError("empty expression")
    out = p.expr()
    if p.peek() is not None:
        raise IntExprSyntaxError(f"trailing input at {p.peek()!r}")
    return out
