"""Plain-text notation for rule systems.

Families::

    C(n) = 0 (A0) 1^n 0
    C(n, p) = 0 (A0) (10)^n R(bin(p)) 0

Rules (``|-`` and ``⊢`` are interchangeable)::

    C(3k) |- 5k^2 + 19k + 15  C(5k + 6)
    C(3k+2) |- 6k + 12  halt 0 1 (H0) 1 (001)^{k+1} 1 0
    C(n, 4m+1) = C(n+1, m)          # zero-step rewrite of the same tape
    init |- 47  C(5, 2)             # from the blank tape
    blank = C(0)

Unbraced exponents are a single letter or digit (``1^n0`` is ``1^n`` then
``0``); anything longer needs braces, ``2^{14k+9}``.

Source arguments must be affine in at most one variable: ``3k+2`` matches
``a*q+b``; a constant matches an exact value.
"""

from __future__ import annotations

import re

from ..machine import parse_machine, state_index
from .intexpr import IntExpr, IntExprSyntaxError, parse_intexpr
from .system import (Binary, Family, Head, InitialRule, Literal, Matcher, Repeat, Rule,
                     RuleError, RuleSystem, Template)

_SEG = re.compile(
    r"\s*(?:"
    r"(?P<rbin>R\(\s*bin\(\s*(?P<rp>[a-z_]\w*)\s*\)\s*\))"
    r"|(?P<bin>bin\(\s*(?P<bp>[a-z_]\w*)\s*\))"
    r"|(?P<head>\((?P<hs>[A-Z])(?P<hy>\d)\))"
    r"|(?:\((?P<blk>\d+)\)|(?P<one>\d))\^(?:\{(?P<bexp>[^{}]+)\}|(?P<sexp>[a-z]|\d))"
    r"|(?P<lit>(?:\d(?!\^))+)"
    r")"
)


def parse_template(text: str) -> Template:
    text = text.replace("…", " ").replace("...", " ").replace("\\ldots", " ").strip()
    segs = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _SEG.match(text, pos)
        if mt is None or mt.end() == pos:
            raise RuleError(f"cannot parse template near {text[pos:pos + 16]!r}")
        pos = mt.end()
        if mt.group("rbin"):
            segs.append(Binary(mt.group("rp"), True))
        elif mt.group("bin"):
            segs.append(Binary(mt.group("bp"), False))
        elif mt.group("head"):
            segs.append(Head(state_index(mt.group("hs")), int(mt.group("hy"))))
        elif mt.group("lit") is not None:
            segs.append(Literal(mt.group("lit")))
        else:
            block = mt.group("blk") or mt.group("one")
            segs.append(Repeat(block, parse_intexpr(mt.group("bexp") or mt.group("sexp"))))
    return Template(tuple(segs))


def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


_CALL = re.compile(r"^\s*([A-Z][A-Za-z0-9_]*)\s*\((.*)\)\s*$", re.S)


def _call(text: str) -> tuple[str, list[str]]:
    mt = _CALL.match(text)
    if mt is None:
        raise RuleError(f"expected Family(args), got {text!r}")
    return mt.group(1), _split_args(mt.group(2))


def parse_family(text: str) -> Family:
    lhs, rhs = text.split("=", 1)
    name, params = _call(lhs)
    return Family(name, tuple(params), parse_template(rhs))


def _matcher(param: str, arg: str) -> Matcher:
    e = parse_intexpr(arg)
    c = e.constant_value()
    if c is not None:
        if c.denominator != 1 or c < 0:
            raise RuleError(f"exact matcher must be a nonnegative integer: {arg!r}")
        return Matcher(param, eq=int(c))
    if not e.is_affine() or len(e.variables()) != 1:
        raise RuleError(f"matcher must be a*q+b in one variable: {arg!r}")
    (var,) = e.variables()
    a = e.terms[(((var, 1),), ())]
    b = e.terms.get(((), ()), 0)
    if a.denominator != 1 or b.denominator != 1 or a < 1 or b < 0:
        raise RuleError(f"matcher needs integers a >= 1, b >= 0: {arg!r}")
    return Matcher(param, int(a), int(b), var)


_TARGET = re.compile(r"\s(halt\b|[A-Z][A-Za-z0-9_]*\s*\()")


def parse_rule(text: str, families: dict[str, Family]) -> Rule | InitialRule:
    text = text.replace("⊢", "|-").strip()
    if "|-" in text:
        lhs, rhs = text.split("|-", 1)
        normalize = False
    elif "=" in text:
        lhs, rhs = text.split("=", 1)
        rhs = " 0 " + rhs
        normalize = True
    else:
        raise RuleError(f"rule needs '|-' or '=': {text!r}")
    mt = _TARGET.search(" " + rhs)
    if mt is None:
        raise RuleError(f"rule has no target: {text!r}")
    cut = mt.start() - 1 if mt.start() > 0 else 0
    steps = parse_intexpr(rhs[:cut]) if rhs[:cut].strip() else IntExpr.const(0)
    tgt = rhs[cut:].strip()
    lhs = lhs.strip()
    if lhs in ("init", "blank"):
        name, args = _call(tgt)
        return InitialRule(steps, name, tuple(parse_intexpr(a) for a in args))
    name, args = _call(lhs)
    if name not in families:
        raise RuleError(f"unknown family {name!r} in {text!r}")
    fam = families[name]
    if len(args) != len(fam.params):
        raise RuleError(f"{name} takes {len(fam.params)} arguments: {text!r}")
    matchers = tuple(_matcher(p, a) for p, a in zip(fam.params, args))
    if tgt.startswith("halt"):
        return Rule(name, matchers, steps, halt=parse_template(tgt[4:]))
    tname, targs = _call(tgt)
    try:
        params = tuple(parse_intexpr(a) for a in targs)
    except IntExprSyntaxError as exc:
        raise RuleError(f"bad target in {text!r}: {exc}") from None
    return Rule(name, matchers, steps, tname, params, normalize=normalize)


def system_from_text(name: str, families: list[str], rules: list[str], machine: str | None = None,
                     description: str = "") -> RuleSystem:
    fams = {}
    for f in families:
        fam = parse_family(f)
        fams[fam.name] = fam
    initial = None
    parsed = []
    for r in rules:
        r = r.split("#", 1)[0].strip()
        if not r:
            continue
        out = parse_rule(r, fams)
        if isinstance(out, InitialRule):
            initial = out
        else:
            parsed.append(out)
    m = parse_machine(machine) if machine else None
    return RuleSystem(name, fams, parsed, initial, m, description)
