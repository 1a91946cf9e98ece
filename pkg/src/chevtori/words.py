"""Parsers for element strings and relation words used by the datasets.

Element strings follow the tables' notation, e.g. ``h_2n_1n_4n_6n_3`` or
``h_{53}n_2``; the atoms ``n`` (the row's natural preimage), ``x`` (the
row's twisting element) and ``n_0`` (the central lift) resolve through an
environment.  Relation words are expressions over named generators with
products, integer powers, parentheses and commutators, e.g.
``a^6``, ``(bc)^3``, ``[a,b]``, ``jcje``, ``da^{-1}c^{-1}d(dc^{-1})^2``.
"""

from __future__ import annotations

import re

from .tits import TitsElement, TitsGroup

_ELEMENT_TOKEN = re.compile(
    r"\s*(?:(?P<hn>[hn])_(?:\{(?P<braced>\d+)\}|(?P<plain>\d+))"
    r"|(?P<name>[a-z]|1))\s*(?:\^(?P<exp>-?\d+))?"
)


def parse_element(group: TitsGroup, text: str, env: dict[str, TitsElement] | None = None) -> TitsElement:
    """Parse a product of h_i / n_i factors and named atoms into the engine."""
    env = env or {}
    pos = 0
    out = group.identity
    while pos < len(text):
        m = _ELEMENT_TOKEN.match(text, pos)
        if not m or m.start() != pos:
            raise ValueError(f"cannot parse element string {text!r} at {pos}")
        pos = m.end()
        if m.group("hn"):
            idx = int(m.group("braced") or m.group("plain"))
            if m.group("hn") == "h":
                if idx == 0:
                    raise ValueError("h_0 is not an element")
                factor = group.h_element(group.h_of_root(idx))
            elif idx == 0:
                factor = group.central_lift()
            else:
                factor = group.n_of_root(idx)
        else:
            name = m.group("name")
            if name == "1":
                factor = group.identity
            elif name in env:
                factor = env[name]
            else:
                raise ValueError(f"unknown atom {name!r} in {text!r}")
        if m.group("exp"):
            factor = factor ** int(m.group("exp"))
        out = group.mul(out, factor)
    return out


# -- relation words -----------------------------------------------------------

class WordSyntaxError(ValueError):
    pass


class _WordParser:
    """word := factor+ ; factor := atom ['^' int] ;
    atom := name | '(' word ')' | '[' word ',' word ']'"""

    def __init__(self, text: str):
        self.text = text.replace(" ", "").replace("{", "").replace("}", "")
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        word = self.parse_word()
        if self.pos != len(self.text):
            raise WordSyntaxError(f"trailing input in {self.text!r}")
        return word

    def parse_word(self):
        factors = []
        while True:
            ch = self.peek()
            if ch.isalpha() or ch == "(" or ch == "[" or ch == "1":
                factors.append(self.parse_factor())
            else:
                break
        if not factors:
            raise WordSyntaxError(f"empty word in {self.text!r}")
        return ("prod", factors)

    def parse_factor(self):
        atom = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            start = self.pos
            while self.peek().isdigit():
                self.pos += 1
            if start == self.pos:
                raise WordSyntaxError(f"missing exponent in {self.text!r}")
            return ("pow", atom, sign * int(self.text[start:self.pos]))
        return atom

    def parse_atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_word()
            if self.peek() != ")":
                raise WordSyntaxError(f"unbalanced '(' in {self.text!r}")
            self.pos += 1
            return inner
        if ch == "[":
            self.pos += 1
            left = self.parse_word()
            if self.peek() != ",":
                raise WordSyntaxError(f"expected ',' in commutator in {self.text!r}")
            self.pos += 1
            right = self.parse_word()
            if self.peek() != "]":
                raise WordSyntaxError(f"unbalanced '[' in {self.text!r}")
            self.pos += 1
            return ("comm", left, right)
        if ch == "1":
            self.pos += 1
            return ("one",)
        if ch.isalpha():
            self.pos += 1
            return ("gen", ch)
        raise WordSyntaxError(f"unexpected {ch!r} in {self.text!r}")


def parse_word(text: str):
    return _WordParser(text).parse()


def evaluate_word(tree, env: dict, *, mul, inv, identity):
    """Evaluate a parsed word over any group given mul/inv/identity."""
    tag = tree[0]
    if tag == "prod":
        out = identity
        for f in tree[1]:
            out = mul(out, evaluate_word(f, env, mul=mul, inv=inv, identity=identity))
        return out
    if tag == "pow":
        base = evaluate_word(tree[1], env, mul=mul, inv=inv, identity=identity)
        k = tree[2]
        if k < 0:
            base = inv(base)
            k = -k
        out = identity
        for _ in range(k):
            out = mul(out, base)
        return out
    if tag == "comm":
        a = evaluate_word(tree[1], env, mul=mul, inv=inv, identity=identity)
        b = evaluate_word(tree[2], env, mul=mul, inv=inv, identity=identity)
        return mul(mul(a, b), mul(inv(a), inv(b)))
    if tag == "gen":
        try:
            return env[tree[1]]
        except KeyError:
            raise WordSyntaxError(f"undefined generator {tree[1]!r}") from None
    if tag == "one":
        return identity
    raise AssertionError(tag)


def expand_relations(relations: list[str], gen_names: list[str]) -> list[str]:
    """Expand R(x) commuting-with-everything shorthands into plain words."""
    out = []
    for rel in relations:
        rel = rel.strip()
        m = re.fullmatch(r"R\((\w)\)", rel)
        if m:
            g = m.group(1)
            out.extend(f"[{g},{h}]" for h in gen_names if h != g)
        else:
            out.append(rel)
    return out


def generator_names(relations: list[str], generators: dict[str, str]) -> list[str]:
    return sorted(generators.keys())
