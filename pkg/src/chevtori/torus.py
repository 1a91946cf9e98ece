"""Torus arithmetic: exponent matrices, twisted structure, concrete fields.

A Weyl element w acts on torus coordinates (lambda_1, ..., lambda_l) through
its integer matrix A: conjugating H = (lambda_i) by any lift n of w gives
H^n with lambda_i' = prod_j lambda_j^{a_ij}.  Powers of H n accumulate
B = sum_{t<m} A^t.  The torus twisted by sigma n is Z^l/(qA - I)Z^l, so its
cyclic structure is the Smith normal form of qA - I and its order is
|det(qA - I)|.

Concrete computations over the field with q^k elements use only the cyclic
multiplicative group: torus coordinates are exponents modulo q^k - 1 with
respect to a fixed generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .tits import TitsElement, TitsGroup


# -- exponent matrices ------------------------------------------------------

def conj_matrix(w: np.ndarray) -> np.ndarray:
    """Matrix A acting on torus coordinates by the row rule; equals w."""
    return w


def power_sum(w: np.ndarray, m: int) -> np.ndarray:
    """B = I + A + ... + A^{m-1} for A = conj_matrix(w)."""
    l = w.shape[0]
    b = np.zeros((l, l), dtype=np.int64)
    p = np.eye(l, dtype=np.int64)
    for _ in range(m):
        b += p
        p = p @ w
    return b


def power_data(u: TitsElement, m: int) -> tuple[np.ndarray, TitsElement]:
    """Exponent matrix of (H u)^m = H^B u^m together with u^m."""
    return power_sum(u.w, m), u ** m


# -- exact integer linear algebra ------------------------------------------

def det_bareiss(a: np.ndarray) -> int:
    """Exact determinant by fraction-free elimination over Python ints."""
    m = [[int(x) for x in row] for row in a]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (s, u, v) with s = u a v diagonal, d_1 | d_2 | ..., u, v unimodular."""
    s = [[int(x) for x in row] for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        s[i] = [x + c * y for x, y in zip(s[i], s[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in s:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    for t in range(min(m, n)):
        while True:
            # move a minimal nonzero entry of the trailing block to (t, t)
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] and (piv is None or abs(s[i][j]) < abs(s[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            # enforce divisibility: fold in any entry the pivot misses
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % s[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < min(m, n) and s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def invariant_factors(a) -> list[int]:
    """Nontrivial invariant factors d_1 | d_2 | ... of an integer matrix."""
    s, _, _ = smith_normal_form(a)
    return [s[i][i] for i in range(min(len(s), len(s[0]))) if s[i][i] not in (0, 1)]


@dataclass(frozen=True)
class TwistedTorusStructure:
    q: int
    invariant_factors: tuple[int, ...]
    order: int


def twisted_structure(w: np.ndarray, q: int) -> TwistedTorusStructure:
    """Cyclic structure of the torus twisted by sigma n with pi(n) = w."""
    l = w.shape[0]
    m = q * conj_matrix(w) - np.eye(l, dtype=np.int64)
    det = det_bareiss(m)
    if det == 0:
        raise AssertionError("qA - I is singular")
    s, _, _ = smith_normal_form(m)
    factors = tuple(s[i][i] for i in range(l) if s[i][i] != 1)
    order = 1
    for d in factors:
        order *= d
    assert order == abs(det)
    return TwistedTorusStructure(q, factors, order)


# -- integer polynomials -----------------------------------------------------

class IntPoly:
    """Dense integer polynomial in one variable q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c) if c else (0,)

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def q_power(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + IntPoly([-x for x in other.coeffs])

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(out)

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __neg__(self) -> "IntPoly":
        return IntPoly([-x for x in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def eval(self, q: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1]

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def char_det_poly(w: np.ndarray) -> IntPoly:
    """det(q w - I) as an integer polynomial, by exact interpolation."""
    l = w.shape[0]
    xs = list(range(l + 1))
    ys = [det_bareiss(x * w - np.eye(l, dtype=np.int64)) for x in xs]
    # Newton divided differences over exact rationals
    coef = [Fraction(y) for y in ys]
    for j in range(1, l + 1):
        for i in range(l, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = IntPoly([0])
    basis = IntPoly([1])
    for i in range(l + 1):
        assert coef[i].denominator == 1
        poly = poly + basis * IntPoly([int(coef[i])])
        basis = basis * IntPoly([-xs[i], 1])
    return poly


def order_polynomial(w: np.ndarray) -> IntPoly:
    """det(qA - I) normalized to positive leading coefficient."""
    p = char_det_poly(w)
    return p if p.leading() > 0 else -p


# -- torus factor strings ----------------------------------------------------

class FactorParseError(ValueError):
    pass


def _tokenize_factors(s: str):
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif s.startswith("\\times", i):
            yield ("times", None)
            i += 6
        elif ch in "()+-^*":
            yield (ch, None)
            i += 1
        elif ch == "q":
            yield ("q", None)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            yield ("int", int(s[i:j]))
            i = j
        else:
            raise FactorParseError(f"unexpected {ch!r} in factor string {s!r}")
    yield ("end", None)


class _FactorParser:
    """Recursive-descent parser for torus structure strings.

    Grammar: product of cyclic factors separated by \\times; each factor is a
    product of parenthesized or bare polynomials with optional ^k powers and
    implicit multiplication, over +, -, q, integers.
    """

    def __init__(self, s: str):
        self.tokens = list(_tokenize_factors(s))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_cyclic_factors(self) -> list[IntPoly]:
        factors = [*self.parse_cyclic_factor()]
        while self.peek() == "times":
            self.next()
            factors.extend(self.parse_cyclic_factor())
        if self.peek() != "end":
            raise FactorParseError(f"trailing tokens at {self.pos}")
        return factors

    def parse_cyclic_factor(self) -> list[IntPoly]:
        """One times-separated entry; an outer power like (q-1)^5 denotes
        that many repeated cyclic factors."""
        start = self.pos
        p = self.parse_poly()
        # detect the exact shape (...)^k with nothing else in the entry
        tokens = self.tokens[start:self.pos]
        if (
            len(tokens) >= 4
            and tokens[0][0] == "("
            and tokens[-2][0] == "^"
            and tokens[-1][0] == "int"
            and self._balanced_until(tokens)
        ):
            k = tokens[-1][1]
            inner = _FactorParser("")
            inner.tokens = tokens[1:-3] + [("end", None)]
            inner.pos = 0
            base = inner.parse_poly()
            if inner.peek() == "end":
                return [base] * k
        return [p]

    @staticmethod
    def _balanced_until(tokens) -> bool:
        # tokens[0] == "(" must close exactly at tokens[-3]
        depth = 0
        for i, (t, _) in enumerate(tokens[:-2]):
            if t == "(":
                depth += 1
            elif t == ")":
                depth -= 1
                if depth == 0:
                    return i == len(tokens) - 3
        return False

    def parse_poly(self) -> IntPoly:
        out = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_term(self) -> IntPoly:
        out = None
        while True:
            tok = self.peek()
            if tok == "(":
                self.next()
                p = self.parse_poly()
                if self.next()[0] != ")":
                    raise FactorParseError("unbalanced parenthesis")
                p = self._maybe_power(p)
            elif tok == "q":
                self.next()
                p = self._maybe_power(IntPoly([0, 1]))
            elif tok == "int":
                p = IntPoly([self.next()[1]])
                p = self._maybe_power(p)
            elif tok == "*":
                self.next()
                continue
            else:
                break
            out = p if out is None else out * p
        if out is None:
            raise FactorParseError("empty term")
        return out

    def _maybe_power(self, p: IntPoly) -> IntPoly:
        if self.peek() == "^":
            self.next()
            tok, val = self.next()
            if tok != "int":
                raise FactorParseError("exponent must be an integer")
            return p ** val
        return p


def parse_torus_factors(s: str) -> list[IntPoly]:
    """Cyclic factors (as polynomials in q) of a torus structure string."""
    return _FactorParser(s).parse_cyclic_factors()


def torus_order_poly_from_string(s: str) -> IntPoly:
    out = IntPoly([1])
    for f in parse_torus_factors(s):
        out = out * f
    return out


def elementary_divisors(orders) -> dict[int, list[int]]:
    """Prime -> sorted prime-power exponents of a direct sum of Z_n's.

    Two abelian groups given by cyclic factor lists are isomorphic exactly
    when these maps coincide.
    """
    out: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.setdefault(p, []).append(e)
            p += 1
        if n > 1:
            out.setdefault(n, []).append(1)
    for p in out:
        out[p].sort()
    return out


# -- concrete torus arithmetic over F_{q^k} ----------------------------------

class ConcreteTorus:
    """Exponent arithmetic for torus coordinates over the field F_{q^k}.

    Entries are exponents of a fixed generator g of the multiplicative
    group, i.e. integers modulo q^k - 1.
    """

    def __init__(self, group: TitsGroup, q: int, k: int = 2):
        if q % 2 == 0:
            raise ValueError("q must be odd here")
        self.group = group
        self.q = q
        self.k = k
        self.modulus = q**k - 1
        self.rank = group.rank

    def minus_one(self) -> int:
        return self.modulus // 2

    def symbol(self, name: str) -> int:
        """Exponent of a named standard element of F_{q^k}^*."""
        q, m = self.q, self.modulus
        if name == "one":
            return 0
        if name == "minus_one":
            return m // 2
        if name == "alpha":  # alpha^2 = -1
            if m % 4:
                raise ValueError("no fourth root of unity available")
            return m // 4
        if name == "beta_norm":  # beta^{q+1} = -1
            return (q - 1) // 2
        if name == "delta_frob":  # delta^{q-1} = -1
            return (q + 1) // 2
        if name == "beta_sign":  # beta^{q-1} = (-1)^{(q+1)/2}
            return (q + 1) // 2 if q % 4 == 1 else q + 1
        raise ValueError(f"unknown symbol {name!r}")

    def vector(self, entries) -> np.ndarray:
        """Coordinate vector from entry strings like '-a', 'a*b', 'd^9', '1'."""
        out = []
        for ent in entries:
            out.append(self._entry(str(ent)))
        return np.array(out, dtype=object)

    _NAMES = {"a": "alpha", "b": "beta_norm", "d": "delta_frob", "s": "beta_sign"}

    def _entry(self, ent: str) -> int:
        e = 0
        s = ent.replace(" ", "")
        if s.startswith("-"):
            e = self.minus_one()
            s = s[1:]
        for part in s.split("*"):
            if part == "1":
                continue
            if "^" in part:
                name,k = part.split("^")
                e += self.symbol(self._NAMES[name]) * int(k)
            else:
                e += self.symbol(self._NAMES[part])
        return e % self.modulus

    def h_mask_vector(self, mask: int) -> np.ndarray:
        half = self.minus_one()
        return np.array(
            [half if (mask >> i) & 1 else 0 for i in range(self.rank)],
            dtype=object,
        )


class MixedElement:
    """Element H * lift(w) with H a concrete torus coordinate vector.

    Sign-vector parts of engine elements are folded into the torus vector
    (a sign is the exponent (q^k-1)/2), so equality is plain equality of
    (vector, w) up to the central identification in the adjoint case.
    """

    __slots__ = ("ctx", "v", "w", "_wb")

    def __init__(self, ctx: ConcreteTorus, v: np.ndarray, w: np.ndarray):
        self.ctx = ctx
        self.v = np.array([int(x) % ctx.modulus for x in v], dtype=object)
        self.w = w
        self._wb = w.tobytes()

    @classmethod
    def from_tits(cls, ctx: ConcreteTorus, e: TitsElement) -> "MixedElement":
        return cls(ctx, ctx.h_mask_vector(e.h), e.w)

    @classmethod
    def from_torus(cls, ctx: ConcreteTorus, v) -> "MixedElement":
        return cls(ctx, np.array(v, dtype=object), ctx.group.rs.identity_matrix())

    def __mul__(self, other: "MixedElement") -> "MixedElement":
        ctx = self.ctx
        lift_prod = ctx.group.mul(
            TitsElement(ctx.group, 0, self.w), TitsElement(ctx.group, 0, other.w)
        )
        v = (self.v + self.w @ other.v) % ctx.modulus
        v = (v + ctx.h_mask_vector(lift_prod.h)) % ctx.modulus
        return MixedElement(ctx, v, lift_prod.w)

    def inv(self) -> "MixedElement":
        ctx = self.ctx
        lift_inv = ctx.group.inv(TitsElement(ctx.group, 0, self.w))
        winv = lift_inv.w
        v = (-(winv @ self.v)) % ctx.modulus
        v = (v + ctx.h_mask_vector(lift_inv.h)) % ctx.modulus
        return MixedElement(ctx, v, winv)

    def __pow__(self, m: int) -> "MixedElement":
        if m < 0:
            return self.inv() ** (-m)
        out = MixedElement.from_torus(self.ctx, [0] * self.ctx.rank)
        base = self
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out

    def frobenius(self) -> "MixedElement":
        """Image under sigma: q-th power on torus coordinates, fixes lifts."""
        return MixedElement(self.ctx, (self.v * self.ctx.q) % self.ctx.modulus, self.w)

    def conj_by(self, other: "MixedElement") -> "MixedElement":
        """self^other = other * self * other^{-1}."""
        return other * self * other.inv()

    def comm(self, other: "MixedElement") -> "MixedElement":
        """[self, other] = self other self^{-1} other^{-1}."""
        return self * other * self.inv() * other.inv()

    def _trivial_vector(self, v, isogeny: str) -> bool:
        ctx = self.ctx
        if all(x == 0 for x in v):
            return True
        if isogeny == "ad" and ctx.group.center_mask:
            zv = ctx.h_mask_vector(ctx.group.center_mask)
            return all(int(x) == int(z) for x, z in zip(v, zv))
        return False

    def is_identity(self, isogeny: str = "sc") -> bool:
        return (
            np.array_equal(self.w, self.ctx.group.rs.identity_matrix())
            and self._trivial_vector(self.v, isogeny)
        )

    def eq(self, other: "MixedElement", isogeny: str = "sc") -> bool:
        if self._wb != other._wb:
            return False
        return self._trivial_vector(
            (self.v - other.v) % self.ctx.modulus, isogeny
        )

    def __repr__(self):
        return f"MixedElement(v={list(self.v)}, wword={self.ctx.group.rs.reduced_word(self.w)})"


def in_twisted_normalizer(
    twist: TitsElement, y, isogeny: str = "sc"
) -> bool:
    """Membership of y in the normalizer fixed by sigma * twist.

    For y in the n_r-generated group the criterion is [twist, y] = 1.  For a
    mixed element y = H u the criterion is H = H^{sigma n}[n, u]; both sides
    are evaluated exactly.
    """
    g = twist.group
    if isinstance(y, TitsElement):
        return g.comm(twist, y).is_identity(isogeny)
    ctx = y.ctx
    u = TitsElement(g, 0, y.w)
    c = g.comm(twist, u)
    if not np.array_equal(c.w, g.rs.identity_matrix()):
        return False
    # H^{sigma n}: Frobenius then conjugation by the twist
    h_sn = (twist.w @ (y.v * ctx.q)) % ctx.modulus
    rhs = (h_sn + ctx.h_mask_vector(c.h)) % ctx.modulus
    zero = MixedElement.from_torus(ctx, [0] * ctx.rank)
    return zero._trivial_vector((y.v - rhs) % ctx.modulus, isogeny)
