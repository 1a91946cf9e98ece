"""Normal-form engine for the groups generated by the elements n_r.

Elements are pairs (h, w): a sign vector h over F2^l standing for a product
of the involutions h_i = h_{r_i}(-1), times the canonical lift of a Weyl
element w.  The canonical lift is the product of generators n_i along any
reduced word of w; braid relations hold exactly for the n_i, so the lift is
word-independent.  Multiplication folds the right factor's reduced word
letter by letter:

    lift(w) n_j = lift(w w_j)                       if l(w w_j) > l(w)
    lift(w) n_j = h-part(w(r_j)) lift(w w_j)        otherwise
    lift(w) h v lift(w)^-1 = h (w v mod 2)

Lifts of reflections in non-simple roots are produced by the recursion
n_r = h_r(eta) n_s n_r' n_s^{-1} with r = w_s(r'), where the sign eta is
read off the adjoint action; the result agrees with x_r(1)x_{-r}(-1)x_r(1).

Isogeny handling: normal forms always carry the full sign vector (the
simply-connected picture).  Equality, identity and order tests take a mode
argument: "sc" is exact, "ad" works modulo the central sign vector (only
E7 has one meeting this subgroup), "p2" ignores sign vectors entirely, as
in characteristic 2.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .chevalley import eta_table
from .rootsystem import root_system

ISOGENIES = ("sc", "ad", "p2")

# Central involution of the simply-connected E7 torus, as an h-mask.
_E7_CENTER_BITS = (2, 5, 7)


def _mask(bits) -> int:
    m = 0
    for i, b in enumerate(bits):
        if int(b) % 2:
            m |= 1 << i
    return m


class TitsElement:
    """Immutable normal form h * lift(w)."""

    __slots__ = ("group", "h", "w", "_wb")

    def __init__(self, group: "TitsGroup", h: int, w: np.ndarray):
        self.group = group
        self.h = h
        self.w = w
        self._wb = w.tobytes()

    def __mul__(self, other: "TitsElement") -> "TitsElement":
        return self.group.mul(self, other)

    def __pow__(self, m: int) -> "TitsElement":
        return self.group.power(self, m)

    def inv(self) -> "TitsElement":
        return self.group.inv(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TitsElement)
            and self.h == other.h
            and self._wb == other._wb
        )

    def __hash__(self):
        return hash((self.h, self._wb))

    def is_identity(self, isogeny: str = "sc") -> bool:
        return self.group.is_identity(self, isogeny)

    def order(self, isogeny: str = "sc") -> int:
        return self.group.order(self, isogeny)

    def h_bits(self) -> tuple[int, ...]:
        return tuple(
            (self.h >> i) & 1 for i in range(self.group.rs.rank)
        )

    def __repr__(self):
        return f"<{self.group.rs.kind} {format_element(self)}>"


class TitsGroup:
    """Engine for one root system; elements are created through it."""

    def __init__(self, kind: str):
        self.rs = root_system(kind)
        self.eta = eta_table(kind)
        self.rank = self.rs.rank
        self.center_mask = _mask(
            [1 if i + 1 in _E7_CENTER_BITS else 0 for i in range(self.rank)]
        ) if kind == "E7" else 0
        self._ident = np.eye(self.rank, dtype=np.int64)
        self._ident.flags.writeable = False
        self.identity = TitsElement(self, 0, self._ident)
        self._n_cache: dict[int, TitsElement] = {}

    # -- constructors ------------------------------------------------------

    def h_element(self, mask_or_bits) -> TitsElement:
        h = mask_or_bits if isinstance(mask_or_bits, int) else _mask(mask_or_bits)
        return TitsElement(self, h, self._ident)

    def h_of_root(self, r: int) -> int:
        """h-mask of h_r(-1): parity of the (co)root coordinates of r."""
        return _mask(self.rs.root(r) % 2)

    def n_simple(self, i: int) -> TitsElement:
        if not 1 <= i <= self.rank:
            raise ValueError(f"n_{i} is not a simple generator")
        w = self.rs.reflection_matrix(i)
        w.flags.writeable = False
        return TitsElement(self, 0, w)

    def n_of_root(self, r: int) -> TitsElement:
        """Canonical lift n_r(1) of the reflection in positive root r."""
        if r < 1 or r > self.rs.num_positive:
            raise ValueError(f"no positive root {r}")
        if r in self._n_cache:
            return self._n_cache[r]
        if r <= self.rank:
            elt = self.n_simple(r)
        else:
            rs = self.rs
            for s in range(1, self.rank + 1):
                if rs.pairing(r, s) == 1:
                    break
            else:
                raise AssertionError(f"no descent for root {r}")
            rp = rs.reflect(s, r)
            ns = self.n_simple(s)
            elt = self.mul(self.mul(ns, self.n_of_root(rp)), self.inv(ns))
            if self.eta.eta(s, rp) == -1:
                elt = TitsElement(self, elt.h ^ self.h_of_root(r), elt.w)
        self._n_cache[r] = elt
        return elt

    def from_word(self, h_roots, n_roots) -> TitsElement:
        """Product of listed h_r factors then n_r factors, normalized."""
        e = self.h_element(0)
        for r in h_roots:
            e = TitsElement(self, e.h ^ self.h_of_root(int(r)), e.w)
        for r in n_roots:
            e = self.mul(e, self.n_of_root(int(r)))
        return e

    def central_lift(self) -> TitsElement:
        """The lift n_0 of the central involution w_0 (E7 and E8 only)."""
        kind = self.rs.kind
        if kind == "E7":
            return self.from_word([], [1, 2, 5, 7, 37, 55, 61])
        if kind == "E8":
            return self.from_word([2, 5, 7], [1, 2, 5, 7, 44, 71, 89, 120])
        raise ValueError(f"{kind} has no central Weyl involution")

    # -- group operations ---------------------------------------------------

    def _conj_mask(self, w: np.ndarray, h: int) -> int:
        """Mask of lift(w) h lift(w)^{-1}."""
        if h == 0:
            return 0
        v = np.fromiter(
            ((h >> i) & 1 for i in range(self.rank)), dtype=np.int64
        )
        return _mask((w @ v) % 2)

    def mul(self, a: TitsElement, b: TitsElement) -> TitsElement:
        if a.group is not b.group:
            raise ValueError("elements from different groups")
        rs = self.rs
        h = a.h ^ self._conj_mask(a.w, b.h)
        w = a.w
        for j in rs.reduced_word(b.w):
            col = w[:, j - 1]
            wnext = w @ rs.reflection_matrix(j)
            if col.sum() < 0:
                h ^= _mask(col % 2)
            w = wnext
        w = w.copy()
        w.flags.writeable = False
        return TitsElement(self, h, w)

    def inv(self, a: TitsElement) -> TitsElement:
        rs = self.rs
        winv = self._ident
        for j in reversed(rs.reduced_word(a.w)):
            winv = winv @ rs.reflection_matrix(j)
        c = self.mul(TitsElement(self, 0, winv), a)
        assert np.array_equal(c.w, self._ident)
        return TitsElement(self, c.h, winv)

    def power(self, a: TitsElement, m: int) -> TitsElement:
        if m < 0:
            return self.power(self.inv(a), -m)
        result = self.identity
        base = a
        while m:
            if m & 1:
                result = self.mul(result, base)
            base = self.mul(base, base) if m > 1 else base
            m >>= 1
        return result

    def conj(self, a: TitsElement, b: TitsElement) -> TitsElement:
        """a^b = b a b^{-1}."""
        return self.mul(self.mul(b, a), self.inv(b))

    def comm(self, a: TitsElement, b: TitsElement) -> TitsElement:
        """[a, b] = a b a^{-1} b^{-1} (equivalently b^a b^{-1})."""
        return self.mul(self.conj(b, a), self.inv(b))

    # -- isogeny-aware tests -------------------------------------------------

    def _h_trivial(self, h: int, isogeny: str) -> bool:
        if isogeny == "sc":
            return h == 0
        if isogeny == "ad":
            return h == 0 or h == self.center_mask
        if isogeny == "p2":
            return True
        raise ValueError(f"unknown isogeny {isogeny!r}")

    def is_identity(self, a: TitsElement, isogeny: str = "sc") -> bool:
        return np.array_equal(a.w, self._ident) and self._h_trivial(a.h, isogeny)

    def eq(self, a: TitsElement, b: TitsElement, isogeny: str = "sc") -> bool:
        return a._wb == b._wb and self._h_trivial(a.h ^ b.h, isogeny)

    def order(self, a: TitsElement, isogeny: str = "sc") -> int:
        """Order of a (in the chosen quotient); always |pi(a)| or 2|pi(a)|."""
        m = self.rs.matrix_order(a.w)
        p = self.power(a, m)
        if self._h_trivial(p.h, isogeny):
            return m
        if not self._h_trivial(self.power(p, 2).h, isogeny):
            raise AssertionError("element order exceeds 2|pi(a)|")
        return 2 * m

    def pi_word(self, a: TitsElement) -> list[int]:
        return self.rs.reduced_word(a.w)


def lift_order_check(group: TitsGroup, w_word, lift: TitsElement,
                     isogeny: str = "sc") -> tuple[int, bool]:
    """Order of a claimed lift and whether it matches the element's order.

    The lift must project onto the Weyl element of w_word.
    """
    w = group.rs.weyl_word(list(w_word))
    if not np.array_equal(lift.w, w):
        raise ValueError("lift does not project onto the given word")
    order = group.order(lift, isogeny)
    return order, order == group.rs.matrix_order(w)


def format_element(e: TitsElement) -> str:
    """Canonical rendering: h factors by index, then the reduced word."""
    parts = [f"h_{i + 1}" for i in range(e.group.rank) if (e.h >> i) & 1]
    parts += [f"n_{j}" for j in e.group.pi_word(e)]
    return "".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def tits_group(kind: str) -> TitsGroup:
    return TitsGroup(kind)
