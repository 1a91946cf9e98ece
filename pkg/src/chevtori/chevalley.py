"""Structure constants and the adjoint-representation oracle.

Signs of the structure constants N_{r,s} are normalized to +1 at every
extraspecial pair; all remaining constants are then forced.  The adjoint
representation realizes the groups generated by the elements

    n_r = x_r(1) x_{-r}(-1) x_r(1),      h_r(-1) = n_r^2

as exact integer matrices over the Chevalley basis {e_r, h_i}.  These
matrices are the ground truth the fast normal-form engine is validated
against.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .rootsystem import RootSystem, root_system

LIE_DIM = {"E6": 78, "E7": 133, "E8": 248}


class StructureConstants:
    """Table of N_{r,s} over signed root indices, plus extraspecial pairs."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.extraspecial = self._extraspecial_pairs()
        self._npos = self._positive_table()

    def _extraspecial_pairs(self) -> list[tuple[int, int]]:
        rs = self.rs
        pairs = []
        for t in range(rs.rank + 1, rs.num_positive + 1):
            tv = rs.root(t)
            for r in range(1, rs.num_positive + 1):
                sv = tv - rs.root(r)
                if not rs.is_root(sv):
                    continue
                s = rs.index(sv)
                if s > r:
                    pairs.append((r, s))
                    break
            else:
                raise AssertionError(f"no special pair sums to root {t}")
        return sorted(pairs)

    def _positive_table(self) -> dict[tuple[int, int], int]:
        """N_{r,s} for positive r, s with r+s a root, by Jacobi recursion.

        With (r1, s1) extraspecial for t = r+s and N_{r1,s1} = 1,

            N_{r,s} = N_{r1,r-r1} N_{r-r1,s} + N_{r1,s-r1} N_{r,s-r1},

        where a term vanishes when the difference is not a root.  Both
        referenced sums have smaller height than t, so filling the table in
        index order terminates.
        """
        rs = self.rs
        table: dict[tuple[int, int], int] = {}

        def get(a: int, b: int) -> int:
            if (a, b) in table:
                return table[(a, b)]
            return -table[(b, a)]

        extraspecial_of = {}
        for r1, s1 in self.extraspecial:
            extraspecial_of[rs.index(rs.root(r1) + rs.root(s1))] = (r1, s1)

        for t in range(rs.rank + 1, rs.num_positive + 1):
            r1, s1 = extraspecial_of[t]
            table[(r1, s1)] = 1
            tv = rs.root(t)
            for r in range(1, rs.num_positive + 1):
                sv = tv - rs.root(r)
                if not rs.is_root(sv):
                    continue
                s = rs.index(sv)
                if s < r or (r, s) == (r1, s1):
                    continue
                if r == r1:
                    continue
                value = 0
                d1 = rs.root(r) - rs.root(r1)
                if rs.is_root(d1):
                    value += get(r1, rs.index(d1)) * get(rs.index(d1), s)
                d2 = sv - rs.root(r1)
                if rs.is_root(d2):
                    value += get(r1, rs.index(d2)) * get(r, rs.index(d2))
                if value not in (-1, 1):
                    raise AssertionError(
                        f"inconsistent recursion at ({r},{s}) -> {t}: {value}"
                    )
                table[(r, s)] = value
        return table

    def n(self, a: int, b: int) -> int:
        """N_{a,b} for signed root indices; 0 when a+b is not a root."""
        rs = self.rs
        sv = rs.root(a) + rs.root(b)
        if not rs.is_root(sv):
            return 0
        if a > 0 and b > 0:
            return self._pos(a, b)
        if a < 0 and b < 0:
            return -self._pos(-a, -b)
        # Mixed signs: rotate the zero-sum triple (a, b, c), c = -a-b, which
        # preserves the constant, onto a same-sign pair.
        c = -rs.index(sv)
        if a > 0:  # b < 0
            if c < 0:
                return -self._pos(-b, -c)
            return self._pos(c, a)
        # a < 0 < b
        if c < 0:
            return -self._pos(-c, -a)
        return self._pos(b, c)

    def _pos(self, r: int, s: int) -> int:
        if (r, s) in self._npos:
            return self._npos[(r, s)]
        return -self._npos[(s, r)]

    def extraspecial_triples(self) -> str:
        """The extraspecial list in the angle-bracket table format."""
        return ", ".join(f"⟨{r}, {s}, 1⟩" for r, s in self.extraspecial)

    def export_table(self) -> dict[str, int]:
        return {f"{r},{s}": v for (r, s), v in sorted(self._npos.items())}


class AdjointOracle:
    """Exact integer matrices for n_r, h-parts and torus terms.

    Basis order: e_r for positive roots in index order, then e_{-r}, then
    the Cartan elements h_1..h_l.
    """

    def __init__(self, constants: StructureConstants):
        self.constants = constants
        self.rs = constants.rs
        rs = self.rs
        self.dim = 2 * rs.num_positive + rs.rank
        self._n_cache: dict[int, np.ndarray] = {}

    def basis_index(self, a: int) -> int:
        return self.rs.point_of(a)

    def ad(self, a: int) -> np.ndarray:
        """Matrix of ad(e_a) on the Chevalley basis."""
        rs = self.rs
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        av = rs.root(a)
        for b in self._signed_indices():
            if b == -a:
                # [e_a, e_{-a}] = h_a, with coroot coordinates of a.
                for i in range(rs.rank):
                    m[2 * rs.num_positive + i, self.basis_index(b)] = av[i]
                continue
            c = self.constants.n(a, b)
            if c:
                m[self.basis_index(rs.index(av + rs.root(b))),
                  self.basis_index(b)] = c
        pair = rs.cartan @ av
        for i in range(rs.rank):
            # [e_a, h_i] = -<a, r_i> e_a
            m[self.basis_index(a), 2 * rs.num_positive + i] = -pair[i]
        return m

    def _signed_indices(self):
        n = self.rs.num_positive
        return list(range(1, n + 1)) + list(range(-1, -n - 1, -1))

    def x(self, a: int, sign: int) -> np.ndarray:
        """Root element x_a(sign) = exp(sign * ad e_a), sign = +-1."""
        ad = self.ad(a)
        sq = ad @ ad
        if np.any(sq % 2):
            raise AssertionError("ad(e_a)^2 not even: structure constants bug")
        return np.eye(self.dim, dtype=np.int64) + sign * ad + sq // 2

    def n_r(self, r: int) -> np.ndarray:
        """Matrix of n_r(1) = x_r(1) x_{-r}(-1) x_r(1), r positive."""
        if r not in self._n_cache:
            xr = self.x(r, 1)
            self._n_cache[r] = xr @ self.x(-r, -1) @ xr
        return self._n_cache[r]

    def n_r_inv(self, r: int) -> np.ndarray:
        m = self.n_r(r)
        return m @ m @ m  # n_r has order 4 (or 2): n_r^2 = h_r(-1) is 2-torsion

    def h_vec(self, bits) -> np.ndarray:
        """Matrix of prod_i h_i(-1)^{bits[i]}: diagonal signs on root spaces."""
        rs = self.rs
        diag = np.ones(self.dim, dtype=np.int64)
        v = np.array([int(b) for b in bits], dtype=np.int64)
        for b in self._signed_indices():
            if (int(rs.root(b) @ rs.cartan @ v)) % 2:
                diag[self.basis_index(b)] = -1
        return np.diag(diag)

    def lift_word(self, word) -> np.ndarray:
        """Product of n_i matrices along a word of positive root indices."""
        m = np.eye(self.dim, dtype=np.int64)
        for i in word:
            m = m @ self.n_r(int(i))
        return m

    def image_sign(self, m: np.ndarray, r: int) -> tuple[int, int]:
        """For a monomial matrix column e_r -> sign * e_s, return (s, sign)."""
        col = m[:, self.basis_index(r)]
        nz = np.nonzero(col)[0]
        if len(nz) != 1 or abs(col[nz[0]]) != 1:
            raise AssertionError(f"e_{r} image is not signed-monomial")
        row = int(nz[0])
        n = self.rs.num_positive
        s = row + 1 if row < n else -(row - n + 1)
        return s, int(col[nz[0]])


class EtaTable:
    """Signs in n_s n_r n_s^{-1} = h_{w_s(r)}(eta) n_{w_s(r)}, s simple.

    Extracted from the adjoint action: eta_{s,r} is the coefficient of
    e_{w_s(r)} in Ad(n_s) e_r, which pins the same sign in every isogeny.
    """

    def __init__(self, oracle: AdjointOracle):
        self.rs = oracle.rs
        rs = self.rs
        self.table: dict[tuple[int, int], int] = {}
        for s in range(1, rs.rank + 1):
            ns = oracle.n_r(s)
            for r in self._all_signed():
                image, sign = oracle.image_sign(ns, r)
                if image != rs.reflect(s, r):
                    raise AssertionError(
                        f"Ad(n_{s}) e_{r} landed on e_{image}, "
                        f"expected e_{rs.reflect(s, r)}"
                    )
                self.table[(s, r)] = sign

    def _all_signed(self):
        n = self.rs.num_positive
        return list(range(1, n + 1)) + list(range(-1, -n - 1, -1))

    def eta(self, s: int, r: int) -> int:
        return self.table[(s, r)]

    def export_table(self) -> dict[str, int]:
        return {f"{s},{r}": v for (s, r), v in sorted(self.table.items())}


@lru_cache(maxsize=None)
def structure_constants(kind: str) -> StructureConstants:
    return StructureConstants(root_system(kind))


@lru_cache(maxsize=None)
def adjoint_oracle(kind: str) -> AdjointOracle:
    return AdjointOracle(structure_constants(kind))


@lru_cache(maxsize=None)
def eta_table(kind: str) -> EtaTable:
    return EtaTable(adjoint_oracle(kind))
