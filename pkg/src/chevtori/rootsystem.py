"""Root systems of types E6, E7, E8 with a fixed total ordering of positive roots.

Roots are stored as integer coordinate vectors over the simple roots
r_1..r_l, numbered as in the Bourbaki E-series diagrams: the chain is
r_1 - r_3 - r_4 - ... - r_l with r_2 attached to r_4.  Positive roots are
ordered by height, ties broken descending-lexicographically on the
coordinate vectors (r precedes s when the first nonzero coordinate of
r - s is positive).  Root indices are 1-based; negative roots carry the
negated index.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

KINDS = ("E6", "E7", "E8")

# Edges of the Dynkin diagram per type (Bourbaki numbering).
_EDGES = {
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}

_NUM_POSITIVE = {"E6": 36, "E7": 63, "E8": 120}


def cartan_matrix(kind: str) -> np.ndarray:
    l = int(kind[1])
    c = 2 * np.eye(l, dtype=np.int64)
    for i, j in _EDGES[kind]:
        c[i - 1, j - 1] = -1
        c[j - 1, i - 1] = -1
    return c


class RootSystem:
    """Immutable root-system data for one of the types E6, E7, E8."""

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unsupported type {kind!r}")
        self.kind = kind
        self.rank = int(kind[1])
        self.cartan = cartan_matrix(kind)
        self.pos_roots = self._generate_positive()
        self.num_positive = len(self.pos_roots)
        if self.num_positive != _NUM_POSITIVE[kind]:
            raise AssertionError(
                f"{kind}: generated {self.num_positive} positive roots"
            )
        self._index = {}
        for i, r in enumerate(self.pos_roots, start=1):
            self._index[tuple(int(x) for x in r)] = i
            self._index[tuple(-int(x) for x in r)] = -i
        self.pos_roots.flags.writeable = False
        self.cartan.flags.writeable = False

    def _generate_positive(self) -> np.ndarray:
        l = self.rank
        c = self.cartan
        found = {tuple(row) for row in np.eye(l, dtype=np.int64)}
        frontier = list(found)
        while frontier:
            new = []
            for r in frontier:
                rv = np.array(r, dtype=np.int64)
                pair = c @ rv
                for i in range(l):
                    # Simply laced: r + r_i is a root iff <r, r_i> = -1.
                    if pair[i] == -1:
                        s = tuple(rv + np.eye(l, dtype=np.int64)[i])
                        if s not in found:
                            found.add(s)
                            new.append(s)
            frontier = new
        # Within a height level the tie-break is descending lexicographic on
        # coordinates; this is what reproduces the published index tables
        # (e.g. r_16 = r_2+r_4+r_5 in E7, r_69 before r_74 in E8).
        ordered = sorted(found, key=lambda t: (sum(t), tuple(-x for x in t)))
        return np.array(ordered, dtype=np.int64)

    # -- basic lookups ----------------------------------------------------

    def root(self, i: int) -> np.ndarray:
        """Coordinates of root i (i may be negative)."""
        if i > 0:
            return self.pos_roots[i - 1]
        return -self.pos_roots[-i - 1]

    def index(self, coords) -> int:
        """Signed index of a root given by its coordinate vector."""
        key = tuple(int(x) for x in coords)
        try:
            return self._index[key]
        except KeyError:
            raise ValueError(f"{key} is not a root of {self.kind}") from None

    def is_root(self, coords) -> bool:
        return tuple(int(x) for x in coords) in self._index

    def height(self, i: int) -> int:
        return int(self.root(i).sum())

    def pairing(self, i: int, j: int) -> int:
        """Inner product <r_i, r_j> (equals the coroot pairing here)."""
        return int(self.root(i) @ self.cartan @ self.root(j))

    # -- reflections and Weyl elements ------------------------------------

    def reflect(self, s: int, r: int) -> int:
        """Index of w_s(r), the reflection of root r in root s."""
        rv = self.root(r)
        sv = self.root(s)
        return self.index(rv - int(rv @ self.cartan @ sv) * sv)

    @lru_cache(maxsize=None)
    def _reflection_matrix_bytes(self, t: int) -> bytes:
        tv = self.root(t)
        m = np.eye(self.rank, dtype=np.int64) - np.outer(tv, self.cartan @ tv)
        return m.tobytes()

    def reflection_matrix(self, t: int) -> np.ndarray:
        """Matrix of w_t in the simple-root basis; column j is w_t(r_j)."""
        m = np.frombuffer(
            self._reflection_matrix_bytes(t), dtype=np.int64
        ).reshape(self.rank, self.rank)
        return m.copy()

    def weyl_word(self, word) -> np.ndarray:
        """Matrix of the product w_{i1} w_{i2} ... (leftmost applied last)."""
        m = np.eye(self.rank, dtype=np.int64)
        for i in word:
            m = m @ self.reflection_matrix(int(i))
        return m

    def identity_matrix(self) -> np.ndarray:
        return np.eye(self.rank, dtype=np.int64)

    def apply(self, m: np.ndarray, i: int) -> int:
        """Index of the image of root i under the Weyl element m."""
        return self.index(m @ self.root(i))

    def length(self, m: np.ndarray) -> int:
        """Coxeter length: the number of positive roots sent to negative."""
        images = m @ self.pos_roots.T
        return int(np.count_nonzero(images.sum(axis=0) < 0))

    def right_descent(self, m: np.ndarray) -> int:
        """Smallest simple i with l(m w_i) < l(m), or 0 if m is the identity.

        l(m w_i) < l(m) exactly when m(r_i) is negative.
        """
        heights = m.sum(axis=0)
        for i in range(self.rank):
            if heights[i] < 0:
                return i + 1
        return 0

    def reduced_word(self, m: np.ndarray) -> list[int]:
        """Deterministic reduced word, built by repeated smallest descent.

        The word is accumulated from the right: if i is a descent of m then
        m = m' w_i with l(m') = l(m) - 1.
        """
        word: list[int] = []
        m = m.copy()
        while True:
            i = self.right_descent(m)
            if i == 0:
                break
            word.append(i)
            m = m @ self.reflection_matrix(i)
        word.reverse()
        if word:
            assert self.length(self.weyl_word(word)) == len(word)
        return word

    def matrix_order(self, m: np.ndarray) -> int:
        p = m
        order = 1
        ident = np.eye(self.rank, dtype=np.int64)
        while not np.array_equal(p, ident):
            p = p @ m
            order += 1
            if order > 2 * self.num_positive:
                raise AssertionError("runaway order computation")
        return order

    # -- action on the set of all roots -----------------------------------

    def point_of(self, i: int) -> int:
        """0-based permutation point for signed root index i."""
        return i - 1 if i > 0 else self.num_positive - i - 1

    def root_permutation(self, m: np.ndarray) -> np.ndarray:
        """Permutation of all 2N roots induced by a Weyl element."""
        n = self.num_positive
        perm = np.empty(2 * n, dtype=np.int64)
        images = m @ self.pos_roots.T
        for j in range(n):
            img = self.index(images[:, j])
            perm[j] = self.point_of(img)
            perm[n + j] = self.point_of(-img)
        return perm

    def export_table(self) -> dict[str, list[int]]:
        """Positive-root index table, for JSON export and external diffing."""
        return {
            str(i): [int(x) for x in self.pos_roots[i - 1]]
            for i in range(1, self.num_positive + 1)
        }


@lru_cache(maxsize=None)
def root_system(kind: str) -> RootSystem:
    return RootSystem(kind)
