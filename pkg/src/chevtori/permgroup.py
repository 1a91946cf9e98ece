"""Deterministic Schreier-Sims over permutations of finite point sets.

Permutations are numpy index arrays p acting as x -> p[x], composed by
(p * q)(x) = p[q[x]].  The construction processes every Schreier generator
at every level, so computed orders are exact without randomization.
"""

from __future__ import annotations

import numpy as np


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return p[q]


def inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def is_identity(p: np.ndarray) -> bool:
    return bool(np.all(p == np.arange(len(p))))


class PermGroup:
    """Permutation group with an exact base and strong generating set.

    Level k holds the strong generators fixing the first k base points;
    a generator adjoined with drop level j is shared by levels up to j.
    """

    def __init__(self, generators, degree: int | None = None):
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("need degree for an empty generating set")
            degree = len(gens[0])
        self.degree = degree
        self.base: list[int] = []
        self.sgens: list[list[np.ndarray]] = []
        self.transversals: list[dict[int, np.ndarray]] = []
        gens = [g for g in gens if not is_identity(g)]
        if gens:
            self.base.append(self._moved_point(gens[0]))
            self.sgens.append(list(gens))
            self.transversals.append({})
            self._verify_level(0)

    def _moved_point(self, g: np.ndarray) -> int:
        return int(np.nonzero(g != np.arange(self.degree))[0][0])

    def _build_transversal(self, k: int):
        beta = self.base[k]
        tr = {beta: np.arange(self.degree)}
        frontier = [beta]
        while frontier:
            nxt = []
            for x in frontier:
                ux = tr[x]
                for g in self.sgens[k]:
                    y = int(g[x])
                    if y not in tr:
                        tr[y] = compose(g, ux)
                        nxt.append(y)
            frontier = nxt
        self.transversals[k] = tr

    def _sift_from(self, g: np.ndarray, start: int):
        """Sift through levels >= start; return (residue | None, drop_level)."""
        for k in range(start, len(self.base)):
            x = int(g[self.base[k]])
            if x not in self.transversals[k]:
                return g, k
            g = compose(inverse(self.transversals[k][x]), g)
            if is_identity(g):
                return None, k
        return (None, len(self.base)) if is_identity(g) else (g, len(self.base))

    def _verify_level(self, k: int):
        """Establish that the stabilizer of base[k] is the next level's group."""
        self._build_transversal(k)
        points = list(self.transversals[k].keys())
        idx_point = 0
        while idx_point < len(points):
            x = points[idx_point]
            ux = self.transversals[k][x]
            for g in self.sgens[k]:
                schreier = compose(inverse(self.transversals[k][int(g[x])]),
                                   compose(g, ux))
                if is_identity(schreier):
                    continue
                residue, j = self._sift_from(schreier, k + 1)
                if residue is None:
                    continue
                if j == len(self.base):
                    self.base.append(self._moved_point(residue))
                    self.sgens.append([])
                    self.transversals.append({})
                for t in range(k + 1, j + 1):
                    self.sgens[t].append(residue)
                for t in range(j, k, -1):
                    self._verify_level(t)
            idx_point += 1

    # -- queries -------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for tr in self.transversals:
            n *= len(tr)
        return n

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=np.int64)
        if is_identity(p):
            return True
        residue, _ = self._sift_from(p, 0)
        return residue is None
