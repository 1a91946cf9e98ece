"""Conjugacy-class utilities for Weyl elements: invariants, budgeted
witness search, class sizes, and orders of subgroups of W."""

from __future__ import annotations

import random

import numpy as np

from .permgroup import PermGroup, compose, inverse
from .rootsystem import RootSystem
from .torus import char_det_poly


def class_invariants(rs: RootSystem, m: np.ndarray) -> tuple:
    """(order, characteristic data, cycle type on roots): conjugation invariant."""
    perm = rs.root_permutation(m)
    seen = np.zeros(len(perm), dtype=bool)
    cycles = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            ln += 1
        cycles.append(ln)
    return (
        rs.matrix_order(m),
        char_det_poly(m).coeffs,
        tuple(sorted(cycles)),
    )


class WeylGroup:
    """W as a permutation group on roots, with uniform random sampling."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.simple_perms = [
            rs.root_permutation(rs.reflection_matrix(i))
            for i in range(1, rs.rank + 1)
        ]
        self.perm_group = PermGroup(self.simple_perms)

    def order(self) -> int:
        return self.perm_group.order()

    def random_element(self, rng: random.Random) -> np.ndarray:
        """Uniformly random permutation, via the stored transversals."""
        g = np.arange(self.perm_group.degree)
        for tr in self.perm_group.transversals:
            pick = rng.choice(list(tr.keys()))
            g = compose(g, tr[pick])
        return g

    def subgroup_order(self, matrices) -> int:
        perms = [self.rs.root_permutation(m) for m in matrices]
        return PermGroup(perms, degree=2 * self.rs.num_positive).order()


def conjugacy_witness(
    wg: WeylGroup,
    m1: np.ndarray,
    m2: np.ndarray,
    budget: int = 200_000,
    seed: int = 0,
) -> str:
    """"witness", "consistent-invariants" or "distinct" for m1 ~ m2.

    Random search draws uniform conjugators; failure to find one within the
    budget is explicitly not a proof of distinctness.
    """
    rs = wg.rs
    if np.array_equal(m1, m2):
        return "witness"
    if class_invariants(rs, m1) != class_invariants(rs, m2):
        return "distinct"
    p1 = rs.root_permutation(m1)
    p2 = rs.root_permutation(m2)
    rng = random.Random(seed)
    for _ in range(budget):
        x = wg.random_element(rng)
        if np.array_equal(compose(compose(x, p1), inverse(x)), p2):
            return "witness"
    return "consistent-invariants"


def class_size(rs: RootSystem, m: np.ndarray) -> int:
    """Exact conjugacy-class size by closure under simple-reflection
    conjugation, batched over numpy."""
    refl = np.stack([rs.reflection_matrix(i) for i in range(1, rs.rank + 1)])
    seen = {m.tobytes()}
    frontier = m[None, :, :]
    while len(frontier):
        # conjugate every frontier element by every simple reflection
        batch = np.einsum("gab,nbc,gcd->gnad", refl, frontier, refl)
        batch = batch.reshape(-1, rs.rank, rs.rank)
        fresh = []
        for x in batch:
            key = x.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(x)
        frontier = np.array(fresh) if fresh else np.empty((0, rs.rank, rs.rank), dtype=np.int64)
    return len(seen)
