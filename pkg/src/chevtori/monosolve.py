"""Sign-annotated monomial constraint systems over unknown torus elements.

Relations like "some preimage squares to 1" or "two preimages commute"
reduce, through the exponent-matrix calculus, to equations

    prod_j  x_j^{e_j}  =  +-1

over coordinates x_j of unknown torus elements ranging over the
multiplicative group of an algebraically closed field of odd
characteristic.  Such a system is solvable iff every integer vector in the
left kernel of the exponent matrix hits sign product +1; an UNSAT witness
is a kernel vector with sign product -1, and is independently checkable.

In the adjoint E7 quotient an equation only holds up to the central sign
pattern; each relation then carries one extra unknown c with c^2 = 1
entering the affected coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tits import TitsElement, TitsGroup
from .torus import power_sum, smith_normal_form


@dataclass
class Constraint:
    exponents: tuple[int, ...]
    sign: int
    label: str = ""


@dataclass
class Certificate:
    """Integer combination of constraints with zero exponents, sign -1."""

    coefficients: tuple[int, ...]

    def as_dict(self):
        return {"coefficients": list(self.coefficients)}


@dataclass
class SolveResult:
    satisfiable: bool
    witness: list[int] | None = None
    modulus: int | None = None
    certificate: Certificate | None = None


class ConstraintSystem:
    """Monomial constraints over named blocks of torus coordinates."""

    def __init__(self, group: TitsGroup, isogeny: str = "sc"):
        self.group = group
        self.isogeny = isogeny
        self.rank = group.rank
        self.blocks: dict[str, int] = {}
        self.width = 0
        self.rows: list[Constraint] = []
        self._center_count = 0

    def add_block(self, name: str) -> int:
        if name in self.blocks:
            raise ValueError(f"duplicate block {name!r}")
        self.blocks[name] = self.width
        self.width += self.rank
        for row in self.rows:
            row.exponents = row.exponents + (0,) * self.rank
        return self.blocks[name]

    def _pad(self, exps: list[int]) -> tuple[int, ...]:
        return tuple(exps + [0] * (self.width - len(exps)))

    def add_raw(self, exps_by_block: dict[str, list[int]], sign: int, label: str = ""):
        exps = [0] * self.width
        for name, part in exps_by_block.items():
            off = self.blocks[name]
            for i, e in enumerate(part):
                exps[off + i] += int(e)
        self.rows.append(Constraint(tuple(exps), int(sign), label))

    def _center_bits(self) -> list[int]:
        z = self.group.center_mask
        return [(z >> i) & 1 for i in range(self.rank)]

    def _add_relation_rows(self, per_coord: list[tuple[dict[str, list[int]], int]], label: str):
        """Add per-coordinate rows; in ad mode couple them to a fresh c^2 = 1 unknown."""
        if self.isogeny == "ad" and self.group.center_mask:
            self._center_count += 1
            cname = f"_c{self._center_count}"
            self.blocks[cname] = self.width
            self.width += 1
            for row in self.rows:
                row.exponents = row.exponents + (0,)
            zbits = self._center_bits()
            coff = self.blocks[cname]
            exps = [0] * self.width
            exps[coff] = 2
            self.rows.append(Constraint(tuple(exps), 1, f"{label}:center^2"))
            for i, (by_block, sign) in enumerate(per_coord):
                exps = [0] * self.width
                for name, part in by_block.items():
                    off = self.blocks[name]
                    for j, e in enumerate(part):
                        exps[off + j] += int(e)
                exps[coff] = zbits[i]
                self.rows.append(Constraint(tuple(exps), sign, f"{label}[{i + 1}]"))
        else:
            for i, (by_block, sign) in enumerate(per_coord):
                self.add_raw(by_block, sign, f"{label}[{i + 1}]")

    # -- relation encoders --------------------------------------------------

    def add_commutator(
        self,
        block1: str,
        u1: TitsElement,
        block2: str,
        u2: TitsElement,
        label: str = "",
    ):
        """Impose [H1 u1, H2 u2] = 1 for unknown torus parts H1, H2.

        Coordinate form: H1^{-1} H1^{u2} * (u2 u1 u2^{-1} u1^{-1}) = H2^{-1} H2^{u1},
        where the u-commutator must land in the sign subgroup.
        """
        g = self.group
        c = g.comm(u2, u1)
        if not np.array_equal(c.w, g.rs.identity_matrix()):
            raise ValueError("u-parts do not commute in the Weyl group")
        a2 = u2.w - np.eye(self.rank, dtype=np.int64)
        a1 = u1.w - np.eye(self.rank, dtype=np.int64)
        rows = []
        for i in range(self.rank):
            sign = -1 if (c.h >> i) & 1 else 1
            rows.append(
                (
                    {block1: list(a2[i, :]), block2: list(-a1[i, :])},
                    sign,
                )
            )
        self._add_relation_rows(rows, label or f"[{block1},{block2}]")

    def add_power(
        self,
        block: str,
        u: TitsElement,
        m: int,
        target_mask: int = 0,
        label: str = "",
    ):
        """Impose (H u)^m = h(target) for the unknown torus part H."""
        g = self.group
        um = u**m
        if not np.array_equal(um.w, g.rs.identity_matrix()):
            raise ValueError(f"u^{m} is not a torus element")
        b = power_sum(u.w, m)
        need = um.h ^ target_mask
        rows = []
        for i in range(self.rank):
            sign = -1 if (need >> i) & 1 else 1
            rows.append(({block: list(b[i, :])}, sign))
        self._add_relation_rows(rows, label or f"({block})^{m}")

    # -- solving --------------------------------------------------------------

    def solve(self) -> SolveResult:
        if not self.rows:
            return SolveResult(True, witness=[0] * self.width, modulus=2)
        e = [list(r.exponents) for r in self.rows]
        b = [1 if r.sign == -1 else 0 for r in self.rows]
        s, u, _v = smith_normal_form(e)
        nrows = len(e)
        rank = 0
        for i in range(min(nrows, self.width)):
            if s[i][i] != 0:
                rank = i + 1
        for i in range(rank, nrows):
            parity = sum(u[i][j] * b[j] for j in range(nrows)) % 2
            if parity:
                return SolveResult(False, certificate=Certificate(tuple(u[i])))
        modulus = 2
        for i in range(rank):
            modulus *= abs(s[i][i])
        y = [0] * self.width
        for i in range(rank):
            bit = sum(u[i][j] * b[j] for j in range(nrows)) % 2
            y[i] = bit * (modulus // (2 * s[i][i]))
        v_mat = _v
        x = [
            sum(v_mat[i][j] * y[j] for j in range(self.width)) % modulus
            for i in range(self.width)
        ]
        assert self.check_witness(x, modulus)
        return SolveResult(True, witness=x, modulus=modulus)

    def check_witness(self, x: list[int], modulus: int) -> bool:
        half = modulus // 2
        for r in self.rows:
            val = sum(e * xi for e, xi in zip(r.exponents, x)) % modulus
            want = half if r.sign == -1 else 0
            if val != want:
                return False
        return True

    def export(self) -> dict:
        return {
            "kind": self.group.rs.kind,
            "isogeny": self.isogeny,
            "blocks": dict(self.blocks),
            "rows": [
                {"exponents": list(r.exponents), "sign": r.sign, "label": r.label}
                for r in self.rows
            ],
        }


def verify_certificate(system: ConstraintSystem, cert: Certificate) -> bool:
    """Re-multiply constraint rows: exponents cancel, signs multiply to -1.

    Deliberately independent of the solver: only integer sums and parities.
    """
    coeffs = cert.coefficients
    if len(coeffs) != len(system.rows):
        return False
    width = system.width
    total = [0] * width
    sign_parity = 0
    for c, row in zip(coeffs, system.rows):
        for j in range(width):
            total[j] += c * row.exponents[j]
        if row.sign == -1:
            sign_parity += c
    return all(t == 0 for t in total) and sign_parity % 2 == 1


def verify_certificate_export(exported: dict, coefficients) -> bool:
    """Certificate check over a serialized system (for external audit)."""
    rows = exported["rows"]
    if len(coefficients) != len(rows):
        return False
    width = len(rows[0]["exponents"]) if rows else 0
    total = [0] * width
    sign_parity = 0
    for c, row in zip(coefficients, rows):
        for j, e in enumerate(row["exponents"]):
            total[j] += c * e
        if row["sign"] == -1:
            sign_parity += c
    return all(t == 0 for t in total) and sign_parity % 2 == 1


# -- symbolic rendering -------------------------------------------------------

def monomial_str(exponents, sign: int = 1) -> str:
    """Render one coordinate like '-l1^-3*l3^2'; '1'/'-1' when trivial."""
    parts = []
    for j, e in enumerate(exponents, start=1):
        if e == 0:
            continue
        parts.append(f"l{j}" if e == 1 else f"l{j}^{e}")
    body = "*".join(parts)
    if not body:
        return "-1" if sign == -1 else "1"
    return ("-" if sign == -1 else "") + body


def coordinate_vector_str(matrix_rows, sign_mask: int = 0) -> str:
    """Render rows of an exponent matrix as a printed coordinate tuple."""
    out = []
    for i, row in enumerate(matrix_rows):
        out.append(monomial_str(row, -1 if (sign_mask >> i) & 1 else 1))
    return "(" + ", ".join(out) + ")"


def conj_vector_str(u: TitsElement) -> str:
    """The tuple H^u in coordinates, e.g. '(l3^-1*l4, l2^-1*l4, ...)'."""
    return coordinate_vector_str(u.w)


def conj_quotient_vector_str(u: TitsElement) -> str:
    """The tuple H^{-1} H^u."""
    a = u.w - np.eye(u.group.rank, dtype=np.int64)
    return coordinate_vector_str(a)


def power_vector_str(u: TitsElement, m: int) -> str:
    """The tuple (H u)^m with its sign pattern from u^m."""
    b = power_sum(u.w, m)
    um = u**m
    if not np.array_equal(um.w, np.eye(u.group.rank, dtype=np.int64)):
        raise ValueError("power does not land in the torus")
    return coordinate_vector_str(b, um.h)
