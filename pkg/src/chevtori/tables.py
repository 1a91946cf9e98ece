"""Dataset loading: the bundled tables of representatives, lifts,
complement generators, non-splitting schemas and torus structures."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DATA_DIR = Path(__file__).parent / "data"

NONSPLIT_TORI = {
    "E6": frozenset({1, 2, 3, 5, 7, 8, 11, 16}),
    "E7": frozenset({1, 2, 3, 5, 7, 8, 11, 14, 16, 28}),
    "E8": frozenset(
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 14, 16, 19, 20, 26, 28, 30,
         31, 32, 33, 35, 36, 37, 41, 42, 48, 49, 59}
    ),
}

TORUS_COUNT = {"E6": 25, "E7": 30, "E8": 67}


def _load(name: str, data_dir: Path | None = None) -> dict:
    path = (data_dir or DATA_DIR) / name
    with open(path, "rb") as f:
        return tomllib.load(f)


@dataclass(frozen=True)
class LiftRow:
    index: int
    w: tuple[int, ...]
    order: int
    lift: str
    ww0_lift: str | None


@dataclass(frozen=True)
class NonsplitRow:
    torus: int
    w: tuple[int, ...]
    wprime: tuple[int, ...]
    preimage: str
    lift: str


@dataclass(frozen=True)
class GenSpec:
    name: str
    u: str
    H: tuple[str, ...] | None = None


@dataclass(frozen=True)
class SplitRow:
    torus: int
    w: tuple[int, ...]
    x: str
    relations: tuple[str, ...]
    gens: tuple[GenSpec, ...]


@dataclass(frozen=True)
class ProseCase:
    qmod4: int  # 0 = any odd q
    gens: tuple[GenSpec, ...]


@dataclass(frozen=True)
class ProseTorus:
    index: int
    w: tuple[int, ...]
    x: str
    relations: tuple[str, ...]
    cases: tuple[ProseCase, ...]


@dataclass(frozen=True)
class SpecialRelation:
    type: str  # "power" | "comm"
    block: str = ""
    m: int = 0
    left: str = ""
    right: str = ""


@dataclass(frozen=True)
class SpecialTorus:
    index: int
    w: tuple[int, ...]
    x: str
    lift: str
    lift_ww0: str
    blocks: tuple[tuple[str, str, bool], ...]  # (name, element, membership)
    relations: tuple[SpecialRelation, ...]


@dataclass(frozen=True)
class TorusRow:
    index: int
    rep: tuple[int, ...]
    order: int | None
    c_order: int | None
    c_structure: str | None
    torus: str | None
    verdict: str  # "split" | "nonsplit" | "conditional"
    torus_twist: int = 1  # -1: the torus column belongs to the w*w_0 partner


@dataclass
class Tables:
    kind: str
    tori: list[TorusRow]
    lifts: list[LiftRow] = field(default_factory=list)
    nonsplit: list[NonsplitRow] = field(default_factory=list)
    nonsplit_aux: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    split: list[SplitRow] = field(default_factory=list)
    split_odd: list[SplitRow] = field(default_factory=list)
    prose: list[ProseTorus] = field(default_factory=list)
    special: list[SpecialTorus] = field(default_factory=list)

    def torus_row(self, index: int) -> TorusRow:
        for row in self.tori:
            if row.index == index:
                return row
        raise KeyError(index)


def _gen_specs(items) -> tuple[GenSpec, ...]:
    return tuple(
        GenSpec(g["name"], g["u"], tuple(g["H"]) if "H" in g else None)
        for g in items
    )


def _load_tori(kind: str, data_dir: Path | None) -> list[TorusRow]:
    raw = _load(f"{kind.lower()}_tori.toml", data_dir)
    rows = []
    for r in raw["row"]:
        verdict = r.get("verdict")
        if verdict is None:
            verdict = "split" if r["splits"] else "nonsplit"
        rows.append(
            TorusRow(
                index=r["index"],
                rep=tuple(r["rep"]),
                order=r.get("order"),
                c_order=r.get("c_order"),
                c_structure=r.get("c_structure"),
                torus=r.get("torus"),
                verdict=verdict,
                torus_twist=r.get("torus_twist", 1),
            )
        )
    return rows


def load_tables(kind: str, data_dir: Path | None = None) -> Tables:
    tables = Tables(kind=kind, tori=_load_tori(kind, data_dir))
    if kind == "E6":
        _validate(tables)
        return tables

    if kind == "E7":
        raw = _load("e7_lifts.toml", data_dir)
        tables.lifts = [
            LiftRow(r["index"], tuple(r["w"]), r["order"], r["lift"],
                    r.get("ww0_lift"))
            for r in raw["row"]
        ]
        pr = _load("e7_prose.toml", data_dir)
        tables.prose = [
            ProseTorus(
                index=t["index"],
                w=tuple(t["w"]),
                x=t["x"],
                relations=tuple(t["relations"]),
                cases=tuple(
                    ProseCase(c["qmod4"], _gen_specs(c["gen"]))
                    for c in t["case"]
                ),
            )
            for t in pr["torus"]
        ]

    raw = _load(f"{kind.lower()}_nonsplit.toml", data_dir)
    tables.nonsplit = [
        NonsplitRow(r["torus"], tuple(r["w"]), tuple(r["wprime"]),
                    r["preimage"], r["lift"])
        for r in raw["row"]
    ]
    tables.nonsplit_aux = [
        (s, tuple(w)) for s, w in zip(raw["aux"], raw["aux_words"])
    ]

    split_name = "e7_split.toml" if kind == "E7" else "e8_split_even.toml"
    raw = _load(split_name, data_dir)
    tables.split = [
        SplitRow(r["torus"], tuple(r["w"]), r["x"],
                 tuple(r["relations"]), _gen_specs(r["gen"]))
        for r in raw["row"]
    ]

    if kind == "E8":
        raw = _load("e8_split_odd.toml", data_dir)
        tables.split_odd = [
            SplitRow(r["torus"], tuple(r["w"]), r["x"], (), _gen_specs(r["gen"]))
            for r in raw["row"]
        ]
        raw = _load("e8_special.toml", data_dir)
        tables.special = [
            SpecialTorus(
                index=t["index"],
                w=tuple(t["w"]),
                x=t["x"],
                lift=t["lift"],
                lift_ww0=t["lift_ww0"],
                blocks=tuple(
                    (b["name"], b["u"], b.get("member", True))
                    for b in t["block"]
                ),
                relations=tuple(
                    SpecialRelation(
                        type=r["type"],
                        block=r.get("block", ""),
                        m=r.get("m", 0),
                        left=r.get("left", ""),
                        right=r.get("right", ""),
                    )
                    for r in t["rel"]
                ),
            )
            for t in raw["torus"]
        ]

    _validate(tables)
    return tables


def _validate(tables: Tables):
    kind = tables.kind
    indices = [r.index for r in tables.tori]
    if indices != list(range(1, TORUS_COUNT[kind] + 1)):
        raise ValueError(f"{kind}: torus table is not 1..{TORUS_COUNT[kind]}")
    nonsplit = {r.index for r in tables.tori if r.verdict == "nonsplit"}
    if nonsplit != set(NONSPLIT_TORI[kind]):
        raise ValueError(f"{kind}: verdict column inconsistent: {sorted(nonsplit)}")
    if kind == "E6":
        cond = {r.index for r in tables.tori if r.verdict == "conditional"}
        if cond != {14}:
            raise ValueError("E6: conditional verdicts must be exactly torus 14")
    if kind == "E7":
        covered = ({r.torus for r in tables.nonsplit}
                   | {r.torus for r in tables.split}
                   | {t.index for t in tables.prose})
        if covered != set(indices):
            raise ValueError("E7: rows not partitioned by the detail tables")
    if kind == "E8":
        covered = ({r.torus for r in tables.nonsplit}
                   | {r.torus for r in tables.split}
                   | {r.torus for r in tables.split_odd}
                   | {t.index for t in tables.special})
        if covered != set(indices):
            raise ValueError("E8: rows not partitioned by the detail tables")


# -- centralizer structure strings --------------------------------------------

_FACTORIALS = [1, 1, 2, 6, 24, 120, 720, 5040, 40320]

_ATOM_ORDERS = {
    "D8": 8,
    "Q8": 8,
    "SL2(3)": 24,
    "SL2(5)": 120,
    "O5(3)": 25920,
    "O7(2)": 1451520,
    "O8+(2)": 174182400,
}


def structure_order(s: str) -> int:
    """Order of a group-structure string: every extension multiplies orders."""
    import re

    if s.startswith("order "):
        expr = s[len("order "):]
        total = 1
        for part in expr.split("*"):
            if "^" in part:
                b, e = part.split("^")
                total *= int(b) ** int(e)
            else:
                total *= int(part)
        return total
    total = 1
    pos = 0
    token = re.compile(
        r"Z(\d+)|S(\d)|A(\d)|SL2\((\d)\)|O5\(3\)|O7\(2\)|O8\+\(2\)|D8|Q8|(\d+)"
    )
    while pos < len(s):
        ch = s[pos]
        if ch in " x:.()":
            pos += 1
            continue
        m = token.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse structure string {s!r} at {pos}")
        text = m.group(0)
        if text.startswith("Z"):
            val = int(m.group(1))
        elif text.startswith("S") and m.group(2):
            val = _FACTORIALS[int(m.group(2))]
        elif text.startswith("A") and m.group(3):
            val = _FACTORIALS[int(m.group(3))] // 2
        elif text in _ATOM_ORDERS:
            val = _ATOM_ORDERS[text]
        else:
            val = int(text)
        pos = m.end()
        if pos < len(s) and s[pos] == "^":
            pos += 1
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            val **= int(s[start:pos])
        total *= val
    return total
