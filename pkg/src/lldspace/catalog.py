"""Concrete spaces with their expected properties.

Each generic matrix is stored twice: as a grid of linear expressions in the
symbols a, b, c, ... and as a per-symbol list of (row, col, coeff) entries.
``expand_grid`` and ``expand_generators`` turn either form into the list of
coefficient matrices, and ``build_entry`` refuses to build if they disagree.
Coefficients are integers or the parameter symbol ``D`` (delta), with an
optional minus sign.  Indices are 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .alternating import (
    AltSubspace,
    elementary,
    operator_space_from_matrices,
    orthocomplement,
    wedge_space,
)
from .errors import BadParams, InvariantViolation, UnknownId, VacuousClass
from .exactfield import Field
from .matspace import MatrixSpace

SYMBOLS = "abcdefg"

# -- literal tables -----------------------------------------------------------

MATA3_GRID = [
    ["0", "a", "b"],
    ["-a", "0", "c"],
    ["-b", "-c", "0"],
]
MATA3_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(1, 2, "1"), (2, 1, "-1")],
}

SIXDIM_GRID = [
    ["-b", "a", "0", "0"],
    ["-c", "0", "a", "0"],
    ["-d", "0", "0", "a"],
    ["0", "-c", "b", "0"],
    ["0", "-d", "0", "b"],
    ["0", "0", "-d", "c"],
]
SIXDIM_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1"), (2, 3, "1")],
    "b": [(0, 0, "-1"), (3, 2, "1"), (4, 3, "1")],
    "c": [(1, 0, "-1"), (3, 1, "-1"), (5, 3, "1")],
    "d": [(2, 0, "-1"), (4, 1, "-1"), (5, 2, "-1")],
}

FIVEDIM_I_GRID = SIXDIM_GRID[:5]
FIVEDIM_I_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1"), (2, 3, "1")],
    "b": [(0, 0, "-1"), (3, 2, "1"), (4, 3, "1")],
    "c": [(1, 0, "-1"), (3, 1, "-1")],
    "d": [(2, 0, "-1"), (4, 1, "-1")],
}

FIVEDIM_II_GRID = [
    ["-b", "a", "-d", "c"],
    ["-c", "0", "a", "0"],
    ["-d", "0", "0", "a"],
    ["0", "-c", "b", "0"],
    ["0", "-d", "0", "b"],
]
FIVEDIM_II_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1"), (2, 3, "1")],
    "b": [(0, 0, "-1"), (3, 2, "1"), (4, 3, "1")],
    "c": [(0, 3, "1"), (1, 0, "-1"), (3, 1, "-1")],
    "d": [(0, 2, "-1"), (2, 0, "-1"), (4, 1, "-1")],
}

PLANE_D0_GRID = [
    ["-b", "a", "0", "0"],
    ["-c", "0", "a", "0"],
    ["-d", "0", "0", "a"],
    ["0", "-c", "b", "0"],
]
PLANE_D0_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1"), (2, 3, "1")],
    "b": [(0, 0, "-1"), (3, 2, "1")],
    "c": [(1, 0, "-1"), (3, 1, "-1")],
    "d": [(2, 0, "-1")],
}

PLANE_D1_GRID = [
    ["-b", "a", "d", "-c"],
    ["-c", "0", "a", "0"],
    ["0", "-c", "b", "0"],
    ["0", "-d", "0", "b"],
]
PLANE_D1_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1")],
    "b": [(0, 0, "-1"), (2, 2, "1"), (3, 3, "1")],
    "c": [(0, 3, "-1"), (1, 0, "-1"), (2, 1, "-1")],
    "d": [(0, 2, "1"), (3, 1, "-1")],
}

PLANE_R_GRID = [
    ["-b", "a", "d", "-c"],
    ["-c", "0", "a", "0"],
    ["-d", "Dc", "-Db", "a"],
    ["0", "-d", "0", "b"],
]
PLANE_R_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1"), (2, 3, "1")],
    "b": [(0, 0, "-1"), (2, 2, "-D"), (3, 3, "1")],
    "c": [(0, 3, "-1"), (1, 0, "-1"), (2, 1, "D")],
    "d": [(0, 2, "1"), (2, 0, "-1"), (3, 1, "-1")],
}

PLANE_R2_GRID = [
    ["b+c", "a", "a", "0"],
    ["Db", "d+Da", "0", "b"],
    ["d", "c", "b", "a"],
    ["d", "0", "d", "a+c"],
]
PLANE_R2_GENS = {
    "a": [(0, 1, "1"), (0, 2, "1"), (1, 1, "D"), (2, 3, "1"), (3, 3, "1")],
    "b": [(0, 0, "1"), (1, 0, "D"), (1, 3, "1"), (2, 2, "1")],
    "c": [(0, 0, "1"), (2, 1, "1"), (3, 3, "1")],
    "d": [(1, 1, "1"), (2, 0, "1"), (3, 0, "1"), (3, 2, "1")],
}

PLANE_HYP_GRID = [
    ["-b", "a", "0", "0"],
    ["-c", "0", "a", "0"],
    ["0", "-d", "0", "b"],
    ["0", "0", "-d", "c"],
]
PLANE_HYP_GENS = {
    "a": [(0, 1, "1"), (1, 2, "1")],
    "b": [(0, 0, "-1"), (2, 3, "1")],
    "c": [(1, 0, "-1"), (3, 3, "1")],
    "d": [(2, 1, "-1"), (3, 2, "-1")],
}

LLD4_D1_GRID = [
    ["0", "a", "b", "0"],
    ["-a", "0", "c", "d"],
    ["-b", "-c", "0", "-a"],
    ["0", "-d", "a", "0"],
]
LLD4_D1_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1"), (2, 3, "-1"), (3, 2, "1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(1, 2, "1"), (2, 1, "-1")],
    "d": [(1, 3, "1"), (3, 1, "-1")],
}

LLD4_R_GRID = [
    ["0", "a", "b", "c"],
    ["-a", "0", "-Dc", "d"],
    ["-b", "Dc", "0", "-a"],
    ["-c", "-d", "a", "0"],
]
LLD4_R_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1"), (2, 3, "-1"), (3, 2, "1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(0, 3, "1"), (3, 0, "-1"), (1, 2, "-D"), (2, 1, "D")],
    "d": [(1, 3, "1"), (3, 1, "-1")],
}

LLD4_R2_GRID = [
    ["0", "a+Db", "a", "c+d"],
    ["a+Db", "0", "c", "b"],
    ["a", "c", "0", "d"],
    ["c+d", "b", "d", "0"],
]
LLD4_R2_GENS = {
    "a": [(0, 1, "1"), (1, 0, "1"), (0, 2, "1"), (2, 0, "1")],
    "b": [(0, 1, "D"), (1, 0, "D"), (1, 3, "1"), (3, 1, "1")],
    "c": [(0, 3, "1"), (3, 0, "1"), (1, 2, "1"), (2, 1, "1")],
    "d": [(0, 3, "1"), (3, 0, "1"), (2, 3, "1"), (3, 2, "1")],
}

A1_GRID = [
    ["0", "a", "b", "c"],
    ["-a", "0", "0", "0"],
    ["-b", "0", "0", "0"],
    ["-c", "0", "0", "0"],
]
A1_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(0, 3, "1"), (3, 0, "-1")],
}

A2_GRID = [
    ["0", "0", "0", "0"],
    ["0", "0", "a", "b"],
    ["0", "-a", "0", "c"],
    ["0", "-b", "-c", "0"],
]
A2_GENS = {
    "a": [(1, 2, "1"), (2, 1, "-1")],
    "b": [(1, 3, "1"), (3, 1, "-1")],
    "c": [(2, 3, "1"), (3, 2, "-1")],
}

A3_GRID = [
    ["0", "a", "b", "c"],
    ["-a", "0", "c", "0"],
    ["-b", "-c", "0", "0"],
    ["-c", "0", "0", "0"],
]
A3_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(0, 3, "1"), (3, 0, "-1"), (1, 2, "1"), (2, 1, "-1")],
}

A4_GRID = [
    ["0", "a", "b", "0"],
    ["-a", "0", "0", "c"],
    ["-b", "0", "0", "0"],
    ["0", "-c", "0", "0"],
]
A4_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(1, 3, "1"), (3, 1, "-1")],
}

A5_GRID = [
    ["0", "a", "b", "0"],
    ["-a", "0", "0", "c"],
    ["-b", "0", "0", "a"],
    ["0", "-c", "-a", "0"],
]
A5_GENS = {
    "a": [(0, 1, "1"), (1, 0, "-1"), (2, 3, "1"), (3, 2, "-1")],
    "b": [(0, 2, "1"), (2, 0, "-1")],
    "c": [(1, 3, "1"), (3, 1, "-1")],
}

KVEE_GRID = [
    ["a", "b", "c", "d"],
    ["0", "0", "e", "f"],
    ["0", "-e", "0", "g"],
    ["0", "-f", "-g", "0"],
]
KVEE_GENS = {
    "a": [(0, 0, "1")],
    "b": [(0, 1, "1")],
    "c": [(0, 2, "1")],
    "d": [(0, 3, "1")],
    "e": [(1, 2, "1"), (2, 1, "-1")],
    "f": [(1, 3, "1"), (3, 1, "-1")],
    "g": [(2, 3, "1"), (3, 2, "-1")],
}

# Alternating bases (W = plane P, V = P^perp) as {(i, j): coeff}, 1-based
# pairs as in A_ij.
PLANE_BASES = {
    "plane-D0": ([{(2, 4): "1"}, {(3, 4): "1"}],
                 [{(1, 2): "1"}, {(1, 3): "1"}, {(1, 4): "1"}, {(2, 3): "1"}]),
    "plane-D1": ([{(1, 2): "1", (3, 4): "1"}, {(1, 4): "1"}],
                 [{(1, 2): "1", (3, 4): "-1"}, {(1, 3): "1"}, {(2, 3): "1"}, {(2, 4): "1"}]),
    "plane-R": ([{(1, 2): "1", (3, 4): "1"}, {(2, 3): "1", (1, 4): "D"}],
                [{(1, 2): "1", (3, 4): "-1"}, {(1, 3): "1"}, {(1, 4): "1", (2, 3): "-D"},
                 {(2, 4): "1"}]),
    "plane-R-char2": ([{(1, 4): "1", (2, 3): "1", (3, 4): "1"},
                       {(1, 3): "1", (2, 4): "D", (1, 2): "1"}],
                      [{(1, 2): "1", (1, 3): "1"}, {(1, 2): "D", (2, 4): "1"},
                       {(1, 4): "1", (2, 3): "1"}, {(1, 4): "1", (3, 4): "1"}]),
    "plane-hyperbolic": ([{(1, 4): "1"}, {(2, 3): "1"}],
                         [{(1, 2): "1"}, {(1, 3): "1"}, {(2, 4): "1"}, {(3, 4): "1"}]),
    "sixdim": ([], [{p: "1"} for p in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]]),
    "fivedim-i": ([{(3, 4): "1"}],
                  [{p: "1"} for p in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]]),
    "fivedim-ii": ([{(1, 2): "1", (3, 4): "-1"}],
                   [{(1, 2): "1", (3, 4): "1"}, {(1, 3): "1"}, {(1, 4): "1"}, {(2, 3): "1"},
                    {(2, 4): "1"}]),
}

# -- expansion ----------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(D?)([a-g0])")


def _coeff(F: Field, token: str, delta) -> int:
    neg = token.startswith("-")
    body = token.lstrip("+-")
    if body == "D":
        if delta is None:
            raise BadParams("table uses delta but no delta was given")
        val = int(delta)
    else:
        val = F.from_int(int(body))
    return int(F.neg(val)) if neg else int(val)


def _parse_cell(cell: str) -> list[tuple[str, str, bool]]:
    """Split an expression into (symbol, 'D' or '', negated) terms."""
    cell = cell.replace(" ", "")
    terms = _TERM.findall(cell)
    if "".join(s + d + v for s, d, v in terms) != cell:
        raise ValueError(f"cannot parse generic entry {cell!r}")
    return [(v, d, s == "-") for s, d, v in terms if v != "0"]


def expand_grid(F: Field, grid, delta=None, symbols: str | None = None) -> np.ndarray:
    """Coefficient matrices of a generic matrix, one per symbol."""
    m, n = len(grid), len(grid[0])
    symbols = symbols or _symbols_of(grid)
    out = F.zeros((len(symbols), m, n))
    for i, row in enumerate(grid):
        for j, cell in enumerate(row):
            for sym, dflag, neg in _parse_cell(cell):
                c = _coeff(F, ("-" if neg else "") + (dflag or "1"), delta)
                k = symbols.index(sym)
                out[k, i, j] = F.add(out[k, i, j], c)
    return out


def expand_generators(F: Field, gens: dict, m: int, n: int, delta=None) -> np.ndarray:
    symbols = "".join(sorted(gens))
    out = F.zeros((len(symbols), m, n))
    for k, sym in enumerate(symbols):
        for i, j, c in gens[sym]:
            out[k, i, j] = F.add(out[k, i, j], _coeff(F, c, delta))
    return out


def _symbols_of(grid) -> str:
    found = {v for row in grid for cell in row for v, _, _ in _parse_cell(cell)}
    return "".join(s for s in SYMBOLS if s in found)


def alt_combination(F: Field, n: int, combo: dict, delta=None) -> np.ndarray:
    M = F.zeros((n, n))
    for (i, j), c in combo.items():
        M = F.add(M, F.mul(_coeff(F, c, delta), elementary(F, n, i - 1, j - 1)))
    return M


# -- entries ------------------------------------------------------------------

@dataclass(frozen=True)
class EntryInfo:
    id: str
    params: tuple[str, ...]
    chars: str
    summary: str


@dataclass
class CatalogEntry:
    """A built catalog space.

    ``space`` is a MatrixSpace, or an AltSubspace for the a1..a5 entries.
    ``alt`` is the V-side subspace of Mata_4 for entries of the alternating
    kind and ``plane`` the W-side subspace (V^perp), when the source table
    lists them.  ``expected`` holds None for properties with no claim.
    """

    id: str
    field: Field
    params: dict
    space: object
    expected: dict
    generators: np.ndarray
    alt: AltSubspace | None = None
    plane: AltSubspace | None = None
    tables: dict = field(default_factory=dict)


ENTRIES = [
    EntryInfo("wedge", ("n",), "any", "operator space of U x U -> U ^ U, U = K^n"),
    EntryInfo("mat3-alt", (), "any", "Mata_3(K)"),
    EntryInfo("sixdim", (), "any", "alternating kind, V = Mata_4(K)"),
    EntryInfo("fivedim-i", (), "any", "alternating kind, V = K A34 perp"),
    EntryInfo("fivedim-ii", (), "any", "alternating kind, V = K (A12 - A34) perp"),
    EntryInfo("plane-D0", (), "any", "plane of type D0, not primitive"),
    EntryInfo("plane-D1", (), "any", "plane of type D1"),
    EntryInfo("plane-R", ("delta",), "any",
              "plane of type R(delta); delta a non-square (odd) or of non-trivial Arf class (char 2)"),
    EntryInfo("plane-D2", ("t",), "2", "plane of type D2(t); empty class over finite fields"),
    EntryInfo("plane-hyperbolic", (), "any", "plane P with Pf|P hyperbolic"),
    EntryInfo("lld4-D1", (), "any", "4-dimensional minimal LLD space, type D1"),
    EntryInfo("lld4-R", ("delta",), "any", "4-dimensional minimal LLD space, type R(delta)"),
    EntryInfo("lld4-D2", ("t",), "2", "4-dimensional minimal LLD space, type D2(t); empty class"),
    EntryInfo("a1", (), "any", "lagrangian, incompressible"),
    EntryInfo("a2", (), "any", "lagrangian, compressible"),
    EntryInfo("a3", (), "any", "3-dim subspace of Mata_4, Pf restriction of rank 1"),
    EntryInfo("a4", (), "any", "3-dim subspace of Mata_4, Pf restriction of rank 2"),
    EntryInfo("a5", (), "any", "3-dim subspace of Mata_4, Pf restriction of rank 3"),
    EntryInfo("k-vee-mata3", (), "any", "K v Mata_3(K), semi-primitive and not primitive"),
]

_BY_ID = {e.id: e for e in ENTRIES}


def list_entries() -> list[EntryInfo]:
    return list(ENTRIES)


def _expected(m=None, n=None, d=None, urk=None, lld_index=None, semiprimitive=None,
              primitive=None, tag=None, **extra) -> dict:
    out = dict(m=m, n=n, d=d, urk=urk, lld_index=lld_index, semiprimitive=semiprimitive,
               primitive=primitive, tag=tag)
    out.update(extra)
    return out


def _double_entry(F: Field, grid, gens, delta=None) -> np.ndarray:
    m, n = len(grid), len(grid[0])
    a = expand_grid(F, grid, delta, "".join(sorted(gens)))
    b = expand_generators(F, gens, m, n, delta)
    if not np.array_equal(a, b):
        raise InvariantViolation("catalog tables disagree between matrix and generator form")
    return a


def _square_class_rep(F: Field, a: int) -> int:
    return 1 if F.is_square(a) else F.least_nonsquare()


def _arf_rep(F: Field) -> int:
    return next(int(x) for x in F.elements() if F.trace(int(x)) == 1)


def _alt_kind(F: Field, key: str, delta=None):
    w, v = PLANE_BASES[key]
    Vm = [alt_combination(F, 4, c, delta) for c in v]
    Wm = [alt_combination(F, 4, c, delta) for c in w]
    return Vm, AltSubspace(F, 4, Vm), AltSubspace(F, 4, Wm)


def _check_delta(F: Field, delta, entry: str, strict: bool) -> int:
    if delta is None:
        raise BadParams(f"{entry} needs delta")
    delta = int(delta)
    if not 0 <= delta < F.q:
        raise BadParams(f"delta={delta} is not an element of GF({F.q})")
    if F.char2:
        if strict and F.arf_class(delta) == "trivial":
            raise BadParams(f"delta={delta} has trivial Arf class; the plane is hyperbolic")
    elif delta == 0 or (strict and F.is_square(delta)):
        raise BadParams(f"delta={delta} must be a non-square in GF({F.q})")
    return delta


def default_params(id: str, F: Field) -> dict:
    """Parameters that make ``id`` buildable over F (first valid delta, n = 4)."""
    if id == "plane-R":
        return {"delta": _arf_rep(F) if F.char2 else F.least_nonsquare()}
    if id == "lld4-R":
        return {"delta": 1 if F.char2 else F.least_nonsquare()}
    if id == "wedge":
        return {"n": 4}
    return {}


def build_entry(id: str, F: Field, params: dict | None = None) -> CatalogEntry:
    params = dict(params or {})
    if id not in _BY_ID:
        raise UnknownId(f"unknown catalog id {id!r}")
    info = _BY_ID[id]
    extra = set(params) - set(info.params)
    if extra:
        raise BadParams(f"{id} takes no parameter(s) {sorted(extra)}")

    if id in ("plane-D2", "lld4-D2"):
        if not F.char2:
            raise BadParams("the D2(t) class only exists in characteristic 2")
        raise VacuousClass("no element of K outside K^[2] exists: every element of a "
                           "finite field of characteristic 2 is a square")

    if id == "wedge":
        n = int(params.get("n", 4))
        if n < 2:
            raise BadParams("wedge needs n >= 2")
        S = wedge_space(F, n)
        V = AltSubspace.full(F, n)
        big = F.q >= n - 1
        exp = _expected(comb(n, 2), n, n, n - 1, 1 if big else None, True,
                        True if big and n >= 3 else None)
        return CatalogEntry(id, F, {"n": n}, S, exp, S.basis, alt=V, plane=orthocomplement(V))

    if id == "mat3-alt":
        gens = _double_entry(F, MATA3_GRID, MATA3_GENS)
        S = MatrixSpace(F, 3, 3, gens)
        exp = _expected(3, 3, 3, 2, 1, True, True)
        return CatalogEntry(id, F, {}, S, exp, gens, tables={"grid": MATA3_GRID})

    if id == "k-vee-mata3":
        gens = _double_entry(F, KVEE_GRID, KVEE_GENS)
        S = MatrixSpace(F, 4, 4, gens)
        exp = _expected(4, 4, 7, 3, None, True, False)
        return CatalogEntry(id, F, {}, S, exp, gens, tables={"grid": KVEE_GRID})

    if id in ("sixdim", "fivedim-i", "fivedim-ii"):
        grid, table = {
            "sixdim": (SIXDIM_GRID, SIXDIM_GENS),
            "fivedim-i": (FIVEDIM_I_GRID, FIVEDIM_I_GENS),
            "fivedim-ii": (FIVEDIM_II_GRID, FIVEDIM_II_GENS),
        }[id]
        gens = _double_entry(F, grid, table)
        Vm, V, W = _alt_kind(F, id)
        S = _checked_space(F, grid, gens, Vm)
        m = len(grid)
        exp = _expected(m, 4, 4, 3, 1, True, True)
        return CatalogEntry(id, F, {}, S, exp, gens, alt=V, plane=W, tables={"grid": grid})

    if id.startswith("plane-"):
        delta = None
        if id == "plane-R":
            delta = _check_delta(F, params.get("delta"), id, strict=True)
            key = "plane-R-char2" if F.char2 else "plane-R"
            grid, table = (PLANE_R2_GRID, PLANE_R2_GENS) if F.char2 else (PLANE_R_GRID, PLANE_R_GENS)
            tag = f"R({_arf_rep(F)})" if F.char2 else f"R({F.least_nonsquare()})"
            prim = True
        else:
            key = id
            grid, table, tag, prim = {
                "plane-D0": (PLANE_D0_GRID, PLANE_D0_GENS, "D0", False),
                "plane-D1": (PLANE_D1_GRID, PLANE_D1_GENS, "D1", True),
                "plane-hyperbolic": (PLANE_HYP_GRID, PLANE_HYP_GENS, None, True),
            }[id]
            if id == "plane-hyperbolic":
                tag = "R(0)" if F.char2 else f"R({_square_class_rep(F, int(F.neg(1)))})"
        gens = _double_entry(F, grid, table, delta)
        Vm, V, W = _alt_kind(F, key, delta)
        S = _checked_space(F, grid, gens, Vm)
        exp = _expected(4, 4, 4, 3, 1, True, prim, tag)
        p = {"delta": delta} if delta is not None else {}
        return CatalogEntry(id, F, p, S, exp, gens, alt=V, plane=W, tables={"grid": grid})

    if id in ("lld4-D1", "lld4-R"):
        delta = None
        if id == "lld4-R":
            delta = _check_delta(F, params.get("delta"), id, strict=False)
            grid, table = (LLD4_R2_GRID, LLD4_R2_GENS) if F.char2 else (LLD4_R_GRID, LLD4_R_GENS)
        else:
            grid, table = LLD4_D1_GRID, LLD4_D1_GENS
        gens = _double_entry(F, grid, table, delta)
        S = MatrixSpace(F, 4, 4, gens)
        exp = _expected(4, 4, 4, None, 1, None, None, None, minimal=True, alternating=True)
        p = {"delta": delta} if delta is not None else {}
        return CatalogEntry(id, F, p, S, exp, gens, alt=AltSubspace(F, 4, gens),
                            tables={"grid": grid})

    grid, table, rank_, incompressible = {
        "a1": (A1_GRID, A1_GENS, 0, True),
        "a2": (A2_GRID, A2_GENS, 0, False),
        "a3": (A3_GRID, A3_GENS, 1, None),
        "a4": (A4_GRID, A4_GENS, 2, None),
        "a5": (A5_GRID, A5_GENS, 3, None),
    }[id]
    gens = _double_entry(F, grid, table)
    H = AltSubspace(F, 4, gens)
    exp = _expected(None, 4, 3, tag=f"pf-rank{rank_}", pf_rank=rank_,
                    incompressible=incompressible)
    return CatalogEntry(id, F, {}, H, exp, gens, alt=H, plane=orthocomplement(H),
                        tables={"grid": grid})


def _checked_space(F: Field, grid, gens, Vm) -> MatrixSpace:
    """The generic-matrix space, checked against the listed alternating basis."""
    S = MatrixSpace(F, len(grid), len(grid[0]), gens)
    if S != operator_space_from_matrices(F, Vm):
        raise InvariantViolation("generic matrix does not match its alternating basis")
    return S
