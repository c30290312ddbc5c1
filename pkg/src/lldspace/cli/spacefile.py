"""Text format for matrix spaces and alternating subspaces.

    llds 1
    field p                      (or: field p k c0 ... c{k-1})
    space m n d                  (or: alt n d)
    matrix
    <m rows of n tokens>
    ...

Tokens are residues for prime fields and ``c0:c1:...`` coefficient lists
for extension fields.  ``#`` starts a comment; blank lines are ignored.
Emission always writes the canonical (RREF) basis, so parse then emit is
the identity on emitted files.
"""

from __future__ import annotations

import numpy as np

from ..alternating import AltSubspace, is_alternating
from ..errors import ShapeMismatch, SpaceFileError, ValueOutOfRange
from ..exactfield import Field, make_field
from ..matspace import MatrixSpace

MAGIC = "llds 1"


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(no: int, words, what: str) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise SpaceFileError(no, f"expected integers in {what} line") from None


def _parse_field(no: int, words) -> Field:
    if words[0] != "field" or len(words) < 2:
        raise SpaceFileError(no, "expected 'field p' or 'field p k c0 ... c{k-1}'")
    nums = _ints(no, words[1:], "field")
    try:
        if len(nums) == 1:
            return make_field(nums[0])
        p, k, coeffs = nums[0], nums[1], nums[2:]
        if len(coeffs) != k:
            raise SpaceFileError(no, f"field of degree {k} needs {k} modulus coefficients")
        return make_field(p, k, coeffs)
    except SpaceFileError:
        raise
    except Exception as exc:
        raise SpaceFileError(no, f"bad field: {exc}") from None


def _token(F: Field, no: int, tok: str) -> int:
    parts = tok.split(":")
    if len(parts) != F.k:
        raise SpaceFileError(no, f"token {tok!r} must have {F.k} component(s)")
    try:
        cs = [int(c) for c in parts]
    except ValueError:
        raise SpaceFileError(no, f"bad token {tok!r}") from None
    if any(not 0 <= c < F.p for c in cs):
        raise ValueOutOfRange(no, f"token {tok!r} out of range for GF({F.q})")
    return F.from_coeffs(cs)


def parse(text: str):
    """MatrixSpace or AltSubspace described by ``text``."""
    lines = list(_lines(text))
    if not lines or " ".join(lines[0][1]) != MAGIC:
        raise SpaceFileError(lines[0][0] if lines else 1, f"first line must be {MAGIC!r}")
    if len(lines) < 3:
        raise SpaceFileError(lines[-1][0], "missing field or shape line")
    F = _parse_field(*lines[1])
    no, words = lines[2]
    if words[0] == "space" and len(words) == 4:
        m, n, d = _ints(no, words[1:], "shape")
        kind = "space"
    elif words[0] == "alt" and len(words) == 3:
        n, d = _ints(no, words[1:], "shape")
        m, kind = n, "alt"
    else:
        raise SpaceFileError(no, "expected 'space m n d' or 'alt n d'")
    if min(m, n, d) < 0:
        raise SpaceFileError(no, "negative dimension")

    body = lines[3:]
    mats = []
    pos = 0
    for _ in range(d):
        if pos >= len(body) or body[pos][1] != ["matrix"]:
            where = body[pos][0] if pos < len(body) else (body[-1][0] if body else no)
            raise SpaceFileError(where, "expected 'matrix'")
        pos += 1
        M = F.zeros((m, n))
        for i in range(m):
            if pos >= len(body):
                raise SpaceFileError(body[-1][0], "matrix block ends early")
            rno, toks = body[pos]
            if len(toks) != n:
                raise ShapeMismatch(f"line {rno}: expected {n} entries, got {len(toks)}")
            M[i] = [_token(F, rno, t) for t in toks]
            pos += 1
        if kind == "alt" and not is_alternating(F, M):
            raise ShapeMismatch(f"line {body[pos - 1][0]}: matrix is not alternating")
        mats.append(M)
    if pos != len(body):
        raise SpaceFileError(body[pos][0], "unexpected content after the last matrix")
    if kind == "alt":
        return AltSubspace(F, n, mats)
    return MatrixSpace(F, m, n, mats)


def emit(obj) -> str:
    F = obj.field
    out = [MAGIC]
    if F.k == 1:
        out.append(f"field {F.p}")
    else:
        out.append(f"field {F.p} {F.k} " + " ".join(str(c) for c in F.modulus[:-1]))
    if isinstance(obj, AltSubspace):
        out.append(f"alt {obj.n} {obj.d}")
    elif isinstance(obj, MatrixSpace):
        out.append(f"space {obj.m} {obj.n} {obj.d}")
    else:
        raise TypeError(f"cannot emit {type(obj).__name__}")
    for M in obj.basis:
        out.append("matrix")
        for row in np.asarray(M):
            out.append(" ".join(F.element_str(v) for v in row))
    return "\n".join(out) + "\n"


def read(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit(obj))
