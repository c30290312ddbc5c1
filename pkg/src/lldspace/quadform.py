"""Quadratic forms over finite fields and the pfaffian on Mata_4.

A form q(x) = sum_{i <= j} c_ij x_i x_j is stored by its upper-triangular
coefficient matrix, which is valid in every characteristic.  Similarity
means q ~ lambda * (q o P) for a nonzero scalar lambda and an invertible P.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alternating import AltSubspace, pfaffian4_batch, regularity_checks
from .errors import BudgetExceeded, DimensionTooLarge, WrongAmbient, WrongDimension
from .exactfield import Field, all_vectors, kernel

# -- forms --------------------------------------------------------------------


class QuadForm:
    """Quadratic form with upper-triangular coefficients c_ij (i <= j)."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, F: Field, n: int, coeffs):
        C = np.asarray(coeffs, dtype=F.dtype).reshape(n, n)
        self.field = F
        self.n = n
        self.coeffs = np.triu(C)

    @classmethod
    def diagonal(cls, F: Field, values) -> "QuadForm":
        """<a_1, ..., a_n>."""
        return cls(F, len(values), np.diag(np.asarray(values, dtype=F.dtype)))

    @classmethod
    def binary(cls, F: Field, a, b) -> "QuadForm":
        """[a, b] = a x^2 + x y + b y^2."""
        return cls(F, 2, [[a, 1], [0, b]])

    def __eq__(self, other):
        return (isinstance(other, QuadForm) and self.field == other.field
                and self.n == other.n and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field, self.n, self.coeffs.tobytes()))

    def __repr__(self):
        return f"QuadForm({self.field}, {self.coeffs.tolist()})"

    def __call__(self, x) -> int:
        return int(evaluate(self.field, self.coeffs[None], np.asarray(x)[None])[0])

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def polar(self) -> np.ndarray:
        """Symmetric matrix of b(x, y) = q(x + y) - q(x) - q(y)."""
        F = self.field
        C = self.coeffs
        return F.add(C, C.T)

    def substitute(self, P) -> "QuadForm":
        """q o P."""
        F = self.field
        return QuadForm(F, self.n, substitute(F, self.coeffs[None], np.asarray(P, dtype=F.dtype))[0])

    def scale(self, lam) -> "QuadForm":
        return QuadForm(self.field, self.n, self.field.mul(self.coeffs, int(lam)))


def evaluate(F: Field, C: np.ndarray, X: np.ndarray) -> np.ndarray:
    """q_t(x_t) for stacks of coefficient matrices C (N, n, n) and vectors X (N, n)."""
    n = C.shape[-1]
    X = np.asarray(X, dtype=F.dtype)
    out = F.zeros(np.broadcast_shapes(C.shape[:-2], X.shape[:-1]))
    for i in range(n):
        for j in range(i, n):
            term = F.mul(C[..., i, j], F.mul(X[..., i], X[..., j]))
            out = F.add(out, term)
    return out


def substitute(F: Field, C: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Coefficients of q o P for a stack of forms C (N, n, n)."""
    n = C.shape[-1]
    cols = [P[..., :, k] for k in range(n)]
    vals = [evaluate(F, C, c) for c in cols]
    out = F.zeros(np.broadcast_shapes(C.shape[:-2], P.shape[:-2]) + (n, n))
    for k in range(n):
        out[..., k, k] = vals[k]
        for l in range(k + 1, n):
            s = evaluate(F, C, F.add(cols[k], cols[l]))
            out[..., k, l] = F.sub(F.sub(s, vals[k]), vals[l])
    return out


# -- pfaffian restrictions -------------------------------------------------------

def _alt_basis(V) -> np.ndarray:
    if isinstance(V, AltSubspace):
        if V.n != 4:
            raise WrongAmbient("pfaffian restriction needs Mata_4")
        return V.basis
    B = np.asarray(V)
    if B.ndim != 3 or B.shape[1:] != (4, 4):
        raise WrongAmbient("pfaffian restriction needs 4 x 4 alternating matrices")
    return B


def restrict_pfaffian(F: Field, V) -> QuadForm:
    """q(x) = Pf(sum x_i v_i) for an AltSubspace of Mata_4 or an ordered basis."""
    B = np.asarray(_alt_basis(V), dtype=F.dtype)
    d = B.shape[0]
    C = F.zeros((d, d))
    diag = pfaffian4_batch(F, B) if d else F.zeros(0)
    for i in range(d):
        C[i, i] = diag[i]
        for j in range(i + 1, d):
            s = int(pfaffian4_batch(F, F.add(B[i], B[j])[None])[0])
            C[i, j] = F.sub(F.sub(s, int(diag[i])), int(diag[j]))
    return QuadForm(F, d, C)


def totally_isotropic(F: Field, V) -> bool:
    return restrict_pfaffian(F, V).is_zero()


# -- classification -------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityClass:
    """Similarity class of a form: tag, canonical representative, notes."""

    tag: str
    representative: QuadForm
    detail: str = ""


def _square_class(F: Field, a: int) -> int:
    return 1 if F.is_square(a) else F.least_nonsquare()


def _gram_diagonal(F: Field, q: QuadForm) -> list[int]:
    """Diagonal of a congruence diagonalization of q (odd characteristic)."""
    n = q.n
    half = F.inv(2)
    G = F.mul(q.polar(), half)
    G = np.array(G, dtype=F.dtype)
    diag = []
    for k in range(n):
        sub = G[k:, k:]
        if not sub.any():
            diag.extend([0] * (n - k))
            break
        if G[k, k] == 0:
            nz = np.nonzero(np.diagonal(sub))[0]
            if len(nz):
                i = k + int(nz[0])
                G[[k, i]] = G[[i, k]]
                G[:, [k, i]] = G[:, [i, k]]
            else:
                i, j = np.argwhere(sub != 0)[0] + k
                # e_i <- e_i + e_j makes the diagonal entry 2 G_ij != 0
                G[i] = F.add(G[i], G[j])
                G[:, i] = F.add(G[:, i], G[:, j])
                G[[k, i]] = G[[i, k]]
                G[:, [k, i]] = G[:, [i, k]]
        piv = int(G[k, k])
        inv = F.inv(piv)
        for i in range(k + 1, n):
            f = F.mul(int(G[i, k]), inv)
            if f:
                G[i] = F.sub(G[i], F.mul(f, G[k]))
                G[:, i] = F.sub(G[:, i], F.mul(f, G[:, k]))
        diag.append(piv)
    return diag


def _arf_rep(F: Field) -> int:
    """Least element with nonzero absolute trace (a nontrivial Arf class)."""
    for a in range(F.q):
        if F.trace(a):
            return a
    raise ValueError("no element of nonzero trace")


def classify_dim2(q: QuadForm) -> SimilarityClass:
    """Similarity class of a 2-dimensional form.

    Odd characteristic: D0, D1, or R(delta) = <1, delta> with delta the
    discriminant class, represented in {1, least non-square}.
    Characteristic 2: D0, D1 (the D2(t) family is empty since every
    element is a square), or R(delta) = [1, delta] with delta = 0 for the
    trivial Arf class and the least element of trace 1 otherwise.
    """
    F = q.field
    if q.n != 2:
        raise WrongDimension("classify_dim2 needs a 2-dimensional form")
    c11, c12, c22 = (int(q.coeffs[0, 0]), int(q.coeffs[0, 1]), int(q.coeffs[1, 1]))
    if q.is_zero():
        return SimilarityClass("D0", QuadForm.diagonal(F, [0, 0]))
    if F.p != 2:
        diag = _gram_diagonal(F, q)
        nz = [a for a in diag if a]
        if len(nz) == 1:
            return SimilarityClass("D1", QuadForm.diagonal(F, [1, 0]))
        delta = _square_class(F, F.mul(nz[0], nz[1]))
        return SimilarityClass(f"R({delta})", QuadForm.diagonal(F, [1, delta]))
    if c12 == 0:
        return SimilarityClass("D1", QuadForm.diagonal(F, [1, 0]),
                               "D2(t) is vacuous: every element of a finite field of "
                               "characteristic 2 is a square")
    inv = F.inv(F.mul(c12, c12))
    prod = F.mul(F.mul(c11, c22), inv)
    delta = 0 if F.arf_class(prod) == "trivial" else _arf_rep(F)
    return SimilarityClass(f"R({delta})", QuadForm.binary(F, 1, delta))


@dataclass(frozen=True)
class Dim3Class:
    """rank and discriminant class (odd characteristic) or a char-2 tag."""

    rank: int
    disc: int | None = None
    tag: str = ""


def classify_dim3(q: QuadForm) -> Dim3Class:
    """Similarity invariant of a 3-dimensional form.

    Odd characteristic: (rank, disc) where disc is the square class of the
    nondegenerate part; scaling by lambda multiplies it by lambda^rank, so
    for odd rank the class collapses to 1.  Characteristic 2: one of the
    tags 'zero', '<1,0,0>', '[0,0]+<0>', '[1,d]+<0>', '[0,0]+<1>'.
    """
    F = q.field
    if q.n != 3:
        raise WrongDimension("classify_dim3 needs a 3-dimensional form")
    if F.p != 2:
        diag = [a for a in _gram_diagonal(F, q) if a]
        r = len(diag)
        disc = 1
        if r == 2:
            disc = _square_class(F, F.mul(diag[0], diag[1]))
        return Dim3Class(r, disc, f"rank{r}" + (f"-disc{disc}" if r == 2 else ""))
    if q.is_zero():
        return Dim3Class(0, None, "zero")
    B = q.polar()
    if not B.any():
        return Dim3Class(1, None, "<1,0,0>")
    rad = kernel(F, B).basis[0]
    if q(rad):
        return Dim3Class(3, None, "[0,0]+<1>")
    # a hyperbolic pair e, f with b(e, f) = 1 in a complement of the radical
    i, j = np.argwhere(np.triu(B) != 0)[0]
    e = np.zeros(3, dtype=F.dtype)
    f = np.zeros(3, dtype=F.dtype)
    e[i] = 1
    f[j] = F.inv(int(B[i, j]))
    arf = F.arf_class(F.mul(q(e), q(f)))
    return Dim3Class(2, None, "[0,0]+<0>" if arf == "trivial" else "[1,d]+<0>")


# -- brute-force similarity orbits --------------------------------------------

def _form_index(F: Field, C: np.ndarray) -> np.ndarray:
    n = C.shape[-1]
    iu = np.triu_indices(n)
    flat = C[..., iu[0], iu[1]].astype(np.int64)
    idx = np.zeros(flat.shape[:-1], dtype=np.int64)
    for t in range(flat.shape[-1]):
        idx = idx * F.q + flat[..., t]
    return idx


def _all_forms(F: Field, n: int) -> np.ndarray:
    N = n * (n + 1) // 2
    V = all_vectors(F, N)
    C = F.zeros((len(V), n, n))
    iu = np.triu_indices(n)
    C[:, iu[0], iu[1]] = V
    return C


def _gl_generators(F: Field, n: int) -> list[np.ndarray]:
    g = F.primitive_element
    gens = []
    D = F.eye(n)
    D[0, 0] = g
    gens.append(D)
    for i in range(n):
        for j in range(n):
            if i != j:
                T = F.eye(n)
                T[i, j] = 1
                gens.append(T)
    if n >= 2:
        P = F.zeros((n, n))
        for i in range(n):
            P[i, (i + 1) % n] = 1
        gens.append(P)
    return gens


def similarity_orbits(F: Field, n: int, budget: int = 10**6) -> np.ndarray:
    """Orbit label of every form (indexed by base-q coefficient order).

    Union-find over generators of GL_n and of the scalar group; forms are
    indexed by their upper-triangular coefficients read row by row.
    """
    total = F.q ** (n * (n + 1) // 2)
    if total > budget:
        raise BudgetExceeded("quadratic forms", total, budget)
    C = _all_forms(F, n)
    parent = np.arange(total)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    g = F.primitive_element
    images = [_form_index(F, substitute(F, C, P)) for P in _gl_generators(F, n)]
    images.append(_form_index(F, F.mul(C, g)))
    for img in images:
        for a, b in zip(range(total), img):
            ra, rb = find(a), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return np.array([find(a) for a in range(total)])


# -- congruence of subspaces of Mata_4 ----------------------------------------------

def subspaces_congruent(F: Field, V1: AltSubspace, V2: AltSubspace) -> bool:
    """Decide congruence of two subspaces of Mata_4 of dimension <= 3.

    Non-lagrangian subspaces are congruent iff their pfaffian restrictions
    are similar; the two lagrangian orbits are told apart by
    incompressibility.
    """
    for V in (V1, V2):
        if V.n != 4:
            raise WrongAmbient("congruence test needs subspaces of Mata_4")
        if V.d > 3:
            raise DimensionTooLarge("congruence test handles dimension <= 3")
    if V1.d != V2.d:
        return False
    d = V1.d
    q1, q2 = restrict_pfaffian(F, V1), restrict_pfaffian(F, V2)
    lag1 = d == 3 and q1.is_zero()
    lag2 = d == 3 and q2.is_zero()
    if lag1 or lag2:
        if not (lag1 and lag2):
            return False
        return regularity_checks(V1).incompressible == regularity_checks(V2).incompressible
    if d == 0:
        return True
    if d == 1:
        return q1.is_zero() == q2.is_zero()
    if d == 2:
        return classify_dim2(q1).tag == classify_dim2(q2).tag
    return classify_dim3(q1) == classify_dim3(q2)


__all__ = [
    "QuadForm", "SimilarityClass", "Dim3Class", "restrict_pfaffian", "totally_isotropic",
    "classify_dim2", "classify_dim3", "similarity_orbits", "subspaces_congruent",
    "evaluate", "substitute",
]
