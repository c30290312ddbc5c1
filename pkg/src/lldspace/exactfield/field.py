"""Finite fields GF(p^k).

An element of GF(p^k) = GF(p)[x]/(f) is the residue class of
c_0 + c_1 x + ... + c_{k-1} x^{k-1}; it is stored as the integer
sum(c_i * p**i).  For k = 1 this is the usual residue in [0, p).  Arrays of
elements are numpy integer arrays (object arrays when p is too large for
int64 products) and every arithmetic method accepts scalars or arrays.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint, isprime

from ..errors import (
    DivisionByZero,
    FieldTooLarge,
    NotPrime,
    ReducibleModulus,
    WrongCharacteristic,
)

_TABLE_LIMIT = 1 << 20
_INT64_PRIME_LIMIT = 1 << 31


# -- polynomials over GF(p), coefficient lists in ascending order ------------

def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(c, p: int) -> int:
    v = 0
    for x in reversed(c):
        v = v * p + int(x)
    return v


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
    return prod[:k]


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo b (b nonzero, trimmed)."""
    a = _trim(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return a


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Rabin-style test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    k = len(mod) - 1
    if k == 1:
        return True
    if mod[0] == 0:
        return False

    def xpow_pk(j):
        # x^(p^j) mod f by repeated p-th powering
        cur = [0] * k
        cur[1] = 1
        for _ in range(j):
            cur = _poly_powmod(cur, p, mod, p)
        return cur

    x = [0] * k
    x[1] = 1
    if xpow_pk(k) != x:
        return False
    for ell in factorint(k):
        h = xpow_pk(k // ell)
        h = [(h[i] - x[i]) % p for i in range(k)]
        if _poly_gcd_degree(list(mod), h, p) > 0:
            return False
    return True


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    b = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, b, mod, p)
        b = _poly_mulmod(b, b, mod, p)
        e >>= 1
    return result


def _poly_gcd_degree(a: list[int], b: list[int], p: int) -> int:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return len(a) - 1


@lru_cache(maxsize=None)
def _auto_modulus(p: int, k: int) -> tuple[int, ...]:
    # counting order over (c0, ..., c_{k-1}) with c0 the least significant digit
    for n in range(p**k):
        low = _digits(n, p, k)
        mod = low + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """Context for GF(p^k); immutable and hashable."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p**k
        if k == 1 and p < _INT64_PRIME_LIMIT:
            self.dtype = np.int64
        elif k > 1 and self.q <= _TABLE_LIMIT:
            self.dtype = np.int64
        else:
            self.dtype = object

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def char2(self) -> bool:
        return self.p == 2

    # -- element conversion -------------------------------------------------
    def from_coeffs(self, coeffs) -> int:
        c = list(coeffs)
        if len(c) != self.k or any(not 0 <= int(x) < self.p for x in c):
            raise ValueError(f"expected {self.k} residues mod {self.p}")
        return _undigits(c, self.p)

    def coeffs(self, a: int) -> list[int]:
        return _digits(int(a), self.p, self.k)

    def gen(self) -> int:
        """The class of x (for k = 1 this is the residue 0 + 1 = 1)."""
        return self.p if self.k > 1 else 1

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=self.dtype) if self.dtype is not object else np.array(
            range(self.q), dtype=object
        )

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=self.dtype)
        return arr

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype) if self.dtype is not object else np.full(
            shape, 0, dtype=object
        )

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    # -- tables for extension fields ----------------------------------------
    @cached_property
    def _primitive(self) -> int:
        order = self.q - 1
        primes = list(factorint(order)) if order > 1 else []
        for g in range(1, self.q):
            if all(self._pow_scalar(g, order // ell) != 1 for ell in primes):
                return g
        raise AssertionError("no primitive element")

    @property
    def primitive_element(self) -> int:
        """Least generator of the multiplicative group."""
        return self._primitive

    @cached_property
    def _tables(self):
        q = self.q
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        g = self._primitive
        x = 1
        gc = self.coeffs(g)
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = _undigits(_poly_mulmod(self.coeffs(x), gc, list(self.modulus), self.p), self.p)
        exp[q - 1 : 2 * q - 2] = exp[: q - 1]
        return exp, log

    # -- scalar arithmetic --------------------------------------------------
    def _mul_scalar(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return _undigits(
            _poly_mulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p), self.p
        )

    def _add_scalar(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return _undigits(
            [(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))], self.p
        )

    def _neg_scalar(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _undigits([-x % self.p for x in self.coeffs(a)], self.p)

    def _pow_scalar(self, a: int, e: int) -> int:
        if e < 0:
            a = self._inv_scalar(a)
            e = -e
        if self.k == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self._mul_scalar(result, a)
            a = self._mul_scalar(a, a)
            e >>= 1
        return result

    def _inv_scalar(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._pow_scalar(a, self.q - 2)

    # -- vectorized arithmetic (scalars or arrays) --------------------------
    def _is_scalar(self, *xs) -> bool:
        return all(np.ndim(x) == 0 for x in xs)

    def add(self, a, b):
        if self._is_scalar(a, b):
            return self._add_scalar(int(a), int(b))
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.dtype is object:
            return np.frompyfunc(self._add_scalar, 2, 1)(a, b).astype(object)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        place = 1
        for _ in range(self.k):
            out += ((a // place + b // place) % self.p) * place
            place *= self.p
        return out

    def neg(self, a):
        if self._is_scalar(a):
            return self._neg_scalar(int(a))
        a = np.asarray(a, dtype=self.dtype)
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a.copy()
        if self.dtype is object:
            return np.frompyfunc(self._neg_scalar, 1, 1)(a).astype(object)
        out = np.zeros(a.shape, dtype=np.int64)
        place = 1
        for _ in range(self.k):
            out += ((-(a // place)) % self.p) * place
            place *= self.p
        return out

    def sub(self, a, b):
        if self.k == 1 and not self._is_scalar(a, b):
            return (np.asarray(a, dtype=self.dtype) - np.asarray(b, dtype=self.dtype)) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._is_scalar(a, b):
            return self._mul_scalar(int(a), int(b))
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        if self.k == 1:
            return a * b % self.p
        if self.dtype is object:
            return np.frompyfunc(self._mul_scalar, 2, 1)(a, b).astype(object)
        exp, log = self._tables
        res = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        if self._is_scalar(a):
            return self._inv_scalar(int(a))
        a = np.asarray(a, dtype=self.dtype)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self.dtype is object or (self.k == 1 and self.p > _TABLE_LIMIT):
            return np.frompyfunc(self._inv_scalar, 1, 1)(a).astype(self.dtype)
        if self.k == 1:
            return self._inv_table[a]
        exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    @cached_property
    def _inv_table(self) -> np.ndarray:
        t = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            t[a] = pow(a, self.p - 2, self.p)
        return t

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if self._is_scalar(a):
            return self._pow_scalar(int(a), int(e))
        a = np.asarray(a, dtype=self.dtype)
        if e < 0:
            a = self.inv(a)
            e = -e
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def arith(self, op: str, *operands):
        """Dispatch by name: add, sub, mul, neg, inv, div, pow."""
        fn = {
            "add": self.add,
            "sub": self.sub,
            "mul": self.mul,
            "neg": self.neg,
            "inv": self.inv,
            "div": self.div,
            "pow": self.pow,
        }[op]
        return fn(*operands)

    # -- matrix products ----------------------------------------------------
    def matmul(self, a, b):
        """Matrix product over the field; broadcasts like numpy.matmul."""
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        if self.k == 1 and self.dtype is not object and self.p < (1 << 26):
            inner = a.shape[-1]
            if inner * (self.p - 1) ** 2 < (1 << 62):
                return np.matmul(a, b) % self.p
        if self.k == 1:
            return np.matmul(a, b) % self.p if self.dtype is object else self._matmul_slow(a, b)
        return self._matmul_slow(a, b)

    def _matmul_slow(self, a, b):
        if a.ndim == 1:
            return self._matmul_slow(a[None, :], b)[..., 0, :]
        if b.ndim == 1:
            return self._matmul_slow(a, b[:, None])[..., 0]
        inner = a.shape[-1]
        out = None
        for t in range(inner):
            term = self.mul(a[..., :, t : t + 1], b[..., t : t + 1, :])
            out = term if out is None else self.add(out, term)
        if out is None:
            shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
            return self.zeros(shape)
        return out

    def dot(self, coeffs, mats):
        """Linear combination sum_i coeffs[..., i] * mats[i] over the field.

        ``coeffs`` has shape (..., d) and ``mats`` shape (d, *rest); returns
        shape (..., *rest).
        """
        coeffs = np.asarray(coeffs, dtype=self.dtype)
        mats = np.asarray(mats, dtype=self.dtype)
        d = mats.shape[0]
        rest = mats.shape[1:]
        flat = mats.reshape(d, -1)
        out = self.matmul(coeffs.reshape(-1, d), flat)
        return out.reshape(coeffs.shape[:-1] + rest)

    # -- squares and the Arf map --------------------------------------------
    def is_square(self, a) -> bool:
        a = int(a)
        if a == 0 or self.p == 2:
            return True
        return self._pow_scalar(a, (self.q - 1) // 2) == 1

    def least_nonsquare(self) -> int:
        if self.p == 2:
            raise WrongCharacteristic("every element is a square in characteristic 2")
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise AssertionError("unreachable")

    def sqrt(self, a) -> int:
        """Some square root of a square (brute force for small q, else Frobenius/Tonelli)."""
        a = int(a)
        if self.p == 2:
            return self._pow_scalar(a, self.q // 2)
        if not self.is_square(a):
            raise ValueError("not a square")
        if self.q <= 4096:
            sq = self.mul(self.elements(), self.elements())
            return int(np.nonzero(sq == a)[0][0])
        return self._tonelli(a)

    def _tonelli(self, a: int) -> int:
        if a == 0:
            return 0
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self.least_nonsquare()
        m, c = s, self._pow_scalar(z, t)
        x = self._pow_scalar(a, (t + 1) // 2)
        b = self._pow_scalar(a, t)
        while b != 1:
            i, bb = 0, b
            while bb != 1:
                bb = self._mul_scalar(bb, bb)
                i += 1
            f = self._pow_scalar(c, 1 << (m - i - 1))
            m, c = i, self._mul_scalar(f, f)
            x = self._mul_scalar(x, f)
            b = self._mul_scalar(b, c)
        return x

    def trace(self, a) -> int:
        """Absolute trace GF(q) -> GF(p): a + a^p + ... + a^(p^(k-1))."""
        a = int(a)
        total, cur = 0, a
        for _ in range(self.k):
            total = self._add_scalar(total, cur)
            cur = self._pow_scalar(cur, self.p)
        return total

    def arf_class(self, a) -> str:
        """Class of a in K / {x^2 + x}: 'trivial' or 'nontrivial'.

        In characteristic 2, a lies in the image of x -> x^2 + x iff its
        absolute trace vanishes.
        """
        if self.p != 2:
            raise WrongCharacteristic("the Arf class is defined in characteristic 2")
        return "trivial" if self.trace(a) == 0 else "nontrivial"

    def element_str(self, a) -> str:
        a = int(a)
        if self.k == 1:
            return str(a)
        return ":".join(str(c) for c in self.coeffs(a))


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, k, modulus)


def make_field(p: int, k: int = 1, modulus="auto") -> Field:
    """Build GF(p^k); ``modulus`` is 'auto' or ascending coefficients.

    A coefficient list may have length k (leading 1 implicit) or k + 1.
    """
    p, k = int(p), int(k)
    if k < 1:
        raise ValueError("degree must be at least 1")
    if p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p**k >= 1 << 63:
        raise FieldTooLarge(f"{p}^{k} does not fit in 63 bits")
    if isinstance(modulus, str):
        if modulus != "auto":
            raise ValueError("modulus must be 'auto' or a coefficient list")
        if k == 1:
            return _cached_field(p, 1, (0, 1))
        return _cached_field(p, k, _auto_modulus(p, k))
    mod = [int(c) for c in modulus]
    if len(mod) == k:
        mod = mod + [1]
    if len(mod) != k + 1 or mod[-1] != 1:
        raise ReducibleModulus("modulus must be monic of degree k")
    if any(not 0 <= c < p for c in mod):
        raise ReducibleModulus("modulus coefficients must lie in [0, p)")
    if not _is_irreducible(mod, p):
        raise ReducibleModulus(f"{mod} is reducible over GF({p})")
    if k == 1:
        mod = [0, 1]
    return _cached_field(p, k, tuple(mod))
