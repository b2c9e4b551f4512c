"""Small finite fields as lookup tables, with batched linear algebra.

Elements of GF(p^k) are encoded as integers ``0..q-1`` whose base-p digits
are the coefficients of a polynomial in the generator ``x`` (lowest digit is
the constant term).  Prime fields use the same encoding with ``k = 1``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import NotPrimePower, UnsupportedField

__all__ = ["GF", "field", "prime_power_decomposition"]

# Conway polynomials, coefficients from constant term upwards (monic)
_CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
}

_MAX_PRIME = 1 << 12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q = p^k``; raises :class:`NotPrimePower` otherwise."""
    q = int(q)
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, k


class GF:
    """The field with ``q`` elements, backed by addition and multiplication tables."""

    def __init__(self, q: int):
        p, k = prime_power_decomposition(q)
        if k == 1 and p > _MAX_PRIME:
            raise UnsupportedField(f"prime {p} is too large for table arithmetic")
        if k > 1 and (p, k) not in _CONWAY:
            raise UnsupportedField(f"GF({q}) has no built-in defining polynomial")
        self.q, self.p, self.k = q, p, k
        digits = np.array([[(a // p**i) % p for i in range(k)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        if k == 1:
            a = np.arange(q, dtype=np.int64)
            self.mul_table = (a[:, None] * a[None, :]) % p
        else:
            self.mul_table = self._poly_mul_table(digits, weights, _CONWAY[(p, k)])
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_table[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        self.primitive = self._find_primitive()

    def _poly_mul_table(self, digits, weights, modulus) -> np.ndarray:
        p, k, q = self.p, self.k, self.q
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k - 1)
                for i in range(k):
                    for j in range(k):
                        prod[i + j] += int(digits[a, i]) * int(digits[b, j])
                for d in range(2 * k - 2, k - 1, -1):
                    c = prod[d] % p
                    if c:
                        for i in range(k + 1):
                            prod[d - k + i] -= c * modulus[i]
                val = sum((prod[i] % p) * int(weights[i]) for i in range(k))
                table[a, b] = table[b, a] = val
        return table

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q) if self.q > 2 else ():
            x, order = g, 1
            while x != 1:
                x = int(self.mul_table[x, g])
                order += 1
            if order == self.q - 1:
                return g
        return 1

    @property
    def additive_basis(self) -> list[int]:
        """A basis of GF(q) over its prime field."""
        return [self.p**i for i in range(self.k)]

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # elementwise operations on integer arrays
    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        return self.inv_table[a]

    def sum(self, arr, axis: int = -1) -> np.ndarray:
        arr = np.moveaxis(np.asarray(arr), axis, -1)
        out = np.zeros(arr.shape[:-1], dtype=np.int64)
        for i in range(arr.shape[-1]):
            out = self.add_table[out, arr[..., i]]
        return out

    def matmul(self, X, Y) -> np.ndarray:
        """Batched matrix product with numpy broadcasting over leading axes."""
        X, Y = np.asarray(X), np.asarray(Y)
        n = X.shape[-1]
        out = None
        for i in range(n):
            term = self.mul_table[X[..., :, i : i + 1], Y[..., i : i + 1, :]]
            out = term if out is None else self.add_table[out, term]
        if out is None:
            shape = np.broadcast_shapes(X.shape[:-2], Y.shape[:-2]) + (X.shape[-2], Y.shape[-1])
            return np.zeros(shape, dtype=np.int64)
        return out

    def digits(self, index: np.ndarray, length: int) -> np.ndarray:
        """Base-q digits of ``index`` (lowest first) as an ``(..., length)`` array."""
        powers = self.q ** np.arange(length, dtype=np.int64)
        return (np.asarray(index, dtype=np.int64)[..., None] // powers) % self.q

    def undigits(self, digits: np.ndarray) -> np.ndarray:
        powers = self.q ** np.arange(digits.shape[-1], dtype=np.int64)
        return (np.asarray(digits, dtype=np.int64) * powers).sum(axis=-1)

    # linear algebra
    def rank(self, M) -> np.ndarray:
        """Ranks of a batch of matrices of shape ``(..., rows, cols)``."""
        M = np.array(M, dtype=np.int64, copy=True)
        batch_shape = M.shape[:-2]
        rows, cols = M.shape[-2:]
        M = M.reshape((-1, rows, cols))
        B = M.shape[0]
        rank = np.zeros(B, dtype=np.int64)
        ar = np.arange(B)
        row_ids = np.arange(rows)
        for c in range(cols):
            if rows == 0:
                break
            col = M[:, :, c]
            cand = (col != 0) & (row_ids[None, :] >= rank[:, None])
            has = cand.any(axis=1)
            if not has.any():
                continue
            b = ar[has]
            piv = np.argmax(cand[has], axis=1)
            r = rank[has]
            # swap pivot row into position r
            prow = M[b, piv].copy()
            M[b, piv] = M[b, r]
            prow = self.mul_table[self.inv_table[prow[:, c]][:, None], prow]
            M[b, r] = prow
            factors = M[b, :, c].copy()
            factors[np.arange(len(b)), r] = 0
            sub = self.mul_table[factors[:, :, None], prow[:, None, :]]
            M[b] = self.add_table[M[b], self.neg_table[sub]]
            rank[has] += 1
        return rank.reshape(batch_shape)

    def nullspace(self, M) -> np.ndarray:
        """Basis (as rows) of ``{x : M x = 0}`` for a single matrix."""
        M = np.array(M, dtype=np.int64, copy=True)
        rows, cols = M.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            nz = [i for i in range(r, rows) if M[i, c] != 0]
            if not nz:
                continue
            i = nz[0]
            M[[r, i]] = M[[i, r]]
            M[r] = self.mul_table[self.inv_table[M[r, c]], M[r]]
            for j in range(rows):
                if j != r and M[j, c] != 0:
                    M[j] = self.add_table[M[j], self.neg_table[self.mul_table[M[j, c], M[r]]]]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, c in enumerate(pivots):
                basis[k, c] = self.neg_table[M[i, f]]
        return basis

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
