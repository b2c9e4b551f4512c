"""Exact point counts of preprojective varieties and potential fibers over GF(q)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from ..errors import TooLarge
from ..quiver import LoopDoubleQuiver, Quiver, loop_double
from .field import GF, field

__all__ = [
    "CountReport",
    "count_preprojective",
    "count_potential_fiber",
    "potential_fiber_distribution",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 10**8
_CHUNK = 1 << 15


@dataclass(frozen=True)
class CountReport:
    quiver: dict
    dim: tuple[int, ...]
    q: int
    count: int
    method: str
    what: str

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("counts are non-negative")

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver,
            "dim": list(self.dim),
            "q": self.q,
            "what": self.what,
            "count": self.count,
            "method": self.method,
        }


def _guard(q: int, exponent: int, what: str) -> None:
    if q**exponent > ENUMERATION_LIMIT:
        raise TooLarge(f"{what} would enumerate {q}^{exponent} tuples (limit {ENUMERATION_LIMIT})")


def _chunks(total: int) -> Iterator[np.ndarray]:
    for start in range(0, total, _CHUNK):
        yield np.arange(start, min(total, start + _CHUNK), dtype=np.int64)


class _Layout:
    """Flat storage of matrix tuples: arrow ``k`` is an ``alpha_t x alpha_s`` block."""

    def __init__(self, arrows: Sequence[tuple[int, int]], alpha: Sequence[int], transpose: bool = False):
        self.blocks = []
        off = 0
        for s, t in arrows:
            rows, cols = (alpha[s], alpha[t]) if transpose else (alpha[t], alpha[s])
            self.blocks.append((off, rows, cols))
            off += rows * cols
        self.size = off

    def split(self, flat: np.ndarray) -> list[np.ndarray]:
        return [flat[:, o : o + r * c].reshape(-1, r, c) for o, r, c in self.blocks]


def _trace(F: GF, M: np.ndarray) -> np.ndarray:
    n = M.shape[-1]
    if n == 0:
        return np.zeros(M.shape[:-2], dtype=np.int64)
    return F.sum(np.stack([M[..., i, i] for i in range(n)], axis=-1))


def _relation_system(Q: Quiver, alpha: tuple[int, ...]):
    """Sparse description of ``X -> sum_{t(a)=i} A_a X_a - sum_{s(a)=i} X_a A_a``.

    Returns ``(n_eq, n_unknown, entries)`` where each entry ``(eq, unk, a_idx, sign)``
    adds ``sign * A_flat[a_idx]`` to the matrix coefficient.
    """
    eq_off, off = [], 0
    for a in alpha:
        eq_off.append(off)
        off += a * a
    n_eq = off
    A_lay = _Layout(Q.arrows, alpha)
    X_lay = _Layout(Q.arrows, alpha, transpose=True)
    entries = []
    for k, (s, t) in enumerate(Q.arrows):
        a_off = A_lay.blocks[k][0]
        x_off = X_lay.blocks[k][0]
        ns, nt = alpha[s], alpha[t]
        # A X at vertex t: (p, r) gets A[p, u] X[u, r]
        for p in range(nt):
            for r in range(nt):
                for u in range(ns):
                    entries.append((eq_off[t] + p * nt + r, x_off + u * nt + r, a_off + p * ns + u, 1))
        # - X A at vertex s: (p, r) gets X[p, w] A[w, r]
        for p in range(ns):
            for r in range(ns):
                for w in range(nt):
                    entries.append((eq_off[s] + p * ns + r, x_off + p * nt + w, a_off + w * ns + r, -1))
    return n_eq, X_lay.size, entries


def _count_linear_fiber(Q: Quiver, alpha: tuple[int, ...], F: GF) -> int:
    D = Q.rep_dimension(alpha)
    n_eq, n_unk, entries = _relation_system(Q, alpha)
    rank_hist = np.zeros(n_unk + 1, dtype=np.int64)
    for idx in _chunks(F.q**D):
        A = F.digits(idx, D)
        M = np.zeros((len(idx), n_eq, n_unk), dtype=np.int64)
        for eq, unk, a_idx, sign in entries:
            val = A[:, a_idx] if sign > 0 else F.neg(A[:, a_idx])
            M[:, eq, unk] = F.add(M[:, eq, unk], val)
        ranks = F.rank(M) if n_eq and n_unk else np.zeros(len(idx), dtype=np.int64)
        rank_hist += np.bincount(ranks, minlength=n_unk + 1)
    return sum(int(c) * F.q ** (n_unk - r) for r, c in enumerate(rank_hist))


def _count_direct(Q: Quiver, alpha: tuple[int, ...], F: GF) -> int:
    A_lay = _Layout(Q.arrows, alpha)
    X_lay = _Layout(Q.arrows, alpha, transpose=True)
    D = A_lay.size
    total = 0
    for idx in _chunks(F.q ** (2 * D)):
        digits = F.digits(idx, 2 * D)
        As, Xs = A_lay.split(digits[:, :D]), X_lay.split(digits[:, D:])
        ok = np.ones(len(idx), dtype=bool)
        for i, n in enumerate(alpha):
            if n == 0:
                continue
            rel = np.zeros((len(idx), n, n), dtype=np.int64)
            for k, (s, t) in enumerate(Q.arrows):
                if t == i:
                    rel = F.add(rel, F.matmul(As[k], Xs[k]))
                if s == i:
                    rel = F.sub(rel, F.matmul(Xs[k], As[k]))
            ok &= (rel == 0).all(axis=(1, 2))
        total += int(ok.sum())
    return total


def count_preprojective(Q: Quiver, alpha: Sequence[int], q: int, method: str = "linear-fiber") -> CountReport:
    """Number of GF(q)-points of the preprojective variety ``R(Pi_Q, alpha)``.

    ``linear-fiber`` enumerates the unstarred matrices and adds
    ``q^{dim ker}`` for the (linear) relation in the starred ones;
    ``direct-enumeration`` tests every tuple.
    """
    alpha = Q.check_dim(alpha)
    F = field(q)
    D = Q.rep_dimension(alpha)
    if method == "linear-fiber":
        _guard(q, D, "count_preprojective")
        count = _count_linear_fiber(Q, alpha, F)
    elif method == "direct-enumeration":
        _guard(q, 2 * D, "count_preprojective")
        count = _count_direct(Q, alpha, F)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountReport(Q.to_json(), alpha, q, count, method, "preprojective")


@lru_cache(maxsize=64)
def _fiber_distribution(arrows: tuple, vertices: int, alpha: tuple[int, ...], q: int) -> tuple[int, ...]:
    F = field(q)
    Q = Quiver(vertices, arrows)
    A_lay = _Layout(Q.arrows, alpha)
    X_lay = _Layout(Q.arrows, alpha, transpose=True)
    L_lay = _Layout(tuple((i, i) for i in range(vertices)), alpha)
    D, E, G = A_lay.size, X_lay.size, L_lay.size
    hist = np.zeros(q, dtype=np.int64)
    for idx in _chunks(q ** (D + E + G)):
        digits = F.digits(idx, D + E + G)
        As = A_lay.split(digits[:, :D])
        Xs = X_lay.split(digits[:, D : D + E])
        Ls = L_lay.split(digits[:, D + E :])
        w = np.zeros(len(idx), dtype=np.int64)
        for k, (s, t) in enumerate(Q.arrows):
            w = F.add(w, _trace(F, F.matmul(F.matmul(As[k], Xs[k]), Ls[t])))
            w = F.sub(w, _trace(F, F.matmul(F.matmul(Xs[k], As[k]), Ls[s])))
        hist += np.bincount(w, minlength=q)
    return tuple(int(h) for h in hist)


def potential_fiber_distribution(Qhat: LoopDoubleQuiver | Quiver, alpha: Sequence[int], q: int) -> tuple[int, ...]:
    """Counts of ``tr W = c`` for every field element ``c`` (indexed by its encoding)."""
    if isinstance(Qhat, Quiver):
        Qhat = loop_double(Qhat)
    alpha = Qhat.base.check_dim(alpha)
    field(q)
    _guard(q, Qhat.quiver.rep_dimension(alpha), "count_potential_fiber")
    return _fiber_distribution(Qhat.base.arrows, Qhat.vertices, alpha, q)


def count_potential_fiber(Qhat: LoopDoubleQuiver | Quiver, alpha: Sequence[int], q: int, c: int) -> CountReport:
    """Number of matrix tuples of the loop-double with ``tr W = c``, by direct enumeration."""
    if isinstance(Qhat, Quiver):
        Qhat = loop_double(Qhat)
    alpha = Qhat.base.check_dim(alpha)
    dist = potential_fiber_distribution(Qhat, alpha, q)
    if not 0 <= c < q:
        raise ValueError(f"field element {c} out of range for GF({q})")
    return CountReport(Qhat.base.to_json(), alpha, q, dist[c], "direct-enumeration", f"fiber{c}")
