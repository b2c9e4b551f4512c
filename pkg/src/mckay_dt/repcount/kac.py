"""Brute-force Kac polynomials, interpolation, and automorphism motives."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from ..coeff_ring import L, MotiveScalar, pochhammer
from ..errors import (
    InsufficientSamples,
    MissingKacEntry,
    NonIntegerCoefficients,
    TooLarge,
)
from ..quiver import Quiver
from .field import GF, field, prime_power_decomposition

__all__ = [
    "IntPolynomial",
    "KacTable",
    "kac_bruteforce",
    "interpolate_kac",
    "aut_motive",
    "count_automorphisms",
    "endomorphism_basis",
]

KAC_REP_LIMIT = 10**7
KAC_END_LIMIT = 10**6


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in ``q``; ``coeffs[i]`` multiplies ``q^i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def to_motive(self) -> MotiveScalar:
        """Substitute ``q = L``."""
        return MotiveScalar.laurent(0, [x for c in self.coeffs for x in (c, 0)])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class KacTable:
    """``alpha -> a_alpha(q)``.

    Lookups go to ``entries`` first, then to ``rule`` (a closed form).  When
    neither applies, a ``complete`` table answers 0 and an incomplete one
    raises :class:`MissingKacEntry`.
    """

    entries: Mapping[tuple[int, ...], IntPolynomial] = dc_field(default_factory=dict)
    source: str = "closed-form"
    rule: Callable[[tuple[int, ...]], IntPolynomial] | None = None
    complete: bool = True

    def get(self, alpha: Sequence[int]) -> IntPolynomial:
        alpha = tuple(alpha)
        if alpha in self.entries:
            return self.entries[alpha]
        if self.rule is not None:
            return self.rule(alpha)
        if self.complete:
            return IntPolynomial(())
        raise MissingKacEntry(f"no Kac polynomial recorded for {alpha}")

    def motive(self, alpha: Sequence[int]) -> MotiveScalar:
        return self.get(alpha).to_motive()


# ------------------------------------------------------------- brute force
def _gl_generators(F: GF, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs ``(g, g^{-1})`` generating GL_n(F)."""
    if n == 0:
        return []
    gens = []
    g = np.eye(n, dtype=np.int64)
    g[0, 0] = F.primitive
    ginv = np.eye(n, dtype=np.int64)
    ginv[0, 0] = F.inv(F.primitive)
    gens.append((g, ginv))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in F.additive_basis:
                e = np.eye(n, dtype=np.int64)
                e[i, j] = t
                einv = np.eye(n, dtype=np.int64)
                einv[i, j] = F.neg(t)
                gens.append((e, einv))
    return gens


def _blocks(Q: Quiver, alpha):
    out, off = [], 0
    for s, t in Q.arrows:
        out.append((off, alpha[t], alpha[s]))
        off += alpha[t] * alpha[s]
    return out, off


def _orbit_labels(Q: Quiver, alpha, F: GF, D: int) -> np.ndarray:
    total = F.q**D
    reps = F.digits(np.arange(total), D)
    blocks, _ = _blocks(Q, alpha)
    labels = np.arange(total, dtype=np.int64)
    images = []
    for i, n in enumerate(alpha):
        for g, ginv in _gl_generators(F, n):
            new = reps.copy()
            for k, (s, t) in enumerate(Q.arrows):
                o, r, c = blocks[k]
                M = reps[:, o : o + r * c].reshape(-1, r, c)
                if t == i:
                    M = F.matmul(g, M)
                if s == i:
                    M = F.matmul(M, ginv)
                new[:, o : o + r * c] = M.reshape(-1, r * c)
            images.append(F.undigits(new))
    while True:
        old = labels
        for img in images:
            labels = np.minimum(labels, labels[img])
            labels = labels[labels]
        if np.array_equal(old, labels):
            return labels


def endomorphism_basis(Q: Quiver, alpha: Sequence[int], rep: np.ndarray, F: GF) -> np.ndarray:
    """Basis of ``End(M)`` as rows of concatenated, row-major ``phi_i`` blocks."""
    alpha = tuple(alpha)
    blocks, _ = _blocks(Q, alpha)
    phi_off, off = [], 0
    for n in alpha:
        phi_off.append(off)
        off += n * n
    rows = []
    for k, (s, t) in enumerate(Q.arrows):
        o, r, c = blocks[k]
        A = rep[o : o + r * c].reshape(r, c)
        nt, ns = alpha[t], alpha[s]
        # phi_t A - A phi_s = 0, entry (p, u)
        for p in range(nt):
            for u in range(ns):
                row = np.zeros(off, dtype=np.int64)
                for w in range(nt):
                    idx = phi_off[t] + p * nt + w
                    row[idx] = F.add(row[idx], A[w, u])
                for w in range(ns):
                    idx = phi_off[s] + w * ns + u
                    row[idx] = F.sub(row[idx], A[p, w])
                rows.append(row)
    if not rows:
        return np.eye(off, dtype=np.int64)
    return F.nullspace(np.array(rows))


def _span(F: GF, basis: np.ndarray) -> np.ndarray:
    e = basis.shape[0]
    coeffs = F.digits(np.arange(F.q**e), e)
    out = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
    for i in range(e):
        out = F.add(out, F.mul(coeffs[:, i : i + 1], basis[i][None, :]))
    return out


def _invertible(F: GF, alpha, elems: np.ndarray) -> np.ndarray:
    ok = np.ones(elems.shape[0], dtype=bool)
    off = 0
    for n in alpha:
        if n:
            blk = elems[:, off : off + n * n].reshape(-1, n, n)
            ok &= F.rank(blk) == n
        off += n * n
    return ok


def _absolutely_indecomposable(Q: Quiver, alpha, rep: np.ndarray, F: GF) -> bool:
    basis = endomorphism_basis(Q, alpha, rep, F)
    e = basis.shape[0]
    if e == 1:
        return True
    if F.q**e > KAC_END_LIMIT:
        raise TooLarge(f"endomorphism algebra has {F.q}^{e} elements (limit {KAC_END_LIMIT})")
    elems = _span(F, basis)
    coords = F.digits(np.arange(F.q**e), e)
    non_inv = coords[~_invertible(F, alpha, elems)]
    if non_inv.shape[0] != F.q ** (e - 1):
        return False
    # a set of q^{e-1} vectors spanning an (e-1)-space is that subspace
    return int(F.rank(non_inv.T[None])[0]) == e - 1


def kac_bruteforce(Q: Quiver, alpha: Sequence[int], q: int) -> int:
    """Number of isomorphism classes of absolutely indecomposable representations over GF(q)."""
    alpha = Q.check_dim(alpha)
    F = field(q)
    if not any(alpha):
        return 0
    D = Q.rep_dimension(alpha)
    if q**D > KAC_REP_LIMIT or sum(alpha) > 4:
        raise TooLarge(f"kac_bruteforce limited to q^dim R <= {KAC_REP_LIMIT} and |alpha| <= 4")
    labels = _orbit_labels(Q, alpha, F, D)
    roots = np.unique(labels)
    reps = F.digits(roots, D)
    return sum(1 for rep in reps if _absolutely_indecomposable(Q, alpha, rep, F))


def interpolate_kac(values: Iterable[tuple[int, int]], degree: int) -> IntPolynomial:
    """Unique integer polynomial of degree ``<= degree`` through ``(q, count)`` samples."""
    pts: dict[int, int] = {}
    for q, v in values:
        prime_power_decomposition(q)
        if q in pts and pts[q] != v:
            raise NonIntegerCoefficients(f"conflicting samples at q={q}")
        pts[q] = int(v)
    if len(pts) < degree + 1:
        raise InsufficientSamples(f"need {degree + 1} distinct q, got {len(pts)}")
    xs = sorted(pts)
    use = xs[: degree + 1]
    coeffs = [Fraction(0)] * (degree + 1)
    for i, xi in enumerate(use):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(use):
            if i == j:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += pts[xi] * b / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerCoefficients(f"interpolant {coeffs} is not integral")
    poly = IntPolynomial(tuple(int(c) for c in coeffs))
    for x in xs[degree + 1 :]:
        if poly(x) != pts[x]:
            raise NonIntegerCoefficients(f"samples do not lie on a polynomial of degree <= {degree}")
    return poly


# ------------------------------------------------------------ automorphisms
def aut_motive(multiplicities: Sequence[int], end_dim: int) -> MotiveScalar:
    """``L^{end_dim} * prod_i (L^{-1})_{n_i}``, the motive of ``Aut(X)``."""
    out = L**end_dim
    Linv = L.inverse()
    for n in multiplicities:
        if n < 1:
            raise ValueError("multiplicities must be >= 1")
        out = out * pochhammer(Linv, n)
    return out


def count_automorphisms(Q: Quiver, alpha: Sequence[int], rep: Sequence[int], q: int) -> int:
    """``|Aut(M)|`` by enumerating all endomorphisms of the representation ``rep``."""
    alpha = Q.check_dim(alpha)
    F = field(q)
    rep = np.asarray(rep, dtype=np.int64)
    basis = endomorphism_basis(Q, alpha, rep, F)
    if F.q ** basis.shape[0] > KAC_END_LIMIT:
        raise TooLarge("endomorphism algebra too large to enumerate")
    return int(_invertible(F, alpha, _span(F, basis)).sum())
