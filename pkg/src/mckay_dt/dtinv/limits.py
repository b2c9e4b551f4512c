"""Euler-number limits, MacMahon functions, and Gopakumar-Vafa extraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from ..coeff_ring import ONE, ZERO, MotiveScalar, euler_value
from ..errors import NotPolynomialInT
from ..roots import AffineRootSystem, Root
from ..series import Grading, MSeries, exp_lambda, log_lambda
from .framed import SQSeries, local_factor_data

__all__ = [
    "EulerSeries",
    "euler_limit",
    "macmahon",
    "macmahon_coefficients",
    "pt_euler_symbolic",
    "gv_extract",
    "T_VARIABLE",
]

Key = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class EulerSeries:
    """Rational series in ``q`` (degree ``<= order``) and Laurent monomials ``Q^beta``.

    Keys are ``(n, beta)`` for the monomial ``q^n Q^beta``.
    """

    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        clean = {(int(n), tuple(b)): Fraction(c) for (n, b), c in self.terms.items() if c and n <= self.order}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, rank: int, order: int) -> EulerSeries:
        return cls({(0, (0,) * rank): Fraction(1)}, order)

    def coefficient(self, n: int, beta: Sequence[int]) -> Fraction:
        return self.terms.get((n, tuple(beta)), Fraction(0))

    def items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items())

    def __mul__(self, other: EulerSeries) -> EulerSeries:
        order = min(self.order, other.order)
        out: dict[Key, Fraction] = {}
        for (n1, b1), c1 in self.terms.items():
            for (n2, b2), c2 in other.terms.items():
                n = n1 + n2
                if n > order:
                    continue
                k = (n, tuple(x + y for x, y in zip(b1, b2)))
                out[k] = out.get(k, 0) + c1 * c2
        return EulerSeries(out, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EulerSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [{"exp": [n, *b], "coeff": str(c)} for (n, b), c in self.items()],
        }


def euler_limit(Z: SQSeries) -> EulerSeries:
    """Coefficientwise ``v -> 1`` in the ``(s, Q)`` presentation, with ``s`` renamed ``q``."""
    return EulerSeries({k: euler_value(c) for k, c in Z.items()}, Z.order)


def macmahon(beta: Sequence[int] | None, N: int, rank: int | None = None) -> EulerSeries:
    """``M(Q^beta, q) = prod_{n>=1} (1 - Q^beta q^n)^(-n)`` to ``q``-order ``N``; ``beta=None`` gives ``M(q)``."""
    if N < 0:
        raise ValueError("order must be >= 0")
    if beta is None:
        beta = (0,) * (rank or 0)
    beta = tuple(beta)
    out = EulerSeries.one(len(beta), N)
    for n in range(1, N + 1):
        # (1 - x q^n)^(-n) = sum_k C(n+k-1, k) x^k q^{nk}
        factor = {}
        k = 0
        while n * k <= N:
            factor[(n * k, tuple(k * b for b in beta))] = Fraction(comb(n + k - 1, k))
            k += 1
        out = out * EulerSeries(factor, N)
    return out


def macmahon_coefficients(N: int) -> list[int]:
    """Plane-partition counts ``1, 1, 3, 6, 13, 24, ...`` up to ``q^N``."""
    M = macmahon(None, N)
    return [int(M.coefficient(n, ())) for n in range(N + 1)]


# ------------------------------------------------------------ GV
# t = 2 - q - q^{-1} = -(1-q)^2/q, with v standing for q
T_VARIABLE = MotiveScalar.laurent(-1, [-1, 2, -1])


def _multiplicity_generating_function(counts: Sequence[int]) -> MotiveScalar:
    """``sum_{n>=1} m(n) q^n`` for ``m`` a polynomial in ``n`` sampled at ``n = 1..len(counts)``.

    ``m`` is expanded in the basis ``C(n-1, k)``, whose generating functions
    are ``q^{k+1} / (1-q)^{k+1}``.  The last two finite differences must
    vanish so that the sample determines the polynomial.
    """
    diffs = [list(counts)]
    while any(diffs[-1]) and len(diffs[-1]) > 1:
        row = diffs[-1]
        diffs.append([b - a for a, b in zip(row, row[1:])])
    if any(diffs[-1]) or len(diffs) > len(counts) - 1:
        raise NotPolynomialInT("factor multiplicities are not a polynomial in the level")
    one_minus_q = MotiveScalar.laurent(0, [1, -1])
    out = ZERO
    for k, row in enumerate(diffs):
        if row and row[0]:
            out = out + MotiveScalar.monomial(k + 1, row[0]) / one_minus_q ** (k + 1)
    return out


def pt_euler_symbolic(R: AffineRootSystem, q_bound: int | None = None, samples: int = 8) -> MSeries:
    """Euler-specialized ``Z_PT(-q, Q)`` as a series in ``Q_1..Q_l`` with exact rational functions of ``q``.

    Each factor ``(1 - v^k y^alpha)`` becomes ``(1 - q^n Q^beta)`` at ``v = 1``,
    so ``beta`` collects ``m(n) = sum e`` factors at level ``n``; the
    plethystic logarithm of the product is ``sum_beta (sum_n m(n) q^n) Q^beta``.
    """
    pos = R.finite_positive_roots
    if q_bound is None:
        q_bound = max(sum(b[1:]) for b in pos)
    G = Grading.total_degree(tuple(f"Q{i}" for i in range(1, R.vertices)), q_bound)
    terms = {}
    for gamma in pos:
        counts = []
        for n in range(1, samples + 1):
            alpha = tuple(n * d - g for d, g in zip(R.marks, gamma))
            root = Root(n, "re-", alpha, tuple(-g for g in gamma))
            counts.append(sum(e for _, e in local_factor_data(root, R.rank)))
        terms[gamma[1:]] = _multiplicity_generating_function(counts)
    return exp_lambda(MSeries(G, terms))


def _expand_in_t(g: MotiveScalar) -> dict[int, int]:
    if not g.is_laurent():
        raise NotPolynomialInT(f"{g} is not a Laurent polynomial in q")
    out: dict[int, int] = {}
    while not g.is_zero():
        lowest, coeffs = g.laurent_coeffs()
        top = lowest + len(coeffs) - 1
        if lowest != -top or top < 0:
            raise NotPolynomialInT(f"{g} is not symmetric under q -> 1/q")
        c = coeffs[-1] * (-1) ** top
        out[top] = c
        g = g - T_VARIABLE**top * c
    return out


def gv_extract(Z: MSeries) -> dict[tuple[int, tuple[int, ...]], int]:
    """Nonzero ``n_{g,beta}`` from ``Z = Exp(sum_beta sum_g t^{g-1} n_{g,beta} Q^beta)``."""
    out = {}
    for beta, f in sorted(log_lambda(Z).terms.items()):
        for g, n in _expand_in_t(T_VARIABLE * f).items():
            if n:
                out[(g, beta)] = n
    return out
