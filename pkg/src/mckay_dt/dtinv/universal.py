"""Universal DT series ``A_U`` and extraction of the invariants ``Omega``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..coeff_ring import ONE, ZERO, L, MotiveScalar
from ..errors import ConstantTermNotOne
from ..repcount.kac import IntPolynomial, KacTable
from ..roots import AffineRootSystem
from ..series import Grading, MSeries, exp_lambda, log_lambda, pow_structure

__all__ = [
    "OmegaTable",
    "affine_kac_table",
    "jordan_kac_table",
    "universal_series",
    "universal_series_via_pow",
    "omega_extract",
    "is_positive",
    "mckay_box_grading",
]

# 1 - L^{-1}
_ONE_MINUS_LINV = ONE - L.inverse()


@dataclass(frozen=True)
class OmegaTable:
    """``alpha -> Omega_alpha``; absent entries are zero."""

    entries: Mapping[tuple[int, ...], MotiveScalar] = field(default_factory=dict)

    def get(self, alpha: Sequence[int]) -> MotiveScalar:
        return self.entries.get(tuple(alpha), ZERO)

    def items(self) -> list[tuple[tuple[int, ...], MotiveScalar]]:
        return sorted(self.entries.items())

    def to_json(self) -> list[dict]:
        return [{"dim": list(a), "omega": c.to_json()} for a, c in self.items()]

    @classmethod
    def from_kac(cls, K: KacTable, alphas) -> OmegaTable:
        out = {}
        for a in alphas:
            m = K.motive(a)
            if not m.is_zero():
                out[tuple(a)] = m
        return cls(out)


def jordan_kac_table() -> KacTable:
    """``a_n(q) = q`` for every ``n >= 1``."""
    q = IntPolynomial((0, 1))
    zero = IntPolynomial(())
    return KacTable(source="closed-form", rule=lambda a: q if a[0] >= 1 else zero)


def affine_kac_table(R: AffineRootSystem) -> KacTable:
    """``a_alpha = 1`` on real roots, ``q + l`` on imaginary roots, 0 elsewhere."""
    real = IntPolynomial((1,))
    imag = IntPolynomial((R.rank, 1))
    zero = IntPolynomial(())

    def rule(alpha):
        root = R.classify(alpha)
        if root is None:
            return zero
        return imag if root.is_imaginary else real

    return KacTable(source="closed-form", rule=rule)


def mckay_box_grading(R: AffineRootSystem, N: int) -> Grading:
    """Weight ``alpha_0``, bound ``N``, and caps ``N * delta``."""
    names = tuple(f"y{i}" for i in range(R.vertices))
    weights = (1,) + (0,) * R.rank
    return Grading(names, weights, N, tuple(N * d for d in R.marks))


def _kac_terms(K: KacTable, G: Grading) -> dict[tuple[int, ...], MotiveScalar]:
    out = {}
    for alpha in G.points():
        if not any(alpha):
            continue
        a = K.motive(alpha)
        if not a.is_zero():
            out[alpha] = a
    return out


def universal_series(K: KacTable, G: Grading) -> MSeries:
    """``A_U = Exp(sum_alpha a_alpha(L) y^alpha / (1 - L^{-1}))`` truncated to ``G``."""
    terms = _kac_terms(K, G)
    inv = _ONE_MINUS_LINV.inverse()
    return exp_lambda(MSeries(G, {e: a * inv for e, a in terms.items()}))


def universal_series_via_pow(K: KacTable, G: Grading) -> MSeries:
    """``prod_alpha Pow(Exp(y^alpha / (1 - L^{-1})), a_alpha(L))``."""
    inv = _ONE_MINUS_LINV.inverse()
    out = MSeries.one(G)
    for alpha, a in sorted(_kac_terms(K, G).items()):
        base = exp_lambda(MSeries(G, {alpha: inv}))
        out = out * pow_structure(base, a)
    return out


def omega_extract(A: MSeries) -> OmegaTable:
    """``Omega`` = coefficients of ``(1 - L^{-1}) Log(A)``."""
    if not A.constant_term.is_one():
        raise ConstantTermNotOne(f"constant term {A.constant_term}")
    logA = log_lambda(A).scale(_ONE_MINUS_LINV)
    return OmegaTable(dict(logA.terms))


def is_positive(omega: MotiveScalar) -> bool:
    """Whether ``omega(-v)`` is a Laurent polynomial with non-negative integer coefficients."""
    x = omega.negate_variable()
    if not x.is_laurent():
        return False
    _, coeffs = x.laurent_coeffs()
    return all(c >= 0 for c in coeffs)
