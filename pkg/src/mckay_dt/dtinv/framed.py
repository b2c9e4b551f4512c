"""Framed series, local factors, and the McKay PT / DT / NCDT products.

Series are computed natively in the variables ``y_0..y_l`` of the quiver
and presented in geometric coordinates ``y^alpha = s^n Q^beta`` with
``n = alpha_0`` and ``beta = n*delta - alpha`` restricted to vertices
``1..l``.  The substitution ``y_0 -> -y_0`` is ``s -> -s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..coeff_ring import ONE, L, MotiveScalar, as_scalar
from ..errors import GradingMismatch, NotGeneric
from ..roots import AffineRootSystem, Mode, Root, from_type, positive_roots_up_to, stability_select
from ..series import (
    Grading,
    MSeries,
    exp_lambda,
    geometric_factor,
    monomial_substitution,
    pow_structure,
    product,
    sign_flip,
    twist_Sv,
)
from .universal import OmegaTable

__all__ = [
    "SQSeries",
    "mckay_grading",
    "local_factor_data",
    "local_factor",
    "framed_series",
    "mckay_series",
    "hilbert_series_ZY",
    "hilbert_series_ZY_exp",
    "c3_series",
]

CONVENTIONS = ("minus_s", "plus_s")


def mckay_grading(R: AffineRootSystem, N: int) -> Grading:
    """Variables ``y_0..y_l`` graded by ``alpha_0 <= N``."""
    names = tuple(f"y{i}" for i in range(R.vertices))
    return Grading(names, (1,) + (0,) * R.rank, N)


@dataclass(frozen=True)
class SQSeries:
    """A McKay generating function, stored in ``y`` and presented in ``(s, Q)``.

    ``convention`` is ``"minus_s"`` for ``Z(-s, Q)`` and ``"plus_s"`` for ``Z(s, Q)``.
    """

    series: MSeries
    roots: AffineRootSystem
    convention: str = "minus_s"

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")

    @property
    def order(self) -> int:
        return self.series.grading.bound

    def coefficient(self, n: int, beta: Sequence[int]) -> MotiveScalar:
        alpha = self.roots.from_sq(n, beta)
        if any(a < 0 for a in alpha):
            return MotiveScalar.from_int(0)
        return self.series.coefficient(alpha)

    def items(self) -> list[tuple[tuple[int, tuple[int, ...]], MotiveScalar]]:
        out = [(self.roots.to_sq(e), c) for e, c in self.series.terms.items()]
        return sorted(out)

    def with_convention(self, convention: str) -> SQSeries:
        if convention == self.convention:
            return self
        return SQSeries(sign_flip(self.series, 0), self.roots, convention)

    def _check(self, other: SQSeries) -> None:
        if other.roots != self.roots or other.convention != self.convention:
            raise GradingMismatch("series live on different root systems or sign conventions")

    def __mul__(self, other: SQSeries) -> SQSeries:
        self._check(other)
        return SQSeries(self.series * other.series, self.roots, self.convention)

    def __truediv__(self, other: SQSeries) -> SQSeries:
        self._check(other)
        return SQSeries(self.series / other.series, self.roots, self.convention)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SQSeries):
            return NotImplemented
        return (self.roots, self.convention, self.series) == (other.roots, other.convention, other.series)

    def __hash__(self):
        return hash((self.roots, self.convention, self.series))

    def to_json(self) -> dict:
        l = self.roots.rank
        return {
            "vars": ["s"] + [f"Q{i}" for i in range(1, l + 1)],
            "weights": [1] + [0] * l,
            "bound": self.order,
            "convention": self.convention,
            "roots_type": self.roots.tag,
            "terms": [{"exp": [n, *beta], "coeff": c.to_json()} for (n, beta), c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> SQSeries:
        R = from_type(obj["roots_type"])
        G = mckay_grading(R, obj["bound"])
        terms = {}
        for t in obj["terms"]:
            n, *beta = t["exp"]
            terms[R.from_sq(n, beta)] = MotiveScalar.from_json(t["coeff"])
        return cls(MSeries(G, terms), R, obj["convention"])

    def __str__(self) -> str:
        parts = []
        for (n, beta), c in self.items():
            mono = [f"s^{n}" if n != 1 else "s"] if n else []
            mono += [f"Q{i + 1}^{b}" if b != 1 else f"Q{i + 1}" for i, b in enumerate(beta) if b]
            parts.append(f"({c})" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(parts) if parts else "0"


# --------------------------------------------------------------- factors
def local_factor_data(root: Root, l: int) -> list[tuple[int, int]]:
    """Pairs ``(k, e)`` such that the local factor is ``prod (1 - v^k y^alpha)^(-e)``."""
    n = root.level
    if n == 0:
        return []
    if root.is_real:
        return [(2 * j - n, 1) for j in range(1, n + 1)]
    out = []
    for j in range(1, n + 1):
        out.append((2 * j + 2 - n, 1))
        if l:
            out.append((2 * j - n, l))
    return out


def local_factor(root: Root, l: int, G: Grading) -> MSeries:
    """Local factor ``Z_alpha`` in the ``y_0 -> -y_0`` convention."""
    data = local_factor_data(root, l)
    return product((geometric_factor(MotiveScalar.monomial(k), root.vector, e, G) for k, e in data), G)


def framed_series(
    omega: OmegaTable,
    zeta: Sequence[Fraction | int],
    w: Sequence[int],
    G: Grading,
) -> MSeries:
    """``S_{-w} Exp(sum_{zeta.alpha < 0} (L^{w.alpha} - 1)/(1 - L^{-1}) Omega_alpha y^alpha)``."""
    zeta = [Fraction(z) for z in zeta]
    if len(zeta) != G.rank or len(w) != G.rank:
        raise ValueError("stability and framing vectors must match the grading")
    inv = (ONE - L.inverse()).inverse()
    terms = {}
    for alpha, om in omega.items():
        if not G.contains(alpha) or om.is_zero():
            continue
        z = sum(a * b for a, b in zip(zeta, alpha))
        if z == 0:
            raise NotGeneric(alpha)
        if z < 0:
            wa = sum(a * b for a, b in zip(w, alpha))
            c = (L**wa - ONE) * inv * om
            if not c.is_zero():
                terms[alpha] = c
    return twist_Sv(exp_lambda(MSeries(G, terms)), [-x for x in w])


def mckay_series(R: AffineRootSystem, mode: Mode | str, N: int) -> SQSeries:
    """``Z_PT``, ``Z_DT`` or ``Z_NCDT`` in the ``Z(-s, Q)`` convention, to ``s``-order ``N``."""
    if N < 0:
        raise ValueError("order must be >= 0")
    G = mckay_grading(R, N)
    select = stability_select(R, mode)
    factors = [
        local_factor(root, R.rank, G) for root in positive_roots_up_to(R, N) if root.level >= 1 and select(root)
    ]
    return SQSeries(product(factors, G), R, "minus_s")


# -------------------------------------------------------------- Hilbert
def _s_grading(N: int) -> Grading:
    return Grading(("s",), (1,), N)


def c3_series(N: int) -> MSeries:
    """``Z_{C^3}(-s) = prod_n prod_{j=1}^n (1 - L^{j+1-n/2} s^n)^(-1)`` in the single variable ``s``."""
    G = _s_grading(N)
    factors = [
        geometric_factor(MotiveScalar.monomial(2 * j + 2 - n), (n,), 1, G)
        for n in range(1, N + 1)
        for j in range(1, n + 1)
    ]
    return product(factors, G)


def _embed(f: MSeries, R: AffineRootSystem | None, N: int):
    if R is None:
        return f
    return SQSeries(monomial_substitution(f, [R.marks], mckay_grading(R, N)), R, "minus_s")


def hilbert_series_ZY(l: int, N: int, R: AffineRootSystem | None = None):
    """``Z_Y(-s) = Pow(Z_{C^3}(-s), L^{-3}(L^3 + l L^2))``.

    Without ``R`` the result is a series in ``s``; with ``R`` (whose rank must
    be ``l``) it is embedded as an :class:`SQSeries` via ``s = y^delta``.
    """
    if R is not None and R.rank != l:
        raise ValueError("root system rank does not match l")
    exponent = ONE + as_scalar(l) * L.inverse()
    return _embed(pow_structure(c3_series(N), exponent), R, N)


def hilbert_series_ZY_exp(l: int, N: int, R: AffineRootSystem | None = None):
    """The same series as ``Exp((1 + l L^{-1}) sum_n (L^n - 1)/(L - 1) L^{2 - n/2} s^n)``."""
    if R is not None and R.rank != l:
        raise ValueError("root system rank does not match l")
    G = _s_grading(N)
    pref = ONE + as_scalar(l) * L.inverse()
    terms = {}
    for n in range(1, N + 1):
        terms[(n,)] = pref * (L**n - ONE) / (L - ONE) * MotiveScalar.monomial(4 - n)
    return _embed(exp_lambda(MSeries(G, terms)), R, N)
