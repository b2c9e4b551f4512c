"""Truncated multivariate power series over :class:`MotiveScalar`.

A series lives on a :class:`Grading`: exponent vectors ``e`` in ``N^m`` are
kept when ``weights . e <= bound`` and, if per-variable ``caps`` are given,
``e <= caps`` componentwise.  Both conditions cut out an order ideal, so
products, Adams operations and the plethystic ``Exp``/``Log`` are all
compatible with truncation.

``Exp``/``Log``/inverse are computed by triangular recursions ordered by total
degree (a heap drives the order), so cost is proportional to
``|support(result)| * |support(input)|`` rather than to the size of the
truncation region.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .coeff_ring import ONE, ZERO, MotiveScalar, Scalar, V, as_scalar
from .errors import (
    ConstantTermNotOne,
    GradingMismatch,
    NonIntegralResult,
    NonzeroConstantTerm,
    NotAntisymmetric,
    NotNilpotent,
    ZeroExponentVector,
)

Exp = tuple[int, ...]

__all__ = [
    "Grading",
    "MSeries",
    "mul",
    "quantum_mul",
    "exp_lambda",
    "log_lambda",
    "pow_structure",
    "adams_series",
    "twist_Sv",
    "geometric_factor",
    "sign_flip",
    "monomial_substitution",
    "mobius",
]


@dataclass(frozen=True)
class Grading:
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    bound: int
    caps: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.caps is not None:
            object.__setattr__(self, "caps", tuple(int(c) for c in self.caps))
            if len(self.caps) != len(self.variables):
                raise ValueError("caps must match the number of variables")
        if len(self.weights) != len(self.variables):
            raise ValueError("one weight per variable")
        if any(w < 0 for w in self.weights) or not any(self.weights):
            raise ValueError("weights must be nonnegative and not all zero")
        if self.bound < 0:
            raise ValueError("truncation bound must be >= 0")

    @classmethod
    def total_degree(cls, variables: Sequence[str], bound: int) -> Grading:
        return cls(tuple(variables), (1,) * len(variables), bound)

    @property
    def rank(self) -> int:
        return len(self.variables)

    def degree(self, e: Exp) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def contains(self, e: Exp) -> bool:
        if self.degree(e) > self.bound:
            return False
        if self.caps is not None and any(x > c for x, c in zip(e, self.caps)):
            return False
        return True

    def is_nilpotent(self, e: Exp) -> bool:
        """Whether large multiples of ``e`` leave the region."""
        if self.degree(e) > 0:
            return True
        return self.caps is not None and any(e)

    def zero_exp(self) -> Exp:
        return (0,) * self.rank

    def points(self) -> Iterator[Exp]:
        """All exponent vectors of the (finite) truncation region, in lexicographic order."""
        limits = []
        for i, w in enumerate(self.weights):
            lim = self.bound // w if w else None
            if self.caps is not None:
                lim = self.caps[i] if lim is None else min(lim, self.caps[i])
            if lim is None:
                raise NotNilpotent(f"variable {self.variables[i]} is unbounded in this grading")
            limits.append(lim)

        def rec(i: int, prefix: tuple[int, ...], used: int) -> Iterator[Exp]:
            if i == self.rank:
                yield prefix
                return
            for x in range(limits[i] + 1):
                d = used + self.weights[i] * x
                if d > self.bound:
                    break
                yield from rec(i + 1, prefix + (x,), d)

        yield from rec(0, (), 0)

    def to_json(self) -> dict:
        out = {"vars": list(self.variables), "weights": list(self.weights), "bound": self.bound}
        if self.caps is not None:
            out["caps"] = list(self.caps)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> Grading:
        caps = obj.get("caps")
        return cls(tuple(obj["vars"]), tuple(obj["weights"]), obj["bound"], tuple(caps) if caps else None)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class MSeries:
    """Immutable truncated series; ``terms`` never stores zero coefficients."""

    __slots__ = ("grading", "terms", "_bands")

    def __init__(self, grading: Grading, terms: Mapping[Exp, Scalar] | None = None):
        self.grading = grading
        clean: dict[Exp, MotiveScalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != grading.rank or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            if not grading.contains(e):
                continue
            c = as_scalar(c)
            if not c.is_zero():
                clean[e] = c
        self.terms = clean
        self._bands = None

    @classmethod
    def _raw(cls, grading: Grading, terms: dict[Exp, MotiveScalar]) -> MSeries:
        obj = cls.__new__(cls)
        obj.grading = grading
        obj.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        obj._bands = None
        return obj

    @classmethod
    def zero(cls, grading: Grading) -> MSeries:
        return cls._raw(grading, {})

    @classmethod
    def one(cls, grading: Grading) -> MSeries:
        return cls.constant(grading, ONE)

    @classmethod
    def constant(cls, grading: Grading, c: Scalar) -> MSeries:
        return cls(grading, {grading.zero_exp(): c})

    @classmethod
    def monomial(cls, grading: Grading, e: Sequence[int], c: Scalar = 1) -> MSeries:
        return cls(grading, {tuple(e): c})

    @classmethod
    def variable(cls, grading: Grading, i: int) -> MSeries:
        e = [0] * grading.rank
        e[i] = 1
        return cls.monomial(grading, e)

    # ------------------------------------------------------------ inspection
    def coefficient(self, e: Sequence[int]) -> MotiveScalar:
        return self.terms.get(tuple(e), ZERO)

    @property
    def constant_term(self) -> MotiveScalar:
        return self.coefficient(self.grading.zero_exp())

    def items(self) -> list[tuple[Exp, MotiveScalar]]:
        return sorted(self.terms.items())

    def __iter__(self) -> Iterator[tuple[Exp, MotiveScalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def bands(self) -> dict[int, list[tuple[Exp, MotiveScalar]]]:
        if self._bands is None:
            bands: dict[int, list[tuple[Exp, MotiveScalar]]] = {}
            for e, c in self.terms.items():
                bands.setdefault(self.grading.degree(e), []).append((e, c))
            self._bands = bands
        return self._bands

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def map_coefficients(self, fn: Callable[[MotiveScalar], Scalar]) -> MSeries:
        return MSeries._raw(self.grading, {e: as_scalar(fn(c)) for e, c in self.terms.items()})

    def restrict(self, grading: Grading) -> MSeries:
        """Re-truncate onto a region of the same variables."""
        if grading.variables != self.grading.variables:
            raise GradingMismatch("restriction must keep the variables")
        return MSeries._raw(grading, {e: c for e, c in self.terms.items() if grading.contains(e)})

    # ------------------------------------------------------------ arithmetic
    def _check(self, other: MSeries) -> None:
        if other.grading != self.grading:
            raise GradingMismatch(f"{self.grading} vs {other.grading}")

    def __add__(self, other) -> MSeries:
        if not isinstance(other, MSeries):
            return self + MSeries.constant(self.grading, as_scalar(other))
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MSeries._raw(self.grading, out)

    __radd__ = __add__

    def __neg__(self) -> MSeries:
        return MSeries._raw(self.grading, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MSeries:
        return self + (-other)

    def __rsub__(self, other) -> MSeries:
        return (-self) + other

    def scale(self, c: Scalar) -> MSeries:
        c = as_scalar(c)
        if c.is_zero():
            return MSeries.zero(self.grading)
        return MSeries._raw(self.grading, {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other) -> MSeries:
        if isinstance(other, MSeries):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> MSeries:
        return self.scale(other)

    def __truediv__(self, other) -> MSeries:
        if isinstance(other, MSeries):
            return mul(self, other.inverse())
        return self.scale(as_scalar(other).inverse())

    def __pow__(self, n: int) -> MSeries:
        if n < 0:
            return self.inverse() ** (-n)
        out = MSeries.one(self.grading)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MSeries):
            return NotImplemented
        return self.grading == other.grading and self.terms == other.terms

    def __hash__(self):
        return hash((self.grading, frozenset(self.terms.items())))

    def inverse(self) -> MSeries:
        c0 = self.constant_term
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        _require_nilpotent(self)
        inv0 = c0.inverse()
        rest = [(e, c) for e, c in self.terms.items() if any(e)]
        return _triangular(self.grading, rest, lambda e, acc: -acc * inv0, {self.grading.zero_exp(): inv0})

    # ---------------------------------------------------------------- format
    def to_json(self) -> dict:
        out = self.grading.to_json()
        out["terms"] = [{"exp": list(e), "coeff": c.to_json()} for e, c in self.items()]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> MSeries:
        g = Grading.from_json(obj)
        return cls(g, {tuple(t["exp"]): MotiveScalar.from_json(t["coeff"]) for t in obj["terms"]})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.grading.variables, e) if x
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MSeries({len(self.terms)} terms, bound={self.grading.bound})"


# ---------------------------------------------------------------- engines
def _require_nilpotent(f: MSeries) -> None:
    for e in f.terms:
        if any(e) and not f.grading.is_nilpotent(e):
            raise NotNilpotent(f"term {e} has weight 0 along uncapped variables")


def _triangular(grading: Grading, rest, finalize, seed: dict[Exp, MotiveScalar]) -> MSeries:
    """Solve ``g_e = finalize(e, sum_{(e',c) in rest} c * g_{e-e'})`` in total-degree order.

    ``rest`` lists ``(e', c)`` pairs with ``e' != 0``; ``seed`` holds the
    already-known constant term.
    """
    out = dict(seed)
    acc: dict[Exp, MotiveScalar] = {}
    heap: list[tuple[int, Exp]] = []

    def push(e: Exp, g: MotiveScalar) -> None:
        for e2, c in rest:
            t = _add_exp(e, e2)
            if not grading.contains(t):
                continue
            if t in acc:
                acc[t] = acc[t] + c * g
            else:
                acc[t] = c * g
                heapq.heappush(heap, (sum(t), t))

    for e, g in seed.items():
        push(e, g)
    while heap:
        _, e = heapq.heappop(heap)
        g = finalize(e, acc.pop(e))
        if not g.is_zero():
            out[e] = g
            push(e, g)
    return MSeries._raw(grading, out)


def _exp_plain(h: MSeries) -> MSeries:
    """Ordinary exponential of a series without constant term."""
    g = h.grading
    rest = [(e, c * sum(e)) for e, c in h.terms.items()]
    return _triangular(g, rest, lambda e, acc: acc * Fraction(1, sum(e)), {g.zero_exp(): ONE})


def _log_plain(f: MSeries) -> MSeries:
    """Ordinary logarithm of a series with constant term 1."""
    g = f.grading
    fterms = {e: c for e, c in f.terms.items() if any(e)}
    out: dict[Exp, MotiveScalar] = {}
    acc: dict[Exp, MotiveScalar] = {}
    heap = [(sum(e), e) for e in fterms]
    heapq.heapify(heap)
    seen = set(fterms)
    while heap:
        _, e = heapq.heappop(heap)
        val = fterms.get(e, ZERO)
        if e in acc:
            val = val - acc.pop(e) * Fraction(1, sum(e))
        if val.is_zero():
            continue
        out[e] = val
        weight = val * sum(e)
        for e2, c in fterms.items():
            t = _add_exp(e, e2)
            if not g.contains(t):
                continue
            acc[t] = acc[t] + weight * c if t in acc else weight * c
            if t not in seen:
                seen.add(t)
                heapq.heappush(heap, (sum(t), t))
    return MSeries._raw(g, out)


def mobius(n: int) -> int:
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


# ------------------------------------------------------------- operations
def mul(f: MSeries, g: MSeries) -> MSeries:
    """Commutative truncated product, multiplied band by band."""
    f._check(g)
    grading = f.grading
    bound = grading.bound
    caps = grading.caps
    out: dict[Exp, MotiveScalar] = {}
    gb = g.bands()
    for la, ta in f.bands().items():
        for lb, tb in gb.items():
            if la + lb > bound:
                continue
            for e1, c1 in ta:
                for e2, c2 in tb:
                    e = tuple(x + y for x, y in zip(e1, e2))
                    if caps is not None and any(x > c for x, c in zip(e, caps)):
                        continue
                    p = c1 * c2
                    out[e] = out[e] + p if e in out else p
    return MSeries._raw(grading, out)


def _bilinear(form: Sequence[Sequence[int]], a: Exp, b: Exp) -> int:
    return sum(a[i] * form[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])


def quantum_mul(f: MSeries, g: MSeries, skew: Sequence[Sequence[int]]) -> MSeries:
    """Product ``y^a o y^b = (-v)^<a,b> y^(a+b)`` for an antisymmetric integer matrix ``skew``."""
    f._check(g)
    m = f.grading.rank
    if len(skew) != m or any(len(row) != m for row in skew):
        raise ValueError("skew form must be an m x m matrix")
    if any(skew[i][j] != -skew[j][i] for i in range(m) for j in range(m)):
        raise NotAntisymmetric("form is not antisymmetric")
    grading = f.grading
    out: dict[Exp, MotiveScalar] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = _add_exp(e1, e2)
            if not grading.contains(e):
                continue
            k = _bilinear(skew, e1, e2)
            p = c1 * c2 * MotiveScalar.monomial(k, -1 if k % 2 else 1)
            out[e] = out[e] + p if e in out else p
    return MSeries._raw(grading, out)


def adams_series(f: MSeries, n: int) -> MSeries:
    """``psi_n(c y^a) = psi_n(c) y^(n a)``; overflowing terms drop out."""
    if n < 1:
        raise ValueError("Adams operations are indexed by n >= 1")
    if n == 1:
        return f
    g = f.grading
    out = {}
    for e, c in f.terms.items():
        t = tuple(n * x for x in e)
        if g.contains(t):
            out[t] = c.adams(n)
    return MSeries._raw(g, out)


def _adams_sum(f: MSeries, weight: Callable[[int], Fraction]) -> MSeries:
    """``sum_{n>=1} weight(n) * psi_n(f)`` until every Adams image leaves the region."""
    total = MSeries.zero(f.grading)
    n = 1
    while True:
        w = weight(n)
        psi = adams_series(f, n)
        if not psi.terms:
            break
        if w:
            total = total + psi.scale(w)
        n += 1
    return total


def exp_lambda(f: MSeries) -> MSeries:
    """Plethystic exponential ``exp(sum_n psi_n(f)/n)``."""
    if not f.constant_term.is_zero():
        raise NonzeroConstantTerm(f"constant term {f.constant_term}")
    _require_nilpotent(f)
    if not f.terms:
        return MSeries.one(f.grading)
    out = _exp_plain(_adams_sum(f, lambda n: Fraction(1, n)))
    if f.is_integral() and not out.is_integral():
        raise NonIntegralResult("Exp of an integral series produced a non-integral coefficient")
    return out


def log_lambda(f: MSeries) -> MSeries:
    """Inverse of :func:`exp_lambda`: ``sum_n mu(n)/n psi_n(log f)``."""
    if not f.constant_term.is_one():
        raise ConstantTermNotOne(f"constant term {f.constant_term}")
    _require_nilpotent(f)
    out = _adams_sum(_log_plain(f), lambda n: Fraction(mobius(n), n))
    if f.is_integral() and not out.is_integral():
        raise NonIntegralResult("Log of an integral series produced a non-integral coefficient")
    return out


def pow_structure(f: MSeries, g: Scalar) -> MSeries:
    """Power structure ``Pow(f, g) = Exp(g * Log f)``."""
    return exp_lambda(log_lambda(f).scale(g))


def twist_Sv(f: MSeries, w: Sequence[int]) -> MSeries:
    """``y^a -> (-v)^(w.a) y^a``."""
    if len(w) != f.grading.rank:
        raise ValueError("twist vector has the wrong length")
    out = {}
    for e, c in f.terms.items():
        k = sum(a * b for a, b in zip(w, e))
        out[e] = c * MotiveScalar.monomial(k, -1 if k % 2 else 1) if k else c
    return MSeries._raw(f.grading, out)


def geometric_factor(c: Scalar, alpha: Sequence[int], e: int, grading: Grading) -> MSeries:
    """Truncated ``(1 - c y^alpha)^(-e)``; a polynomial when ``e < 0``."""
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != grading.rank:
        raise ValueError("exponent vector has the wrong length")
    if not any(alpha):
        raise ZeroExponentVector("geometric factor needs a nonzero exponent vector")
    c = as_scalar(c)
    if e == 0 or c.is_zero():
        return MSeries.one(grading)
    if e > 0 and not grading.is_nilpotent(alpha):
        raise NotNilpotent(f"(1 - c y^{alpha})^-1 does not truncate in this grading")
    out: dict[Exp, MotiveScalar] = {}
    k = 0
    power = ONE
    while True:
        t = tuple(k * a for a in alpha)
        if not grading.contains(t):
            break
        if e > 0:
            coeff = comb(e + k - 1, k)
        else:
            if k > -e:
                break
            coeff = comb(-e, k) * (-1) ** k
        out[t] = power * coeff
        power = power * c
        k += 1
    return MSeries._raw(grading, out)


def sign_flip(f: MSeries, i: int) -> MSeries:
    """``y_i -> -y_i``."""
    if not 0 <= i < f.grading.rank:
        raise IndexError(f"no variable {i}")
    return MSeries._raw(f.grading, {e: (-c if e[i] % 2 else c) for e, c in f.terms.items()})


def monomial_substitution(f: MSeries, images: Sequence[Sequence[int]], grading: Grading) -> MSeries:
    """Ring map sending variable ``i`` of ``f`` to the monomial ``y^images[i]`` of ``grading``."""
    if len(images) != f.grading.rank:
        raise ValueError("one image per source variable")
    out: dict[Exp, MotiveScalar] = {}
    for e, c in f.terms.items():
        t = [0] * grading.rank
        for x, img in zip(e, images):
            if x:
                for j, y in enumerate(img):
                    t[j] += x * y
        t = tuple(t)
        if any(x < 0 for x in t):
            raise ValueError("monomial image has negative exponents")
        if grading.contains(t):
            out[t] = out[t] + c if t in out else c
    return MSeries._raw(grading, out)


def product(factors: Iterable[MSeries], grading: Grading) -> MSeries:
    """Deterministic left-to-right product."""
    out = MSeries.one(grading)
    for f in factors:
        out = out * f
    return out
