"""Exact rational functions in ``v = L^(1/2)``.

Every motive handled by this package is a quotient of integer Laurent
polynomials in ``v``.  Half powers ``(-L^(1/2))^k`` become ``(-1)^k v^k`` and
``L^n`` becomes ``v^(2n)``, so sign and branch bookkeeping reduce to monomial
arithmetic.

A value is stored as ``v^shift * num / den`` where ``num`` and ``den`` are
:class:`flint.fmpz_poly` with nonzero constant terms, ``gcd(num, den) = 1``
over ``Z`` (content included) and ``den`` has a positive leading
coefficient.  That form is canonical, so ``==`` is mathematical equality.
Rational scalars such as ``1/2`` are allowed; they live in the denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from flint import fmpz_poly

from .errors import DenominatorZero, HalfPowerPresent, PoleAtOne

__all__ = [
    "MotiveScalar",
    "Scalar",
    "V",
    "L",
    "ONE",
    "ZERO",
    "adams_scalar",
    "pochhammer",
    "gl_motive",
    "euler_value",
    "evaluate_at_prime_power",
    "as_scalar",
]

_ONE_POLY = fmpz_poly([1])
_ZERO_POLY = fmpz_poly([])


def _valuation(p: fmpz_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("valuation of zero polynomial")


def _strip(p: fmpz_poly) -> tuple[fmpz_poly, int]:
    """Split ``p = v^k * p'`` with ``p'(0) != 0``."""
    k = _valuation(p)
    return (p.right_shift(k) if k else p), k


def _eval_poly(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


class MotiveScalar:
    """Immutable element of ``Q(v)`` in canonical reduced form."""

    __slots__ = ("num", "den", "shift", "_key")

    def __init__(self, num: fmpz_poly, den: fmpz_poly, shift: int, _key=None):
        # trusted constructor: arguments must already be canonical
        self.num = num
        self.den = den
        self.shift = shift
        self._key = _key

    # ------------------------------------------------------------------ build
    @classmethod
    def make(cls, num: fmpz_poly, den: fmpz_poly = _ONE_POLY, shift: int = 0) -> MotiveScalar:
        if den.is_zero():
            raise DenominatorZero("zero denominator")
        if num.is_zero():
            return ZERO
        num, a = _strip(num)
        den, b = _strip(den)
        shift += a - b
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        return cls(num, den, shift)

    @classmethod
    def _laurent(cls, num: fmpz_poly, shift: int) -> MotiveScalar:
        if num.is_zero():
            return ZERO
        num, a = _strip(num)
        return cls(num, _ONE_POLY, shift + a)

    @classmethod
    def from_int(cls, n: int) -> MotiveScalar:
        return cls._laurent(fmpz_poly([n]), 0)

    @classmethod
    def from_fraction(cls, x: Fraction) -> MotiveScalar:
        return cls.make(fmpz_poly([x.numerator]), fmpz_poly([x.denominator]))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> MotiveScalar:
        """``c * v^k``."""
        if c == 0:
            return ZERO
        return cls(fmpz_poly([c]), _ONE_POLY, k)

    @classmethod
    def laurent(cls, lowest: int, coeffs: Iterable[int]) -> MotiveScalar:
        """``sum_i coeffs[i] * v^(lowest + i)``."""
        return cls._laurent(fmpz_poly(list(coeffs)), lowest)

    # -------------------------------------------------------------- predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_integral(self) -> bool:
        """True when the reduced denominator is primitive (no stray rational constants)."""
        return self.den.content() == 1

    # ------------------------------------------------------------- arithmetic
    def __add__(self, other) -> MotiveScalar:
        other = as_scalar(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s = min(self.shift, other.shift)
        n1 = self.num.left_shift(self.shift - s) if self.shift != s else self.num
        n2 = other.num.left_shift(other.shift - s) if other.shift != s else other.num
        if self.den.is_one() and other.den.is_one():
            return MotiveScalar._laurent(n1 + n2, s)
        if self.den == other.den:
            return MotiveScalar.make(n1 + n2, self.den, s)
        return MotiveScalar.make(n1 * other.den + n2 * self.den, self.den * other.den, s)

    __radd__ = __add__

    def __neg__(self) -> MotiveScalar:
        if self.num.is_zero():
            return self
        return MotiveScalar(-self.num, self.den, self.shift)

    def __sub__(self, other) -> MotiveScalar:
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> MotiveScalar:
        return as_scalar(other) + (-self)

    def __mul__(self, other) -> MotiveScalar:
        other = as_scalar(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        shift = self.shift + other.shift
        if self.den.is_one() and other.den.is_one():
            return MotiveScalar(self.num * other.num, _ONE_POLY, shift)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = n1.gcd(d2)
        if not g.is_one():
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if not g.is_one():
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return MotiveScalar(num, den, shift)

    __rmul__ = __mul__

    def inverse(self) -> MotiveScalar:
        if self.num.is_zero():
            raise DenominatorZero("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return MotiveScalar(num, den, -self.shift)

    def __truediv__(self, other) -> MotiveScalar:
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other) -> MotiveScalar:
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int) -> MotiveScalar:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        return MotiveScalar(self.num ** n, self.den ** n, self.shift * n)

    # ------------------------------------------------------------- equality
    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.shift,
                tuple(int(c) for c in self.num.coeffs()),
                tuple(int(c) for c in self.den.coeffs()),
            )
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotiveScalar):
            if isinstance(other, (int, Fraction)):
                other = as_scalar(other)
            else:
                return NotImplemented
        return (
            self.shift == other.shift
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash(self.key())

    # ------------------------------------------------------- transformations
    def adams(self, n: int) -> MotiveScalar:
        if n == 1 or self.num.is_zero():
            return self
        # substitution v -> v^n keeps coprimality, content and signs
        return MotiveScalar(self.num.inflate(n), self.den.inflate(n), self.shift * n)

    def negate_variable(self) -> MotiveScalar:
        """Substitute ``v -> -v``."""
        num = fmpz_poly([c if i % 2 == 0 else -c for i, c in enumerate(self.num.coeffs())])
        den = fmpz_poly([c if i % 2 == 0 else -c for i, c in enumerate(self.den.coeffs())])
        if self.shift % 2:
            num = -num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return MotiveScalar(num, den, self.shift)

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Value at ``v = x``; raises :class:`DenominatorZero` at a pole."""
        x = Fraction(x)
        d = _eval_poly(self.den, x)
        if d == 0:
            raise DenominatorZero(f"denominator vanishes at v = {x}")
        if x == 0 and self.shift < 0:
            raise DenominatorZero("pole at v = 0")
        return _eval_poly(self.num, x) / d * x ** self.shift

    def laurent_coeffs(self) -> tuple[int, list[int]]:
        """``(lowest, coeffs)`` of the numerator; only meaningful when :meth:`is_laurent`."""
        return self.shift, [int(c) for c in self.num.coeffs()]

    def taylor(self, order: int) -> dict[int, Fraction]:
        """Coefficients of ``v^k`` for ``k <= order`` in the expansion around ``v = 0``."""
        n = order - self.shift
        if n < 0 or self.num.is_zero():
            return {}
        num = [Fraction(int(c)) for c in self.num.coeffs()]
        den = [Fraction(int(c)) for c in self.den.coeffs()]
        out: list[Fraction] = []
        for k in range(n + 1):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(acc / den[0])
        return {k + self.shift: c for k, c in enumerate(out) if c}

    # --------------------------------------------------------------- formats
    def to_json(self) -> dict:
        return {
            "num": {"lowest": self.shift, "coeffs": [int(c) for c in self.num.coeffs()]},
            "den": {"lowest": 0, "coeffs": [int(c) for c in self.den.coeffs()]},
        }

    @classmethod
    def from_json(cls, obj: dict) -> MotiveScalar:
        num = fmpz_poly(obj["num"]["coeffs"])
        den = fmpz_poly(obj["den"]["coeffs"])
        return cls.make(num, den, obj["num"]["lowest"] - obj["den"]["lowest"])

    def __str__(self) -> str:
        num = _render_laurent(self.shift, [int(c) for c in self.num.coeffs()])
        if self.den.is_one():
            return num
        den = _render_laurent(0, [int(c) for c in self.den.coeffs()])
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"MotiveScalar({self})"


def _render_power(k: int) -> str:
    if k % 2:
        return f"L^{{{k}/2}}"
    e = k // 2
    return "L" if e == 1 else f"L^{e}"


def _render_laurent(lowest: int, coeffs: list[int]) -> str:
    parts: list[str] = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if c == 0:
            continue
        k = lowest + i
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        elif a == 1:
            body = _render_power(k)
        else:
            body = f"{a}*{_render_power(k)}"
        parts.append(f"{sign} {body}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


Scalar = Union[MotiveScalar, int, Fraction]


def as_scalar(x: Scalar) -> MotiveScalar:
    if isinstance(x, MotiveScalar):
        return x
    if isinstance(x, int):
        return MotiveScalar.from_int(x)
    if isinstance(x, Fraction):
        return MotiveScalar.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to MotiveScalar")


ZERO = MotiveScalar(_ZERO_POLY, _ONE_POLY, 0)
ONE = MotiveScalar(_ONE_POLY, _ONE_POLY, 0)
V = MotiveScalar.monomial(1)
L = MotiveScalar.monomial(2)


def adams_scalar(x: Scalar, n: int) -> MotiveScalar:
    """psi_n: replace ``v`` by ``v^n``."""
    if n < 1:
        raise ValueError("Adams operations are indexed by n >= 1")
    return as_scalar(x).adams(n)


def pochhammer(x: Scalar, n: int) -> MotiveScalar:
    """``(x)_n = prod_{k=1}^{n} (1 - x^k)``."""
    x = as_scalar(x)
    out = ONE
    for k in range(1, n + 1):
        out = out * (ONE - x ** k)
    return out


def gl_motive(n: int) -> MotiveScalar:
    """``[GL_n] = prod_{k=0}^{n-1} (L^n - L^k)``."""
    out = ONE
    for k in range(n):
        out = out * (L ** n - L ** k)
    return out


def euler_value(x: Scalar) -> Fraction:
    """Specialize ``v -> 1``."""
    x = as_scalar(x)
    try:
        return x.evaluate(1)
    except DenominatorZero:
        raise PoleAtOne(f"{x} has a pole at L^(1/2) = 1") from None


def evaluate_at_prime_power(x: Scalar, q: int) -> Fraction:
    """Exact value at ``L = q``; requires ``x`` to be a function of ``v^2``."""
    x = as_scalar(x)
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    if x.shift % 2 or any(int(c) for c in x.num.coeffs()[1::2]) or any(
        int(c) for c in x.den.coeffs()[1::2]
    ):
        raise HalfPowerPresent(f"{x} involves odd powers of L^(1/2)")
    num = _eval_poly(x.num.deflate(2) if x.num.degree() > 0 else x.num, Fraction(q))
    den = _eval_poly(x.den.deflate(2) if x.den.degree() > 0 else x.den, Fraction(q))
    if den == 0:
        raise DenominatorZero(f"denominator of {x} vanishes at L = {q}")
    return num / den * Fraction(q) ** (x.shift // 2)
