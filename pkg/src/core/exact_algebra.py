"""
Exact arithmetic over the rationals, polynomials in s, and rational functions.

A polynomial is a dense tuple of Fraction coefficients indexed by the power of
s, e.g. (1, 0, 0, 0, 1/16) is 1 + 1/16 s^4. Trailing zeros are trimmed, so the
zero polynomial is the empty tuple. Rational functions are kept reduced: the
polynomial gcd of numerator and denominator is cancelled and the denominator
is made monic, which makes equality of rational functions structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Union

from core.errors import NonDivisibleError

Rational = Fraction
Scalar = Union[int, Fraction]
ArithOp = Literal["add", "sub", "mul", "div"]


def _trim(coefficients: Iterable[Scalar]) -> tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial in s over the rationals."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, coefficient: Scalar, power: int) -> "Polynomial":
        """Return coefficient * s**power."""
        if power < 0:
            raise ValueError(f"negative power {power}")
        return cls((0,) * power + (coefficient,))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _as_polynomial(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-_as_polynomial(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return _as_polynomial(other) - self

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _as_polynomial(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        # Cauchy product
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        """Repeated Cauchy product; polynomials have no negative powers."""
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent} for a polynomial")
        result = Polynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: Scalar) -> "Polynomial":
        return Polynomial(c * factor for c in self.coefficients)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def evaluate(self, x: Scalar) -> Fraction:
        """Horner evaluation at an exact point."""
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coefficients) if i > 0)

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division: self = quotient * divisor + remainder."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        shift = len(remainder) - len(divisor.coefficients)
        if shift < 0:
            return Polynomial.zero(), self
        quotient = [Fraction(0)] * (shift + 1)
        lead = divisor.leading
        for k in range(shift, -1, -1):
            factor = remainder[k + divisor.degree] / lead
            quotient[k] = factor
            if factor == 0:
                continue
            for i, c in enumerate(divisor.coefficients):
                remainder[k + i] -= factor * c
        return Polynomial(quotient), Polynomial(remainder[: divisor.degree])

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of a division that must leave no remainder."""
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero:
            raise NonDivisibleError(f"{divisor} does not divide {self}")
        return quotient

    def __str__(self) -> str:
        return format_polynomial(self)


def _as_polynomial(value: "Polynomial | Scalar") -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


def format_polynomial(poly: Polynomial, var: str = "s") -> str:
    """Render as e.g. '1 - s + 1/16*s^4'."""
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for power, c in enumerate(poly.coefficients):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            monomial = var if power == 1 else f"{var}^{power}"
            body = monomial if mag == 1 else f"{mag}*{monomial}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (Euclid over the rationals)."""
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_arith(a: Polynomial, b: Polynomial, op: ArithOp) -> Polynomial:
    """
    Apply add, sub or mul to two polynomials.

    Args:
        a: Left operand
        b: Right operand
        op: One of "add", "sub", "mul"; polynomials are not closed under "div"

    Returns:
        Polynomial: The trimmed result
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unsupported polynomial operation: {op}")


_S_MINUS_ONE = Polynomial((-1, 1))


def _divide_by_s_minus_one(a: Polynomial) -> tuple[Polynomial, Fraction]:
    """Synthetic division by (s - 1); the remainder equals a(1)."""
    if a.is_zero:
        return a, Fraction(0)
    carry = Fraction(0)
    quotient: list[Fraction] = []
    for c in reversed(a.coefficients):
        carry = carry + c
        quotient.append(carry)
    remainder = quotient.pop()
    return Polynomial(reversed(quotient)), remainder


def shift_and_divide(a: Polynomial, k: int) -> Polynomial:
    """Return a / (s-1)^k, failing on the first nonzero remainder."""
    for stage in range(k):
        a, remainder = _divide_by_s_minus_one(a)
        if remainder != 0:
            raise NonDivisibleError(
                f"(s-1) does not divide at stage {stage + 1} of {k} (remainder {remainder})"
            )
    return a


def multiplicity_at_one(a: Polynomial) -> int:
    """Order of vanishing of a nonzero polynomial at s = 1."""
    if a.is_zero:
        raise ValueError("the zero polynomial vanishes to every order")
    order = 0
    while True:
        quotient, remainder = _divide_by_s_minus_one(a)
        if remainder != 0:
            return order
        a = quotient
        order += 1


@dataclass(frozen=True)
class InfiniteLimit:
    """Outcome of a limit whose denominator vanishes to a higher order."""

    order: int

    def __str__(self) -> str:
        return "infinity"


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient num/den of polynomials in s."""

    num: Polynomial
    den: Polynomial = Polynomial((1,))

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Polynomial.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_divide(g)
                den = den.exact_divide(g)
        lead = den.leading
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def constant(cls, value: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(value))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = _as_ratfunc(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        # over lcm(den1, den2)
        g = poly_gcd(self.den, other.den)
        left = other.den.exact_divide(g)
        right = self.den.exact_divide(g)
        return RationalFunction(self.num * left + other.num * right, self.den * left)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: "Polynomial | Scalar") -> "RationalFunction":
        return _as_ratfunc(other) - self

    def __mul__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = _as_ratfunc(other)
        # cancel across first to keep the gcd in the constructor small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = self.num, other.den
        n2, d1 = other.num, self.den
        if g1.degree > 0:
            n1, d2 = n1.exact_divide(g1), d2.exact_divide(g1)
        if g2.degree > 0:
            n2, d1 = n2.exact_divide(g2), d1.exact_divide(g2)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RationalFunction":
        """Integer power; a negative exponent inverts first."""
        if exponent < 0:
            return ONE / self ** -exponent
        # num and den stay coprime under powers
        return RationalFunction(self.num ** exponent, self.den ** exponent)

    def __truediv__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = _as_ratfunc(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other: "Polynomial | Scalar") -> "RationalFunction":
        return _as_ratfunc(other) / self

    def evaluate(self, x: Scalar) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at s = {x}")
        return self.num.evaluate(x) / d

    def cross_equals(self, other: "RationalFunction") -> bool:
        """Equality by cross-multiplication, independent of normalization."""
        return self.num * other.den == other.num * self.den

    def __str__(self) -> str:
        if self.den == Polynomial.one():
            return f"{self.num}"
        return f"({self.num}) / ({self.den})"


def _as_ratfunc(value: "RationalFunction | Polynomial | Scalar") -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(_as_polynomial(value))


S = RationalFunction(Polynomial((0, 1)))
ONE = RationalFunction.constant(1)


def ratfunc_arith(a: RationalFunction, b: RationalFunction, op: ArithOp) -> RationalFunction:
    """
    Apply add, sub, mul or div to two rational functions.

    Args:
        a: Left operand
        b: Right operand
        op: One of "add", "sub", "mul", "div"

    Returns:
        RationalFunction: The reduced result
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unsupported rational-function operation: {op}")


def limit_at_one(f: RationalFunction) -> Fraction | InfiniteLimit:
    """
    Limit of f(s) as s -> 1 by exact cancellation of (s-1) factors.

    Equivalent to repeated L'Hospital on num and den. Returns InfiniteLimit
    when the denominator vanishes to strictly higher order.
    """
    if f.num.is_zero:
        return Fraction(0)
    k_num = multiplicity_at_one(f.num)
    k_den = multiplicity_at_one(f.den)
    if k_den > k_num:
        return InfiniteLimit(order=k_den - k_num)
    num = shift_and_divide(f.num, k_den)
    den = shift_and_divide(f.den, k_den)
    return num.evaluate(1) / den.evaluate(1)


def derivative(f: RationalFunction) -> RationalFunction:
    """Quotient rule (n'd - nd') / d^2, reduced."""
    num = f.num.derivative() * f.den - f.num * f.den.derivative()
    return RationalFunction(num, f.den * f.den)


def series_coefficients(f: RationalFunction, n_max: int) -> list[Fraction]:
    """
    Taylor coefficients c_0..c_{n_max} of f at s = 0.

    Uses den * c = num, i.e. c_n = (num_n - sum_{i>=1} den_i c_{n-i}) / den_0.
    """
    d0 = f.den[0]
    if d0 == 0:
        raise ZeroDivisionError("denominator has zero constant term; no power series at s = 0")
    coeffs: list[Fraction] = []
    den = f.den.coefficients
    for n in range(n_max + 1):
        acc = f.num[n]
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * coeffs[n - i]
        coeffs.append(acc / d0)
    return coeffs
