"""Exact rational scalars and dense univariate polynomials over Q.

A :class:`Poly` stores integer numerators over one shared positive
denominator, ascending by degree. Every constructor path normalizes, so two
equal polynomials always have identical internal state (and hash equally).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

# degree of the zero polynomial; compares below every int and absorbs
# arithmetic instead of masquerading as -1
NEG_INF = -math.inf

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse ``[sign]int[/posint]`` into a reduced Fraction."""
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_sqrt(x: Fraction) -> Fraction | None:
    """Nonnegative rational square root, or None when x is not a rational square."""
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------------------------
# integer polynomial kernels
# ----------------------------------------------------------------------------

_KRONECKER_MIN = 24


def _mul_school(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(a: Sequence[int], width: int) -> int:
    """Pack signed digits into one integer, base 2**(8*width)."""
    pos = b"".join((x if x > 0 else 0).to_bytes(width, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(width, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = len(a) + len(b) - 1
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * width
    half = 1 << (bits - 1)
    prod = _pack(a, width) * _pack(b, width)
    # offsetting every digit by `half` makes the unpack borrow-free
    offset = int.from_bytes(half.to_bytes(width, "little") * n, "little")
    raw = (prod + offset).to_bytes(width * n, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half for i in range(n)]


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of two integer coefficient lists (ascending, both nonempty)."""
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _mul_school(a, b)
    return _mul_kronecker(a, b)


# ----------------------------------------------------------------------------
# Poly
# ----------------------------------------------------------------------------

class Poly:
    """Immutable dense polynomial with rational coefficients."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        fr = [as_rat(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set([c.numerator * (den // c.denominator) for c in fr], den)

    def _set(self, num: list[int], den: int) -> None:
        while num and num[-1] == 0:
            num.pop()
        if not num:
            den = 1
        else:
            g = math.gcd(den, *num)
            if g != 1:
                num = [x // g for x in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: list[int], den: int) -> "Poly":
        p = cls.__new__(cls)
        if den < 0:
            num, den = [-x for x in num], -den
        p._set(num, den)
        return p

    @classmethod
    def const(cls, c: RatLike) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw([0, 1], 1)

    @classmethod
    def monomial(cls, k: int, c: RatLike = 1) -> "Poly":
        c = as_rat(c)
        return cls._raw([0] * k + [c.numerator], c.denominator)

    # -- accessors ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def int_parts(self) -> tuple[tuple[int, ...], int]:
        """Numerators and the shared denominator."""
        return self._num, self._den

    @property
    def degree(self) -> Union[int, float]:
        return len(self._num) - 1 if self._num else NEG_INF

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    @property
    def lc(self) -> Fraction:
        if not self._num:
            raise ValueError("zero polynomial has no leading coefficient")
        return Fraction(self._num[-1], self._den)

    def __len__(self) -> int:
        return len(self._num)

    # -- dunder arithmetic --------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly([{', '.join(repr(rat_str(c)) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return to_text(self)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        a, b = self._num, other._num
        if len(a) < len(b):
            a, b, fa, fb = b, a, fb, fa
        out = [x * fa for x in a]
        for i, y in enumerate(b):
            out[i] += y * fb
        return Poly._raw(out, den)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw([-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly._raw([x * c.numerator for x in self._num], self._den * c.denominator)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._num or not other._num:
            return Poly()
        return Poly._raw(int_poly_mul(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_rat(c)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return self * (1 / c)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return poly_divmod(self, other)

    def __call__(self, x):
        if isinstance(x, Poly):
            return compose(self, x)
        return eval_poly(self, x)


# ----------------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------------

def eval_poly(P: Poly, x: RatLike) -> Fraction:
    """Exact value P(x)."""
    x = as_rat(x)
    num, den = P._num, P._den
    if not num:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    acc = 0
    qp = 1
    # homogenized Horner: acc = q**deg * P(p/q) * den
    for c in reversed(num):
        acc = acc * p + c * qp
        qp *= q
    return Fraction(acc, den * q ** (len(num) - 1))


def eval_float(P: Poly, x: float) -> float:
    acc = 0.0
    for c in reversed(P.coeffs):
        acc = acc * x + float(c)
    return acc


def compose(outer: Poly, inner: Poly) -> Poly:
    """outer(inner(x)) by Horner's scheme."""
    if outer.is_zero():
        return Poly()
    coeffs = outer.coeffs
    result = Poly.const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        result = result * inner + c
    return result


def derivative(P: Poly) -> Poly:
    num, den = P.int_parts
    return Poly._raw([k * num[k] for k in range(1, len(num))], den)


def antiderivative(p: Poly) -> Poly:
    """The antiderivative vanishing at 0."""
    num, den = p.int_parts
    if not num:
        return Poly()
    lcm = math.lcm(*range(1, len(num) + 1))
    return Poly._raw([0] + [c * (lcm // (k + 1)) for k, c in enumerate(num)], den * lcm)


def coeff_from_top(P: Poly, i: int) -> Fraction:
    """C_i(P): the coefficient of x**(n-i), n = deg P."""
    if P.is_zero() or not 0 <= i <= P.degree:
        raise IndexError(f"coefficient index {i} out of range for degree {P.degree}")
    return P.coeff(int(P.degree) - i)


def poly_divmod(A: Poly, B: Poly) -> tuple[Poly, Poly]:
    if B.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(A.coeffs)
    bc = B.coeffs
    db = len(bc) - 1
    lead = bc[-1]
    if len(rem) - 1 < db:
        return Poly(), A
    quo = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            t = c / lead
            quo[k - db] = t
            for j in range(db + 1):
                rem[k - db + j] -= t * bc[j]
    return Poly(quo), Poly(rem[:db])


def poly_gcd(A: Poly, B: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not B.is_zero():
        A, B = B, poly_divmod(A, B)[1]
    if A.is_zero():
        return A
    return A / A.lc


def definite_integral(P: Poly, e: "Endpoints") -> Fraction:
    F = antiderivative(P)
    return eval_poly(F, e.b) - eval_poly(F, e.a)


def monic_zero_const(P: Poly) -> Poly:
    """(P - P(0)) / lc(P): the normal form of a right factor."""
    if P.is_constant():
        raise ValueError("normal form needs a nonconstant polynomial")
    return (P - P.coeff(0)) / P.lc


# ----------------------------------------------------------------------------
# small value types
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """x -> alpha*x + beta."""

    alpha: Fraction
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        object.__setattr__(self, "beta", as_rat(self.beta))
        if self.alpha == 0:
            raise ValueError("LinearMap needs alpha != 0")

    @classmethod
    def identity(cls) -> "LinearMap":
        return cls(Fraction(1), Fraction(0))

    def as_poly(self) -> Poly:
        return Poly([self.beta, self.alpha])

    def inverse(self) -> "LinearMap":
        return LinearMap(1 / self.alpha, -self.beta / self.alpha)

    def then(self, other: "LinearMap") -> "LinearMap":
        """other o self."""
        return LinearMap(other.alpha * self.alpha, other.alpha * self.beta + other.beta)

    def __call__(self, x: RatLike) -> Fraction:
        return self.alpha * as_rat(x) + self.beta


@dataclass(frozen=True)
class Endpoints:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "b", as_rat(self.b))
        if self.a == self.b:
            raise ValueError("endpoints must be distinct")


# ----------------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------------

def poly_to_json(P: Poly) -> list[str]:
    return [rat_str(c) for c in P.coeffs] or ["0"]


def poly_from_json(items) -> Poly:
    if not isinstance(items, list):
        raise ValueError("polynomial must be a JSON array of rational strings")
    out = []
    for pos, item in enumerate(items):
        if not isinstance(item, str):
            raise ValueError(f"entry {pos}: expected a rational string, got {item!r}")
        try:
            out.append(parse_rat(item))
        except ValueError as exc:
            raise ValueError(f"entry {pos}: {exc}") from None
    return Poly(out)


def to_text(P: Poly, var: str = "x") -> str:
    if P.is_zero():
        return "0"
    terms = []
    for k in range(int(P.degree), -1, -1):
        c = P.coeff(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = rat_str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{rat_str(mag)}*{mono}"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
