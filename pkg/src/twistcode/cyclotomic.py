"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as an integer vector over the power basis
``1, z, ..., z^(phi(N)-1)`` of ``Q(zeta_N)`` together with a positive common
denominator.  Every arithmetic result is reduced modulo the N-th cyclotomic
polynomial, so at a fixed conductor the representation is unique.  Equality
and hashing go through :meth:`Cyclotomic.minimal`, which descends to the
smallest conductor containing the value, so ``zeta(15, 5) == zeta(3)``.

Literal syntax (used by every data file)::

    -z5^4-z5        3/2*z15^8+1        2*z3        -7/3

"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

from .errors import ConductorOverflowError, InvalidConductorError, ParseError

__all__ = [
    "Cyclotomic",
    "zeta",
    "make_and_reduce",
    "conjugate_and_embed",
    "parse",
    "cyclotomic_polynomial",
    "set_conductor_cap",
    "get_conductor_cap",
]

_CONDUCTOR_CAP = 240


def set_conductor_cap(cap: int) -> None:
    global _CONDUCTOR_CAP
    if cap < 1:
        raise ValueError("conductor cap must be positive")
    _CONDUCTOR_CAP = int(cap)


def get_conductor_cap() -> int:
    return _CONDUCTOR_CAP


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise InvalidConductorError(f"conductor must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dd]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num[:dd]), "non-exact polynomial division"
    return quot


class _Field:
    """Precomputed reduction data for Q(zeta_N)."""

    __slots__ = ("n", "phi", "red", "units")

    def __init__(self, n: int):
        poly = cyclotomic_polynomial(n)
        phi = len(poly) - 1
        self.n = n
        self.phi = phi
        # red[k] = coordinates of zeta^k in the power basis
        top = [-c for c in poly[:phi]]
        red = []
        for k in range(n):
            if k < phi:
                v = [0] * phi
                v[k] = 1
            else:
                prev = red[k - 1]
                carry = prev[-1]
                v = [0] + prev[:-1]
                if carry:
                    v = [a + carry * b for a, b in zip(v, top)]
            red.append(v)
        self.red = red
        self.units = tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    if n < 1:
        raise InvalidConductorError(f"conductor must be >= 1, got {n}")
    return _Field(n)


def _lcm_conductor(a: int, b: int) -> int:
    m = a * b // math.gcd(a, b)
    if m > _CONDUCTOR_CAP:
        raise ConductorOverflowError(
            f"conductor lcm({a}, {b}) = {m} exceeds cap {_CONDUCTOR_CAP}"
        )
    return m


@lru_cache(maxsize=None)
def _descent(n: int, m: int):
    """Rows/inverse that recover Q(zeta_m) coordinates from Q(zeta_n) coordinates."""
    fn, fm = _field(n), _field(m)
    step = n // m
    cols = [fn.red[(i * step) % n] for i in range(fm.phi)]
    # pick fm.phi independent coordinate rows of the n x m lift matrix
    rows: list[int] = []
    basis: list[list[Fraction]] = []
    for r in range(fn.phi):
        vec = [Fraction(cols[i][r]) for i in range(fm.phi)]
        trial = basis + [vec]
        if _rank(trial) == len(trial):
            basis.append(vec)
            rows.append(r)
            if len(rows) == fm.phi:
                break
    return tuple(rows), _invert(basis)


def _rank(mat: list[list[Fraction]]) -> int:
    mat = [row[:] for row in mat]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(mat)]
    for c in range(k):
        piv = next(r for r in range(c, k) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(k):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[k:] for row in aug]


Number = Union["Cyclotomic", int, Fraction]


class Cyclotomic:
    """An immutable element of Q(zeta_N)."""

    __slots__ = ("conductor", "num", "den", "_min", "_hash")

    def __init__(self, conductor: int, num: Iterable[int], den: int = 1):
        if conductor < 1:
            raise InvalidConductorError(f"conductor must be >= 1, got {conductor}")
        num = tuple(int(c) for c in num)
        if len(num) != _field(conductor).phi:
            raise ValueError("coefficient vector length must equal phi(conductor)")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.conductor = conductor
        self.num = num
        self.den = den
        self._min = None
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: int | Fraction | Rational) -> Cyclotomic:
        value = Fraction(value)
        return cls(1, (value.numerator,), value.denominator)

    @classmethod
    def from_terms(cls, conductor: int, terms: Iterable[tuple[int, int | Fraction]]) -> Cyclotomic:
        """Reduce ``sum c * zeta_N^k`` to canonical (minimal-conductor) form."""
        return cls.from_terms_at(conductor, terms).minimal()

    @classmethod
    def from_terms_at(cls, conductor: int, terms: Iterable[tuple[int, int | Fraction]]) -> Cyclotomic:
        """Like :meth:`from_terms` but stays at ``conductor``."""
        fld = _field(conductor)
        fracs = [(int(k) % conductor, Fraction(c)) for k, c in terms]
        den = 1
        for _, c in fracs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        acc = [0] * fld.phi
        for k, c in fracs:
            if c:
                ci = int(c * den)
                for i, r in enumerate(fld.red[k]):
                    if r:
                        acc[i] += ci * r
        return cls(conductor, acc, den)

    @classmethod
    def coerce(cls, value: Number) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction, Rational)):
            return cls.rational(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Cyclotomic")

    # -- structure ----------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        """Nonzero power-basis coefficients at the current conductor."""
        return {k: Fraction(c, self.den) for k, c in enumerate(self.num) if c}

    def lift(self, conductor: int) -> Cyclotomic:
        """Re-express at a multiple of the current conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        fld = _field(conductor)
        step = conductor // self.conductor
        acc = [0] * fld.phi
        for i, c in enumerate(self.num):
            if c:
                for j, r in enumerate(fld.red[(i * step) % conductor]):
                    if r:
                        acc[j] += c * r
        out = Cyclotomic(conductor, acc, self.den)
        out._min = self._min
        return out

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism zeta_N -> zeta_N^k (k coprime to N)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit mod {n}")
        k %= n
        if k == 1:
            return self
        fld = _field(n)
        acc = [0] * fld.phi
        for i, c in enumerate(self.num):
            if c:
                for j, r in enumerate(fld.red[(i * k) % n]):
                    if r:
                        acc[j] += c * r
        return Cyclotomic(n, acc, self.den)

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1 % self.conductor) if self.conductor > 2 else self

    def minimal(self) -> Cyclotomic:
        """Canonical form: the same value at the smallest possible conductor."""
        if self._min is not None:
            return self._min
        n = self.conductor
        result = self
        if not any(self.num[1:]):
            result = Cyclotomic(1, (self.num[0],), self.den)
        else:
            for m in _divisors(n)[:-1]:
                if m % 4 == 2:
                    continue
                units = [k for k in _field(n).units if k % m == 1 % m and k != 1]
                if all(self.galois(k).num == self.num for k in units):
                    rows, inv = _descent(n, m)
                    vec = [Fraction(self.num[r], self.den) for r in rows]
                    coords = [sum(a * b for a, b in zip(row, vec)) for row in inv]
                    den = 1
                    for c in coords:
                        den = den * c.denominator // math.gcd(den, c.denominator)
                    cand = Cyclotomic(m, [int(c * den) for c in coords], den)
                    assert cand.lift(n).num == self.num and cand.lift(n).den == self.den
                    result = cand
                    break
        result._min = result
        self._min = result
        return result

    # -- predicates and conversion ------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return self.minimal().conductor == 1

    def is_integer(self) -> bool:
        return self.is_rational() and self.minimal().den == 1

    def to_fraction(self) -> Fraction:
        m = self.minimal()
        if m.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(m.num[0], m.den)

    def __complex__(self) -> complex:
        n = self.conductor
        re_parts, im_parts = [], []
        for k, c in enumerate(self.num):
            if c:
                w = cmath.exp(2j * math.pi * k / n)
                re_parts.append(c * w.real)
                im_parts.append(c * w.imag)
        return complex(math.fsum(re_parts), math.fsum(im_parts)) / self.den

    def embed(self) -> complex:
        return complex(self)

    # -- arithmetic ---------------------------------------------------

    def _align(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if self.conductor == other.conductor:
            return self, other
        n = _lcm_conductor(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other: Number) -> Cyclotomic:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._align(other)
        if a.den == b.den:
            return Cyclotomic(a.conductor, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyclotomic(
            a.conductor, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.conductor, [-x for x in self.num], self.den)

    def __sub__(self, other: Number) -> Cyclotomic:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> Cyclotomic:
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other: Number) -> Cyclotomic:
        if isinstance(other, int):
            return Cyclotomic(self.conductor, [x * other for x in self.num], self.den)
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if other.conductor == 1:
            c = other.num[0]
            return Cyclotomic(self.conductor, [x * c for x in self.num], self.den * other.den)
        if self.conductor == 1:
            return other * self
        a, b = self._align(other)
        fld = _field(a.conductor)
        n, phi = fld.n, fld.phi
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        acc = conv[:phi]
        red = fld.red
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                for j, r in enumerate(red[k % n]):
                    if r:
                        acc[j] += c * r
        return Cyclotomic(a.conductor, acc, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.minimal()
        prod = Cyclotomic.rational(1)
        for k in _field(m.conductor).units:
            if k % m.conductor != 1 % m.conductor:
                prod = prod * m.galois(k)
        norm = (prod * m).to_fraction()
        return prod * Cyclotomic.rational(1 / norm)

    def __truediv__(self, other: Number) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(
                self.conductor, [x * other.denominator for x in self.num], self.den * other.numerator
            )
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> Cyclotomic:
        return Cyclotomic.coerce(other) / self

    def __pow__(self, exponent: int) -> Cyclotomic:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic(self.conductor, [1] + [0] * (len(self.num) - 1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.den == other.den and self.num == other.num
        a, b = self.minimal(), other.minimal()
        return a.conductor == b.conductor and a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self._hash is None:
            m = self.minimal()
            if m.conductor == 1:
                self._hash = hash(Fraction(m.num[0], m.den))
            else:
                self._hash = hash((m.conductor, m.num, m.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- text ---------------------------------------------------------

    def __str__(self) -> str:
        m = self.minimal()
        n = m.conductor
        terms = []
        for k in range(len(m.num) - 1, -1, -1):
            c = Fraction(m.num[k], m.den)
            if not c:
                continue
            if k == 0 or n == 1:
                body, coef = "", str(abs(c))
            else:
                body = f"z{n}" if k == 1 else f"z{n}^{k}"
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
            terms.append(("-" if c < 0 else "+", coef + body))
        if not terms:
            return "0"
        text = "".join(sign + t for sign, t in terms)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"Cyclotomic('{self}')"


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k at conductor n (not descended)."""
    return Cyclotomic.from_terms_at(n, [(k, 1)])


def make_and_reduce(conductor: int, raw_terms: Iterable[tuple[int, int | Fraction]]) -> Cyclotomic:
    return Cyclotomic.from_terms(conductor, raw_terms)


def conjugate_and_embed(z: Cyclotomic) -> tuple[Cyclotomic, complex]:
    return z.conjugate(), complex(z)


_TERM = re.compile(
    r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*(?=z))?)?(?:z(\d+)(?:\^(-?\d+))?)?"
)


def parse(text: str) -> Cyclotomic:
    """Parse a literal such as ``'-z5^4-z5'`` or ``'3/2*z15^8+1'``."""
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return Cyclotomic.rational(text)
        raise ParseError(f"expected a cyclotomic literal string, got {text!r}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty cyclotomic literal")
    pos = 0
    total = Cyclotomic.rational(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        sign, coef, cond, exp = m.groups()
        if not sign and not first:
            raise ParseError(f"missing operator in {text!r} at offset {pos}")
        if coef is None and cond is None:
            raise ParseError(f"dangling sign in {text!r} at offset {pos}")
        try:
            c = Fraction(coef) if coef is not None else Fraction(1)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None
        if sign == "-":
            c = -c
        if cond is None:
            term = Cyclotomic.rational(c)
        else:
            n = int(cond)
            if n < 1:
                raise ParseError(f"invalid conductor z{n} in {text!r}")
            term = Cyclotomic.from_terms_at(n, [(int(exp) if exp is not None else 1, c)])
        total = total + term
        pos = m.end()
        first = False
    return total.minimal()
