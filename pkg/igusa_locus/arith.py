"""
Exact Arithmetic and Elementary Number Theory.

This module holds the integer and rational helpers every other module builds on:
square classes, divisors, Kronecker symbols, Hermite normal forms of rational
lattices, and the QuadExtVal type for values of a single quadratic extension.
Integers are Python ints and rationals are fractions.Fraction throughout.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

import sympy
from sympy import factorint, jacobi_symbol
from sympy.core.intfunc import igcdex

from .errors import DomainError

Rat = Fraction
RatLike = Union[int, Fraction]


def to_rat(value) -> Fraction:
    """Convert an int, Fraction, sympy Rational or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise DomainError(f"Cannot read {value!r} as a rational number")


# =============================================================================
# INTEGERS
# =============================================================================

def squarefree_factor(n: int) -> Tuple[int, int]:
    """Write n = s * f**2 with s squarefree, f > 0 and sign(s) = sign(n).

    Args:
        n: Nonzero integer

    Returns:
        Tuple (s, f)
    """
    if n == 0:
        raise DomainError("squarefree_factor is undefined at 0")
    s, f = (1 if n > 0 else -1), 1
    for p, e in factorint(abs(n)).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


def squarefree_part(n: int) -> int:
    return squarefree_factor(n)[0]


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_factor(n)[1] == 1


def prime_factors(n: int) -> list:
    """Distinct prime factors of |n|, ascending."""
    return sympy.primefactors(n)


def divisors(n: int) -> list:
    """All positive divisors of n, ascending."""
    if n <= 0:
        raise DomainError(f"divisors needs a positive integer, got {n}")
    return [int(d) for d in sympy.divisors(n)]


def valuation(n: int, p: int) -> Tuple[int, int]:
    """Return (v, u) with n = p**v * u and p not dividing u."""
    if n == 0:
        raise DomainError("valuation is undefined at 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), multiplicative in both arguments."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v, n = valuation(n, 2)
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def exact_isqrt(n: int) -> Optional[int]:
    """Nonnegative square root of n when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(q: RatLike) -> Optional[Fraction]:
    """Nonnegative rational square root of q, or None if q is not a rational square."""
    q = Fraction(q)
    num, den = exact_isqrt(q.numerator), exact_isqrt(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def square_class(q: RatLike) -> int:
    """Integer in the same square class as the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("0 has no square class")
    return q.numerator * q.denominator


def signed_range(bound: int) -> Tuple[int, ...]:
    """0, 1, -1, 2, -2, ..., bound, -bound: the search order of every bounded box."""
    values = [0]
    for k in range(1, bound + 1):
        values.extend((k, -k))
    return tuple(values)


# =============================================================================
# LATTICES
# =============================================================================

def hermite_basis(vectors: Iterable[Sequence[RatLike]]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Lower-triangular Hermite basis of the lattice spanned by rational vectors.

    Row k has zeros past column k, a positive pivot in column k, and entries
    left of the pivot reduced into [0, pivot of that column).

    Args:
        vectors: Generators; they must span a full-rank lattice

    Returns:
        Tuple of basis rows, one per column
    """
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        raise DomainError("Empty generator list")
    n = len(rows[0])
    scale = 1
    for row in rows:
        for x in row:
            scale = math.lcm(scale, x.denominator)
    work = [[int(x * scale) for x in row] for row in rows]

    basis = [None] * n
    for col in reversed(range(n)):
        pivot = None
        rest = []
        for row in work:
            if row[col] == 0:
                rest.append(row)
            elif pivot is None:
                pivot = row
            else:
                x, y, g = (int(t) for t in igcdex(pivot[col], row[col]))
                a, b = pivot[col] // g, row[col] // g
                combined = [x * p + y * r for p, r in zip(pivot, row)]
                rest.append([b * p - a * r for p, r in zip(pivot, row)])
                pivot = combined
        if pivot is None:
            raise DomainError("Generators do not span a full-rank lattice")
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis[col] = pivot
        work = [row for row in rest if any(row)]

    for k in range(n):
        for j in reversed(range(k)):
            q = basis[k][j] // basis[j][j]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[j])]
    return tuple(tuple(Fraction(x, scale) for x in row) for row in basis)


# =============================================================================
# QUADRATIC EXTENSION VALUES
# =============================================================================

@dataclass(frozen=True, eq=False)
class QuadExtVal:
    """Exact value base + coef*sqrt(radicand).

    The radicand is squarefree and not 1 whenever coef != 0; rational values
    carry radicand 1.
    """
    base: Fraction
    coef: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        base, coef, radicand = Fraction(self.base), Fraction(self.coef), int(self.radicand)
        if radicand == 0:
            raise DomainError("Radicand must be nonzero")
        if coef == 0:
            radicand = 1
        else:
            radicand, f = squarefree_factor(radicand)
            coef *= f
            if radicand == 1:
                base, coef = base + coef, Fraction(0)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def coerce(cls, value) -> "QuadExtVal":
        if isinstance(value, QuadExtVal):
            return value
        return cls(to_rat(value))

    @classmethod
    def parse(cls, text: str) -> "QuadExtVal":
        """Read values such as "2", "-1/2", "sqrt(2)", "1/3 + 2*sqrt(5)"."""
        try:
            expr = sympy.sympify(text, rational=True)
        except (sympy.SympifyError, TypeError, SyntaxError) as e:
            raise DomainError(f"Cannot parse {text!r}: {e}")
        if expr.free_symbols:
            raise DomainError(f"{text!r} contains free symbols")
        rational_part, irrational = expr.as_coeff_Add()
        if not rational_part.is_Rational:
            raise DomainError(f"{text!r} is not of the form a + b*sqrt(r)")
        if irrational == 0:
            return cls(to_rat(rational_part))
        coef, surd = irrational.as_coeff_Mul()
        square = sympy.expand(surd ** 2)
        if not (coef.is_Rational and square.is_Integer):
            raise DomainError(f"{text!r} is not of the form a + b*sqrt(r)")
        return cls(to_rat(rational_part), to_rat(coef), int(square))

    @property
    def is_rational(self) -> bool:
        return self.coef == 0

    def is_zero(self) -> bool:
        return self.base == 0 and self.coef == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is not rational")
        return self.base

    def conjugate(self) -> "QuadExtVal":
        return QuadExtVal(self.base, -self.coef, self.radicand)

    def norm(self) -> Fraction:
        return self.base * self.base - self.coef * self.coef * self.radicand

    def to_sympy(self, root: sympy.Symbol):
        """Sympy expression with the square root replaced by the symbol root."""
        base = sympy.Rational(self.base.numerator, self.base.denominator)
        coef = sympy.Rational(self.coef.numerator, self.coef.denominator)
        return base + coef * root

    def _radicand_with(self, other: "QuadExtVal") -> int:
        if self.radicand == 1:
            return other.radicand
        if other.radicand in (1, self.radicand):
            return self.radicand
        raise DomainError(
            f"Mixed radicands sqrt({self.radicand}) and sqrt({other.radicand}) are not supported"
        )

    def __add__(self, other):
        other = QuadExtVal.coerce(other)
        return QuadExtVal(self.base + other.base, self.coef + other.coef, self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExtVal(-self.base, -self.coef, self.radicand)

    def __sub__(self, other):
        return self + (-QuadExtVal.coerce(other))

    def __rsub__(self, other):
        return QuadExtVal.coerce(other) - self

    def __mul__(self, other):
        other = QuadExtVal.coerce(other)
        r = self._radicand_with(other)
        return QuadExtVal(
            self.base * other.base + self.coef * other.coef * r,
            self.base * other.coef + self.coef * other.base,
            r,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return QuadExtVal(1) / self ** (-exponent)
        result = QuadExtVal(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __truediv__(self, other):
        other = QuadExtVal.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError(f"{self} / 0")
        n = other.norm()
        conj = other.conjugate()
        return self * QuadExtVal(conj.base / n, conj.coef / n, conj.radicand)

    def __rtruediv__(self, other):
        return QuadExtVal.coerce(other) / self

    def __eq__(self, other):
        try:
            other = QuadExtVal.coerce(other)
        except DomainError:
            return NotImplemented
        return (self.base, self.coef, self.radicand) == (other.base, other.coef, other.radicand)

    def __hash__(self):
        if self.is_rational:
            return hash(self.base)
        return hash((self.base, self.coef, self.radicand))

    def sort_key(self) -> Tuple[Fraction, Fraction, int]:
        return (self.base, self.coef, self.radicand)

    def __str__(self):
        if self.is_rational:
            return str(self.base)
        surd = f"sqrt({self.radicand})"
        if self.coef == 1:
            irrational = surd
        elif self.coef == -1:
            irrational = f"-{surd}"
        elif self.coef.denominator == 1:
            irrational = f"{self.coef}*{surd}"
        else:
            irrational = f"({self.coef})*{surd}"
        if self.base == 0:
            return irrational
        if irrational.startswith("-"):
            return f"{self.base} - {irrational[1:]}"
        return f"{self.base} + {irrational}"

    def __repr__(self):
        return f"QuadExtVal({self})"
