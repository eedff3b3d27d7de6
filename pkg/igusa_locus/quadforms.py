"""
Binary Quadratic Forms.

Class numbers of imaginary quadratic orders by enumerating reduced primitive
forms, the genus count from ambiguous forms, and the h-tilde count of
principal polarization classes together with the CM orders it sums over.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple, Union

from .arith import is_squarefree
from .errors import DomainError


@dataclass(frozen=True)
class FormDisc:
    """Negative discriminant delta = 0 or 1 (mod 4)."""
    delta: int

    def __post_init__(self):
        if self.delta >= 0 or self.delta % 4 not in (0, 1):
            raise DomainError(f"{self.delta} is not a negative quadratic discriminant")


@dataclass(frozen=True, order=True)
class QuadForm:
    """Positive definite form a*x^2 + b*x*y + c*y^2."""
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def is_reduced(self) -> bool:
        if not (self.a > 0 and abs(self.b) <= self.a <= self.c):
            return False
        if abs(self.b) == self.a or self.a == self.c:
            return self.b >= 0
        return True

    def is_ambiguous(self) -> bool:
        return self.b == 0 or self.a == self.b or self.a == self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class ClassData:
    disc: FormDisc
    forms: Tuple[QuadForm, ...]
    h: int
    ambiguous_count: int


DiscLike = Union[int, FormDisc]


def _delta(delta: DiscLike) -> int:
    return (delta if isinstance(delta, FormDisc) else FormDisc(int(delta))).delta


@lru_cache(maxsize=None)
def _reduced_forms(delta: int) -> Tuple[QuadForm, ...]:
    forms = []
    a = 1
    while 3 * a * a <= -delta:
        for b in range(-a + 1, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(a, b, c) == 1:
                forms.append(QuadForm(a, b, c))
        a += 1
    return tuple(sorted(forms))


def reduced_forms(delta: DiscLike) -> List[QuadForm]:
    """Primitive reduced forms of discriminant delta, sorted by (a, b, c).

    Args:
        delta: Negative discriminant (int or FormDisc)

    Returns:
        List of QuadForm
    """
    return list(_reduced_forms(_delta(delta)))


def class_number(delta: DiscLike) -> int:
    return len(_reduced_forms(_delta(delta)))


def ambiguous_count(delta: DiscLike) -> int:
    """Number of ambiguous reduced forms, which equals the number of genera."""
    return sum(1 for f in _reduced_forms(_delta(delta)) if f.is_ambiguous())


def class_data(delta: DiscLike) -> ClassData:
    disc = delta if isinstance(delta, FormDisc) else FormDisc(int(delta))
    forms = _reduced_forms(disc.delta)
    return ClassData(
        disc=disc,
        forms=forms,
        h=len(forms),
        ambiguous_count=sum(1 for f in forms if f.is_ambiguous()),
    )


def _check_D(D: int) -> None:
    if D <= 0 or not is_squarefree(D):
        raise DomainError(f"D = {D} must be a positive squarefree integer")


def cm_orders_above(D: int) -> List[FormDisc]:
    """Discriminants of the orders between Z[sqrt(-D)] and the maximal order of Q(sqrt(-D))."""
    _check_D(D)
    if (-D) % 4 == 1:
        return [FormDisc(-4 * D), FormDisc(-D)]
    return [FormDisc(-4 * D)]


def h_tilde(D: int) -> int:
    """h(-4D), plus h(-D) when -D = 1 (mod 4)."""
    _check_D(D)
    h = class_number(-4 * D)
    if (-D) % 4 == 1:
        h += class_number(-D)
    return h


# =============================================================================
# REDUCTION ORACLE
# =============================================================================

def reduce_form(a: int, b: int, c: int) -> QuadForm:
    """Reduced representative of the SL2(Z) class of a positive definite form."""
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise DomainError(f"({a},{b},{c}) is not positive definite")
    while True:
        k = (a - b) // (2 * a)
        b, c = b + 2 * a * k, a * k * k + b * k + c
        if c < a:
            a, b, c = c, -b, a
            continue
        if c == a and b < 0:
            b = -b
        return QuadForm(a, b, c)


def class_number_by_reduction(delta: DiscLike, box: int = 40) -> int:
    """Count classes by reducing every primitive form in a box and deduplicating.

    The box widens with |delta| so that it always covers the reduced forms.
    """
    delta = _delta(delta)
    a_max = max(box, math.isqrt(-delta // 3) + 1)
    b_max = max(box, a_max)
    seen = set()
    for a in range(1, a_max + 1):
        start = -b_max if (b_max - delta) % 2 == 0 else -b_max + 1
        for b in range(start, b_max + 1, 2):
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if math.gcd(a, b, c) == 1:
                seen.add(reduce_form(a, b, c))
    return len(seen)
