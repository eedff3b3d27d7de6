"""
Quaternion Algebras and Orders over Q.

This module handles algebras (a,b / Q) and their ramification via Hilbert
symbols, orders given by Hermite bases, maximal orders (catalog lookup or
saturation), and the bounded searches for polarization quaternions and twists.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import isprime, legendre_symbol

from .arith import (
    RatLike,
    exact_isqrt,
    hermite_basis,
    prime_factors,
    signed_range,
    square_class,
    squarefree_part,
    to_rat,
    valuation,
)
from .errors import (
    CatalogError,
    ConsistencyError,
    DomainError,
    InadmissibleDiscriminant,
)

logger = logging.getLogger(__name__)


# =============================================================================
# PLACES AND HILBERT SYMBOLS
# =============================================================================

@dataclass(frozen=True)
class Place:
    """A place of Q: a prime p, or the infinite place when prime is None."""
    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not isprime(self.prime):
            raise DomainError(f"{self.prime} is not prime")

    @classmethod
    def of(cls, value) -> "Place":
        if isinstance(value, Place):
            return value
        if value is None or (isinstance(value, str) and value.lower() in ("inf", "infinity", "oo")):
            return INFINITY
        if isinstance(value, float) and math.isinf(value):
            return INFINITY
        return cls(int(value))

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def sort_key(self) -> Tuple[int, int]:
        return (1, 0) if self.is_infinite else (0, self.prime)

    def __str__(self):
        return "inf" if self.is_infinite else str(self.prime)


INFINITY = Place()


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a: RatLike, b: RatLike, v) -> int:
    """Hilbert symbol (a,b)_v over Q_v.

    Args:
        a: Nonzero rational
        b: Nonzero rational
        v: Place, prime, or "inf"

    Returns:
        +1 or -1
    """
    a, b = to_rat(a), to_rat(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    place = Place.of(v)
    if place.is_infinite:
        return -1 if a < 0 and b < 0 else 1

    p = place.prime
    alpha, u = valuation(square_class(a), p)
    beta, w = valuation(square_class(b), p)
    if p == 2:
        exponent = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if exponent % 2 else 1

    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= int(legendre_symbol(u % p, p))
    if alpha % 2:
        sign *= int(legendre_symbol(w % p, p))
    return sign


def relevant_places(a: Fraction, b: Fraction) -> List[Place]:
    primes = set(prime_factors(2 * a.numerator * a.denominator * b.numerator * b.denominator))
    return [Place(p) for p in sorted(primes)] + [INFINITY]


def ramified_set(a: RatLike, b: RatLike) -> FrozenSet[Place]:
    a, b = to_rat(a), to_rat(b)
    if a == 0 or b == 0:
        raise DomainError("Quaternion algebra needs nonzero structure constants")
    return frozenset(v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1)


def disc_of(a: RatLike, b: RatLike) -> int:
    """Product of the finite ramified primes of (a,b / Q)."""
    return math.prod(v.prime for v in ramified_set(a, b) if not v.is_infinite)


def is_totally_indefinite_division(a: RatLike, b: RatLike) -> bool:
    ramified = ramified_set(a, b)
    return bool(ramified) and INFINITY not in ramified


# =============================================================================
# ALGEBRAS AND ELEMENTS
# =============================================================================

@dataclass(frozen=True)
class QAlgebra:
    """Quaternion algebra with i^2 = a, j^2 = b, ij = -ji."""
    a: Fraction
    b: Fraction
    ramified: FrozenSet[Place] = field(init=False, compare=False)

    def __post_init__(self):
        a, b = to_rat(self.a), to_rat(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ramified", ramified_set(a, b))

    @property
    def disc(self) -> int:
        return math.prod(v.prime for v in self.ramified if not v.is_infinite)

    @property
    def ramified_primes(self) -> List[int]:
        return sorted(v.prime for v in self.ramified if not v.is_infinite)

    def is_division(self) -> bool:
        return bool(self.ramified)

    def is_totally_indefinite_division(self) -> bool:
        return self.is_division() and INFINITY not in self.ramified

    def element(self, x0: RatLike, x1: RatLike = 0, x2: RatLike = 0, x3: RatLike = 0) -> "Quat":
        return Quat(self, (x0, x1, x2, x3))

    def scalar(self, value: RatLike) -> "Quat":
        return Quat(self, (value, 0, 0, 0))

    def standard_basis(self) -> Tuple["Quat", ...]:
        return tuple(Quat(self, tuple(int(k == n) for k in range(4))) for n in range(4))

    def __str__(self):
        return f"({self.a},{self.b})"


def is_isomorphic(first: QAlgebra, second: QAlgebra) -> bool:
    """Quaternion algebras over Q are isomorphic iff they ramify at the same places."""
    return first.ramified == second.ramified


_LABELS = ("", "i", "j", "ij")


@dataclass(frozen=True)
class Quat:
    """x0 + x1*i + x2*j + x3*ij in its parent algebra."""
    algebra: QAlgebra
    coords: Tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        coords = tuple(to_rat(x) for x in self.coords)
        if len(coords) != 4:
            raise DomainError(f"A quaternion has 4 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    x0 = property(lambda self: self.coords[0])
    x1 = property(lambda self: self.coords[1])
    x2 = property(lambda self: self.coords[2])
    x3 = property(lambda self: self.coords[3])

    def _same(self, other: "Quat") -> None:
        if other.algebra != self.algebra:
            raise DomainError(f"Elements of {self.algebra} and {other.algebra} cannot be combined")

    def _lift(self, other) -> "Quat":
        if isinstance(other, Quat):
            self._same(other)
            return other
        return self.algebra.scalar(to_rat(other))

    def __add__(self, other):
        other = self._lift(other)
        return Quat(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Quat(self.algebra, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Quat):
            c = to_rat(other)
            return Quat(self.algebra, tuple(c * x for x in self.coords))
        self._same(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        return Quat(self.algebra, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Quat):
            return self * other.inverse()
        c = to_rat(other)
        if c == 0:
            raise ZeroDivisionError("quaternion division by zero")
        return Quat(self.algebra, tuple(x / c for x in self.coords))

    def conjugate(self) -> "Quat":
        x0, x1, x2, x3 = self.coords
        return Quat(self.algebra, (x0, -x1, -x2, -x3))

    def trd(self) -> Fraction:
        return 2 * self.coords[0]

    def nrd(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def inverse(self) -> "Quat":
        n = self.nrd()
        if n == 0:
            raise DomainError(f"{self} is not invertible")
        return self.conjugate() / n

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_pure(self) -> bool:
        return self.coords[0] == 0

    def is_scalar(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        return self.trd().denominator == 1 and self.nrd().denominator == 1

    def __str__(self):
        terms = []
        for x, label in zip(self.coords, _LABELS):
            if x == 0:
                continue
            if not label:
                body = str(abs(x))
            elif abs(x) == 1:
                body = label
            elif x.denominator == 1:
                body = f"{abs(x)}{label}"
            else:
                body = f"({abs(x)}){label}"
            terms.append(("-" if x < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


# =============================================================================
# ORDERS
# =============================================================================

def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])
    return to_rat(matrix.det())


def _trace_matrix(basis: Sequence[Quat]) -> List[List[Fraction]]:
    return [[(x * y).trd() for y in basis] for x in basis]


def lattice_disc(basis: Sequence[Quat]) -> Fraction:
    """Square root of |det trd(e_i e_j)| for a lattice basis."""
    det = abs(_det(_trace_matrix(basis)))
    num, den = exact_isqrt(det.numerator), exact_isqrt(det.denominator)
    if num is None or den is None or det == 0:
        raise DomainError(f"Trace determinant {det} is not a nonzero square; not an order basis")
    return Fraction(num, den)


@dataclass(frozen=True)
class QOrder:
    """An order, stored by the Hermite basis of its coordinate lattice.

    Any generating set of the lattice may be passed as basis; it is replaced by
    the Hermite basis, and integrality, closure and 1 in the span are checked.
    """
    algebra: QAlgebra
    basis: Tuple[Quat, ...]
    disc: int = field(init=False, compare=False)

    def __post_init__(self):
        for q in self.basis:
            if q.algebra != self.algebra:
                raise DomainError("Order basis lies in another algebra")
        rows = hermite_basis([q.coords for q in self.basis])
        basis = tuple(Quat(self.algebra, row) for row in rows)
        object.__setattr__(self, "basis", basis)

        if any(not e.is_integral() for e in basis):
            raise DomainError("Order basis has non-integral elements")
        if not self.contains(self.algebra.scalar(1)):
            raise DomainError("1 is not in the span of the order basis")
        for x in basis:
            for y in basis:
                if not self.contains(x * y):
                    raise DomainError(f"Span is not closed: {x} * {y} leaves it")
        disc = lattice_disc(basis)
        if disc.denominator != 1:
            raise DomainError(f"Order discriminant {disc} is not an integer")
        object.__setattr__(self, "disc", int(disc))

    @classmethod
    def from_generators(cls, algebra: QAlgebra, generators: Iterable[Quat], max_rounds: int = 8) -> "QOrder":
        """Smallest order containing 1 and the generators.

        Together with 1 the generators must span a full-rank lattice. Raises
        DomainError if the ring they generate is not integral.
        """
        gens = [algebra.scalar(1)] + list(generators)
        rows = hermite_basis([q.coords for q in gens])
        basis = [Quat(algebra, row) for row in rows]
        for _ in range(max_rounds):
            for x in basis:
                for y in basis:
                    if (x * y).trd().denominator != 1:
                        raise DomainError("Generators do not lie in a common order")
            products = [x * y for x in basis for y in basis]
            rows = hermite_basis([q.coords for q in basis + products])
            enlarged = [Quat(algebra, row) for row in rows]
            if enlarged == basis:
                return cls(algebra, tuple(basis))
            basis = enlarged
        raise DomainError(f"Ring closure did not stabilize in {max_rounds} rounds")

    def coordinates(self, x: Quat) -> Tuple[Fraction, ...]:
        """Coordinates of x in the basis, by back substitution on the triangular rows."""
        coords = [Fraction(0)] * 4
        for k in reversed(range(4)):
            residual = x.coords[k] - sum(coords[m] * self.basis[m].coords[k] for m in range(k + 1, 4))
            coords[k] = residual / self.basis[k].coords[k]
        return tuple(coords)

    def contains(self, x: Quat) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def element(self, coords: Sequence[int]) -> Quat:
        total = self.algebra.scalar(0)
        for c, e in zip(coords, self.basis):
            if c:
                total = total + e * c
        return total

    def trace_vector(self) -> Tuple[int, ...]:
        return tuple(int(e.trd()) for e in self.basis)

    def norm_form(self) -> Tuple[Tuple[int, ...], ...]:
        """Integer matrix T with 2*nrd(sum c_k e_k) = c^T T c."""
        return tuple(tuple(int((x * y.conjugate()).trd()) for y in self.basis) for x in self.basis)

    def is_maximal(self) -> bool:
        return self.disc == self.algebra.disc

    def __str__(self):
        return f"<{', '.join(str(e) for e in self.basis)}> in {self.algebra}"


def order_disc(order: QOrder) -> int:
    return order.disc


def is_maximal(order: QOrder) -> bool:
    return order.is_maximal()


def _integral_algebra(a: Fraction, b: Fraction) -> QAlgebra:
    return QAlgebra(a.numerator * a.denominator, b.numerator * b.denominator)


def _enlarge_at(order: QOrder, p: int) -> Optional[QOrder]:
    candidates = []
    for c in product(range(p), repeat=4):
        if not any(c):
            continue
        x = order.element(c)
        if int(x.trd()) % p or int(x.nrd()) % (p * p):
            continue
        candidates.append(x / p)

    for y in candidates:
        try:
            return QOrder(order.algebra, order.basis + (y,))
        except DomainError:
            continue
    for y in candidates:
        try:
            return QOrder.from_generators(order.algebra, order.basis + (y,), max_rounds=6)
        except DomainError:
            continue
    return None


def saturate_to_maximal(a: RatLike, b: RatLike) -> QOrder:
    """Maximal order containing Z<1, i, j, ij>, built one prime at a time.

    Non-integral structure constants are first replaced by the integers of
    their square classes, so the returned order lives in an algebra with
    integral a and b.
    """
    a, b = to_rat(a), to_rat(b)
    algebra = _integral_algebra(a, b)
    if not algebra.is_totally_indefinite_division():
        raise DomainError(f"{algebra} is not a totally indefinite division algebra")

    order = QOrder(algebra, algebra.standard_basis())
    target = algebra.disc
    if order.disc % target:
        raise ConsistencyError(f"disc {order.disc} of Z<1,i,j,ij> is not a multiple of {target}")
    steps = sum(sympy.factorint(order.disc // target).values())
    for _ in range(steps):
        if order.disc == target:
            break
        p = prime_factors(order.disc // target)[0]
        enlarged = _enlarge_at(order, p)
        if enlarged is None:
            raise ConsistencyError(f"No overorder at p = {p} for {order}")
        logger.debug("Saturating %s at p=%d: disc %d -> %d", algebra, p, order.disc, enlarged.disc)
        order = enlarged
    if not order.is_maximal():
        raise ConsistencyError(f"Saturation of {algebra} stopped at disc {order.disc}")
    return order


# =============================================================================
# ADMISSIBLE DISCRIMINANTS
# =============================================================================

def admissible_primes(D: int) -> List[int]:
    """Prime factors of D, provided D is the discriminant of an indefinite division algebra.

    Raises:
        InadmissibleDiscriminant: D <= 1, prime, not squarefree, or with an odd
            number of prime factors
    """
    if D <= 1:
        raise InadmissibleDiscriminant(f"D = {D}: a division algebra needs D > 1")
    factors = sympy.factorint(D)
    if any(e > 1 for e in factors.values()):
        raise InadmissibleDiscriminant(f"D = {D} is not squarefree")
    if len(factors) % 2:
        raise InadmissibleDiscriminant(
            f"D = {D} has {len(factors)} prime factor(s); a totally indefinite "
            "algebra over Q ramifies at an even number of primes"
        )
    return sorted(factors)


def algebra_for_discriminant(D: int, search_limit: Optional[int] = None) -> QAlgebra:
    """The presentation (-D, b) of discriminant D with the least b >= 1."""
    primes = frozenset(Place(p) for p in admissible_primes(D))
    limit = search_limit or 1000 * D
    for b in range(1, limit + 1):
        if ramified_set(-D, b) == primes:
            return QAlgebra(-D, b)
    raise ConsistencyError(f"No (-{D}, b) of discriminant {D} with b <= {limit}")


def maximal_order(D: int, catalog: Optional["OrderCatalog"] = None) -> QOrder:
    """Catalog order of discriminant D if present, else a saturated one."""
    admissible_primes(D)
    if catalog is not None:
        order = catalog.get(D)
        if order is not None:
            return order
    algebra = algebra_for_discriminant(D)
    logger.debug("No catalog order for D=%d; saturating in %s", D, algebra)
    return saturate_to_maximal(algebra.a, algebra.b)


# =============================================================================
# SEARCHES
# =============================================================================

def _quadratic(T: Sequence[Sequence[int]], c: Sequence[int]) -> int:
    return sum(c[k] * T[k][l] * c[l] for k in range(4) if c[k] for l in range(4) if c[l])


def find_mu(order: QOrder, D: int, bound: int) -> Optional[Quat]:
    """Pure mu in the order with nrd(mu) = D, or None when the box has none.

    The coordinate of the last basis element with nonzero trace is solved from
    trd(mu) = 0; the other three run over the box in the order 0, 1, -1, 2, ...
    and the first hit is returned.
    """
    if bound <= 0:
        return None
    traces = order.trace_vector()
    T = order.norm_form()
    dep = max(k for k in range(4) if traces[k])
    free = [k for k in range(4) if k != dep]
    values = signed_range(bound)
    for combo in product(values, repeat=3):
        c = [0] * 4
        for k, v in zip(free, combo):
            c[k] = v
        rest = sum(traces[k] * c[k] for k in free)
        if rest % traces[dep]:
            continue
        c[dep] = -rest // traces[dep]
        if abs(c[dep]) > bound or not any(c):
            continue
        if _quadratic(T, c) == 2 * D:
            mu = order.element(c)
            logger.debug("find_mu: D=%d mu=%s coords=%s", D, mu, c)
            return mu
    logger.info("find_mu: no mu with nrd %d within bound %d", D, bound)
    return None


def normalizes(order: QOrder, x: Quat) -> bool:
    """True iff x * e * x^-1 lies in the order for every basis element e."""
    if x.is_zero():
        raise DomainError("0 does not normalize anything")
    x_inv = x.inverse()
    return all(order.contains(x * e * x_inv) for e in order.basis)


_PAIR_PREFERENCE = ((2, 3), (1, 3), (1, 2), (0, 3), (0, 2), (0, 1))


def find_twists(order: QOrder, mu: Quat, bound: int) -> List[Tuple[Quat, int]]:
    """Pure chi in the order anticommuting with mu and normalizing the order.

    Each hit is reported with m, the squarefree part of |nrd(chi)|.

    Args:
        order: Maximal order
        mu: Polarization quaternion
        bound: Coordinate box

    Returns:
        List of (chi, m) in search order
    """
    if bound <= 0:
        return []
    D = order.algebra.disc
    traces = order.trace_vector()
    mixed = tuple(int((e * mu).trd()) for e in order.basis)
    for p, q in _PAIR_PREFERENCE:
        det = traces[p] * mixed[q] - traces[q] * mixed[p]
        if det:
            break
    else:
        raise DomainError(f"{mu} is scalar; it has no twists")
    free = [k for k in range(4) if k not in (p, q)]

    twists = []
    values = signed_range(bound)
    for u, v in product(values, repeat=2):
        c = [0] * 4
        c[free[0]], c[free[1]] = u, v
        r1 = -(traces[free[0]] * u + traces[free[1]] * v)
        r2 = -(mixed[free[0]] * u + mixed[free[1]] * v)
        num_p = r1 * mixed[q] - traces[q] * r2
        num_q = traces[p] * r2 - mixed[p] * r1
        if num_p % det or num_q % det:
            continue
        c[p], c[q] = num_p // det, num_q // det
        if abs(c[p]) > bound or abs(c[q]) > bound or not any(c):
            continue
        chi = order.element(c)
        if chi.nrd() == 0 or not normalizes(order, chi):
            continue
        m = squarefree_part(abs(int(chi.nrd())))
        if D % m:
            raise ConsistencyError(f"Twist {chi} has m = {m}, which does not divide {D}")
        twists.append((chi, m))
    logger.debug("find_twists: %d twist(s) of %s within bound %d", len(twists), mu, bound)
    return twists


# =============================================================================
# ORDER CATALOG
# =============================================================================

@dataclass(frozen=True)
class OrderCatalog:
    """Maximal orders keyed by discriminant, read from a JSON file."""
    orders: Dict[int, QOrder]
    path: Optional[Path] = None

    @classmethod
    def load(cls, path: Union[str, Path]) -> "OrderCatalog":
        """Read and validate a catalog file.

        Raises:
            CatalogError: unreadable file, bad schema, or an entry that is not
                a maximal order of the stated discriminant
        """
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise CatalogError(f"Cannot read order catalog {path}: {e}")

        orders = {}
        try:
            entries = data["entries"]
            for entry in entries:
                D = int(entry["D"])
                algebra = QAlgebra(int(entry["a"]), int(entry["b"]))
                basis = tuple(
                    Quat(algebra, tuple(Fraction(int(num), int(den)) for num, den in element))
                    for element in entry["basis"]
                )
                if len(basis) != 4:
                    raise CatalogError(f"D={D}: basis must have 4 elements")
                order = QOrder(algebra, basis)
                if algebra.disc != D or not order.is_maximal():
                    raise CatalogError(
                        f"D={D}: entry has algebra disc {algebra.disc} and order disc {order.disc}"
                    )
                orders[D] = order
        except (KeyError, TypeError, ValueError) as e:
            raise CatalogError(f"Malformed order catalog {path}: {e}")

        logger.info("Loaded %d catalog orders from %s", len(orders), path)
        return cls(orders=orders, path=path)

    def get(self, D: int) -> Optional[QOrder]:
        return self.orders.get(D)

    def __contains__(self, D: int) -> bool:
        return D in self.orders

    def __len__(self):
        return len(self.orders)
