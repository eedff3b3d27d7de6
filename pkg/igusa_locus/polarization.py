"""
Polarizations from Pure Quaternions.

This module turns a pure quaternion mu of the reduced different into a line
bundle class: its integral Riemann form on the order basis, the degree via the
Pfaffian, the Rosati involution with its trace form, and Atkin-Lehner isogeny
witnesses between two polarizations.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from .arith import signed_range, to_rat
from .errors import ConsistencyError, DomainError
from .quaternion import QOrder, Quat, find_twists, normalizes

logger = logging.getLogger(__name__)

Matrix4 = Tuple[Tuple[int, ...], ...]

# Riemann forms divide by the algebra discriminant: mu -> E_mu is additive and
# |Pf(E_mu)| = |nrd(mu)| / D.
RIEMANN_DENOMINATOR = "D"


@dataclass(frozen=True)
class RiemannForm:
    order: QOrder
    mu: Quat
    matrix: Matrix4

    @property
    def pfaffian(self) -> int:
        return pfaffian(self.matrix)


@dataclass(frozen=True)
class RosatiGram:
    order: QOrder
    mu: Quat
    gram: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Witness:
    """omega with conj(omega) * mu * omega = m * mu2."""
    omega: Quat
    m: Fraction

    def reversed(self) -> "Witness":
        """Witness for the swapped pair (mu2, mu): conj(omega) with multiplier nrd(omega)^2 / m."""
        return Witness(self.omega.conjugate(), self.omega.nrd() ** 2 / self.m)


def _discriminant(order: QOrder) -> int:
    return order.algebra.disc


def in_reduced_different(order: QOrder, x: Quat) -> bool:
    """True iff x lies in the order and D divides nrd(x)."""
    if not order.contains(x):
        return False
    return int(x.nrd()) % _discriminant(order) == 0


def riemann_form(order: QOrder, mu: Quat) -> RiemannForm:
    """Integral alternating matrix E[a][b] = -trd(mu e_a conj(e_b)) / D.

    Args:
        order: Maximal order
        mu: Pure element of the reduced different

    Returns:
        RiemannForm on the order basis
    """
    if not mu.is_pure():
        raise DomainError(f"{mu} is not pure")
    D = _discriminant(order)
    rows = []
    for ea in order.basis:
        row = []
        for eb in order.basis:
            value = -(mu * ea * eb.conjugate()).trd() / D
            if value.denominator != 1:
                raise DomainError(f"{mu} does not give an integral Riemann form (entry {value})")
            row.append(int(value))
        rows.append(tuple(row))
    return RiemannForm(order=order, mu=mu, matrix=tuple(rows))


def pfaffian(matrix: Matrix4) -> int:
    e = matrix
    return e[0][1] * e[2][3] - e[0][2] * e[1][3] + e[0][3] * e[1][2]


def polarization_degree(form: RiemannForm) -> int:
    """|Pf(E)|, checked against |nrd(mu)| / D."""
    degree = abs(form.pfaffian)
    expected = abs(form.mu.nrd()) / _discriminant(form.order)
    if degree != expected:
        raise ConsistencyError(f"Pfaffian {form.pfaffian} disagrees with nrd({form.mu})/D = {expected}")
    return degree


def is_principal(order: QOrder, mu: Quat) -> bool:
    return polarization_degree(riemann_form(order, mu)) == 1


def rosati(order: QOrder, mu: Quat, beta: Quat) -> Quat:
    """beta -> mu^-1 conj(beta) mu."""
    if mu.is_zero():
        raise DomainError("Rosati involution needs mu != 0")
    return mu.inverse() * beta.conjugate() * mu


def rosati_gram(order: QOrder, mu: Quat) -> RosatiGram:
    gram = tuple(
        tuple((ea * rosati(order, mu, eb)).trd() for eb in order.basis)
        for ea in order.basis
    )
    return RosatiGram(order=order, mu=mu, gram=gram)


def _leading_minors(gram: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in gram])
    return [to_rat(matrix[:k, :k].det()) for k in range(1, len(gram) + 1)]


def rosati_positive(order: QOrder, mu: Quat) -> bool:
    """Positive definiteness of the Rosati trace form trd(e_a mu^-1 conj(e_b) mu)."""
    if not mu.is_pure() or mu.nrd() <= 0:
        raise DomainError(f"Rosati positivity needs pure mu with nrd > 0, got nrd({mu}) = {mu.nrd()}")
    return all(minor > 0 for minor in _leading_minors(rosati_gram(order, mu).gram))


# =============================================================================
# ATKIN-LEHNER ISOGENY WITNESSES
# =============================================================================

def check_witness(order: QOrder, omega: Quat, mu: Quat, mu2: Quat) -> Optional[Witness]:
    """Witness(omega, m) if omega normalizes the order and conj(omega) mu omega = m mu2 with m > 0."""
    if omega.nrd() == 0 or not normalizes(order, omega):
        return None
    image = omega.conjugate() * mu * omega
    k = next(n for n in range(4) if mu2.coords[n])
    m = image.coords[k] / mu2.coords[k]
    if m > 0 and image == mu2 * m:
        return Witness(omega=omega, m=m)
    return None


def al_isogeny_witness(order: QOrder, mu: Quat, mu2: Quat, bound: int,
                       candidates: Iterable[Quat] = ()) -> Optional[Witness]:
    """Search omega normalizing the order with conj(omega) mu omega = m mu2, m > 0.

    The given candidates are tried before the coordinate box. None means the
    search ran out, not that no witness exists.

    Args:
        order: Maximal order
        mu: Principal polarization quaternion
        mu2: Principal polarization quaternion
        bound: Coordinate box for omega
        candidates: Elements tried first (twists, for instance)

    Returns:
        Witness or None
    """
    D = _discriminant(order)
    for x in (mu, mu2):
        if not x.is_pure() or x.nrd() != D:
            raise DomainError(f"{x} is not a principal polarization quaternion (nrd must be {D})")

    for omega in candidates:
        witness = check_witness(order, omega, mu, mu2)
        if witness is not None:
            return witness
    for c in product(signed_range(bound), repeat=4):
        if not any(c):
            continue
        witness = check_witness(order, order.element(c), mu, mu2)
        if witness is not None:
            logger.debug("Atkin-Lehner witness omega=%s m=%s", witness.omega, witness.m)
            return witness
    logger.info("No Atkin-Lehner witness from %s to %s within bound %d", mu, mu2, bound)
    return None


# =============================================================================
# SAMPLING AND SUMMARY
# =============================================================================

def sample_pure_reduced_different(order: QOrder, mu: Quat, rng: random.Random,
                                  count: int, bound: int = 3) -> List[Quat]:
    """Random nonzero pure elements x*mu + mu*conj(x) of the reduced different, x in the order."""
    if mu.is_zero():
        raise DomainError("Sampling needs mu != 0")
    samples = []
    while len(samples) < count:
        x = order.element([rng.randint(-bound, bound) for _ in range(4)])
        y = x * mu + mu * x.conjugate()
        if not y.is_zero():
            samples.append(y)
    return samples


@dataclass(frozen=True)
class PolarizationData:
    """Everything the polarize command reports for one maximal order."""
    order: QOrder
    mu: Quat
    form: RiemannForm
    degree: int
    rosati_positive: bool
    twists: Tuple[Tuple[Quat, int], ...] = ()
    twist_witnesses: Tuple[Witness, ...] = ()
    sign_witness: Optional[Witness] = None


def polarization_data(order: QOrder, mu: Quat, twist_bound: int, witness_bound: int) -> PolarizationData:
    """Riemann form, degree, Rosati positivity, twists and witnesses for mu.

    Each twist chi that is itself a witness for (mu, mu) is listed in
    twist_witnesses; sign_witness relates mu to -mu when the box has one.
    """
    form = riemann_form(order, mu)
    degree = polarization_degree(form)
    twists = tuple(find_twists(order, mu, twist_bound))
    twist_witnesses = tuple(
        w for w in (check_witness(order, chi, mu, mu) for chi, _ in twists) if w is not None
    )
    sign_witness = al_isogeny_witness(order, mu, -mu, witness_bound) if degree == 1 else None
    return PolarizationData(
        order=order,
        mu=mu,
        form=form,
        degree=degree,
        rosati_positive=rosati_positive(order, mu) if mu.nrd() > 0 else False,
        twists=twists,
        twist_witnesses=twist_witnesses,
        sign_witness=sign_witness,
    )
