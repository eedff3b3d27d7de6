"""
Quaternionic Locus Analysis.

Per-discriminant structure of the quaternionic locus: the Atkin-Lehner group,
twisting classification, the number of principal polarization classes, the
feasible component counts from the orbit equation, and the irreducibility
verdict.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .arith import divisors
from .errors import ConsistencyError
from .quadforms import class_number, cm_orders_above, h_tilde
from .quaternion import (
    OrderCatalog,
    Place,
    Quat,
    admissible_primes,
    find_mu,
    find_twists,
    maximal_order,
    ramified_set,
)

logger = logging.getLogger(__name__)

TWISTING = "twisting"
NON_TWISTING = "non-twisting"


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True)
class DiscD:
    """Discriminant of an indefinite division algebra over Q: squarefree, 2r >= 2 primes."""
    D: int
    primes: Tuple[int, ...]

    @classmethod
    def of(cls, D) -> "DiscD":
        if isinstance(D, DiscD):
            return D
        return cls(D=int(D), primes=tuple(admissible_primes(int(D))))

    @property
    def r(self) -> int:
        return len(self.primes) // 2


@dataclass(frozen=True)
class ALGroup:
    """Atkin-Lehner group: divisors of D under m * n / gcd(m, n)^2."""
    D: int
    elements: Tuple[int, ...]

    @staticmethod
    def op(m: int, n: int) -> int:
        return m * n // gcd(m, n) ** 2

    @property
    def order(self) -> int:
        return len(self.elements)

    def table(self) -> Dict[Tuple[int, int], int]:
        return {(m, n): self.op(m, n) for m in self.elements for n in self.elements}

    def generate(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given divisors."""
        elements = {1}
        queue = deque([1])
        generators = tuple(generators)
        while queue:
            x = queue.popleft()
            for g in generators:
                y = self.op(x, g)
                if y not in elements:
                    elements.add(y)
                    queue.append(y)
        return frozenset(elements)


@dataclass(frozen=True)
class StableSubgroup:
    generators: FrozenSet[int]
    kind: str
    elements: FrozenSet[int]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class ComponentClass:
    """Components sharing a kind and a stable subgroup order."""
    kind: str
    w0_order: int
    contribution: int
    generators: Tuple[int, ...]


Split = Tuple[Tuple[ComponentClass, int], ...]


@dataclass(frozen=True)
class RhoResult:
    rho_exact: Optional[int]
    rho_feasible: FrozenSet[int]
    rho_bounds: Optional[Tuple[Fraction, Fraction]]
    splits: Tuple[Split, ...]
    # twisting splits whose count falls outside rho_bounds
    dropped_splits: int = 0


@dataclass(frozen=True)
class RootsOfUnityNote:
    """Whether Q(sqrt(-D)) has no roots of unity beyond +-1."""
    holds: bool
    reason: str


@dataclass(frozen=True)
class LocusReport:
    D: int
    primes: Tuple[int, ...]
    h_tilde: int
    pi0: int
    twisting: bool
    twist_divisors: Tuple[int, ...]
    rho_exact: Optional[int]
    rho_feasible: FrozenSet[int]
    rho_bounds: Optional[Tuple[Fraction, Fraction]]
    irreducible: bool
    splits: Tuple[Split, ...]
    class_numbers: Dict[int, int] = field(default_factory=dict)
    roots_of_unity: Optional[RootsOfUnityNote] = None
    mu: Optional[Quat] = None
    twist_witnesses: Tuple[Tuple[Quat, int], ...] = ()
    dropped_splits: int = 0

    @property
    def rho_min(self) -> int:
        return min(self.rho_feasible)

    @property
    def rho_max(self) -> int:
        return max(self.rho_feasible)


# =============================================================================
# GROUP DATA
# =============================================================================

def al_group(D) -> ALGroup:
    disc = DiscD.of(D)
    return ALGroup(D=disc.D, elements=tuple(divisors(disc.D)))


def twisting_data(D) -> Tuple[bool, List[int]]:
    """Divisors m > 1 of D with (-D, m / Q) ramified exactly at the primes of D."""
    disc = DiscD.of(D)
    target = frozenset(Place(p) for p in disc.primes)
    twist_divisors = [m for m in divisors(disc.D) if m > 1 and ramified_set(-disc.D, m) == target]
    return bool(twist_divisors), twist_divisors


def pi0(D) -> int:
    """Number of principal polarization classes, h_tilde(D) / 2, computed along both paths."""
    disc = DiscD.of(D)
    h = h_tilde(disc.D)
    total = sum(class_number(delta) for delta in cm_orders_above(disc.D))
    if h != total or h % 2:
        raise ConsistencyError(f"D={disc.D}: h_tilde {h} and class number sum {total} must agree and be even")
    return h // 2


def admissible_stable_subgroups(D, twist_divisors: Iterable[int]) -> List[StableSubgroup]:
    """<w_D> of non-twisting kind, then every <w_D, S> for nonempty sets S of twist divisors."""
    group = al_group(D)
    base = group.generate([group.D])
    subgroups = [StableSubgroup(frozenset([group.D]), NON_TWISTING, base)]

    twist_divisors = tuple(twist_divisors)
    seen = set()
    queue = deque((frozenset([group.D, m]), group.generate([group.D, m])) for m in twist_divisors)
    while queue:
        gens, elements = queue.popleft()
        if elements in seen:
            continue
        seen.add(elements)
        subgroups.append(StableSubgroup(gens, TWISTING, elements))
        for m in twist_divisors:
            if m not in elements:
                queue.append((gens | {m}, group.generate(gens | {m})))
    return subgroups


def _component_classes(D, twist_divisors: Iterable[int]) -> List[ComponentClass]:
    group_order = al_group(D).order
    classes = {}
    for subgroup in admissible_stable_subgroups(D, twist_divisors):
        key = (subgroup.kind, subgroup.order)
        if key not in classes:
            classes[key] = ComponentClass(
                kind=subgroup.kind,
                w0_order=subgroup.order,
                contribution=group_order // subgroup.order,
                generators=tuple(sorted(subgroup.generators)),
            )
    return sorted(classes.values(), key=lambda c: (c.kind != NON_TWISTING, -c.contribution))


def _splits(classes: List[ComponentClass], target: int) -> List[Split]:
    """Every choice of counts n_c >= 0 with sum n_c * contribution_c = target."""
    results = []

    def extend(index: int, remaining: int, chosen: List[Tuple[ComponentClass, int]]):
        if index == len(classes):
            if remaining == 0:
                results.append(tuple((c, n) for c, n in chosen if n))
            return
        cls = classes[index]
        if index == len(classes) - 1:
            if remaining % cls.contribution == 0:
                chosen.append((cls, remaining // cls.contribution))
                extend(index + 1, 0, chosen)
                chosen.pop()
            return
        for n in range(remaining // cls.contribution + 1):
            chosen.append((cls, n))
            extend(index + 1, remaining - n * cls.contribution, chosen)
            chosen.pop()

    extend(0, target, [])
    return results


def rho(D) -> RhoResult:
    """Component counts of the locus.

    Non-twisting D give h_tilde / 2^{2r} exactly. Twisting D give every total
    count of a split of pi0 into components, each contributing |W / W_0|, with
    at least one twisting component, kept inside (h_tilde / 2^{2r}, h_tilde / 2^{2r-1}].
    """
    disc = DiscD.of(D)
    h = h_tilde(disc.D)
    group_order = 4 ** disc.r
    is_twisting, twist_divisors = twisting_data(disc)

    if not is_twisting:
        if h % group_order:
            raise ConsistencyError(f"D={disc.D}: non-twisting but 2^(2r) = {group_order} does not divide {h}")
        count = h // group_order
        if pi0(disc) != (group_order // 2) * count:
            raise ConsistencyError(f"D={disc.D}: pi0 is not equidistributed over {count} components")
        cls = _component_classes(disc, [])[0]
        return RhoResult(count, frozenset([count]), None, (((cls, count),),))

    low, high = Fraction(h, group_order), Fraction(2 * h, group_order)
    splits = []
    dropped = 0
    for split in _splits(_component_classes(disc, twist_divisors), pi0(disc)):
        if not any(c.kind == TWISTING for c, _ in split):
            continue
        if low < sum(n for _, n in split) <= high:
            splits.append(split)
        else:
            dropped += 1
    if dropped:
        logger.debug("rho: D=%d dropped %d split(s) outside (%s, %s]", disc.D, dropped, low, high)
    if not splits:
        raise ConsistencyError(f"D={disc.D}: no split of pi0 = {h // 2} fits the orbit equation")
    feasible = frozenset(sum(n for _, n in split) for split in splits)
    exact = next(iter(feasible)) if len(feasible) == 1 else None
    return RhoResult(exact, feasible, (low, high), tuple(splits), dropped)


def is_irreducible(D) -> bool:
    """h_tilde = 2^{2r-1} for twisting D, h_tilde = 2^{2r} otherwise."""
    disc = DiscD.of(D)
    is_twisting, _ = twisting_data(disc)
    exponent = 2 * disc.r - 1 if is_twisting else 2 * disc.r
    return h_tilde(disc.D) == 2 ** exponent


def _check_genus_divisibility(disc: DiscD, h: int, is_twisting: bool) -> None:
    if h % 2 ** (2 * disc.r - 1):
        raise ConsistencyError(f"D={disc.D}: 2^{2 * disc.r - 1} does not divide h_tilde = {h}")
    if not is_twisting and h % 2 ** (2 * disc.r):
        raise ConsistencyError(f"D={disc.D}: non-twisting but 2^{2 * disc.r} does not divide h_tilde = {h}")


def roots_of_unity_note(D) -> RootsOfUnityNote:
    disc = DiscD.of(D)
    return RootsOfUnityNote(
        holds=disc.D > 3,
        reason=f"Q(sqrt(-{disc.D})) contains only the roots of unity +-1",
    )


def analyze(D, catalog: Optional[OrderCatalog] = None, witnesses: bool = False,
            search_bound: Optional[int] = None, twist_bound: int = 4) -> LocusReport:
    """Full report for one discriminant.

    Args:
        D: Admissible discriminant
        catalog: Order catalog used when witnesses are requested
        witnesses: Attach mu and order-level twists (never changes the verdict)
        search_bound: Coordinate bound for mu, 8*D when None
        twist_bound: Coordinate bound for twists

    Returns:
        LocusReport
    """
    disc = DiscD.of(D)
    h = h_tilde(disc.D)
    is_twisting, twist_divisors = twisting_data(disc)
    _check_genus_divisibility(disc, h, is_twisting)

    result = rho(disc)
    irreducible = is_irreducible(disc)
    if irreducible != (result.rho_feasible == frozenset([1])):
        raise ConsistencyError(f"D={disc.D}: verdict {irreducible} contradicts rho {sorted(result.rho_feasible)}")

    mu, twists = None, ()
    if witnesses:
        order = maximal_order(disc.D, catalog)
        mu = find_mu(order, disc.D, search_bound or 8 * disc.D)
        if mu is not None:
            twists = tuple(find_twists(order, mu, twist_bound))

    logger.debug("Analyzed D=%d: h_tilde=%d twisting=%s rho=%s", disc.D, h, is_twisting, sorted(result.rho_feasible))
    return LocusReport(
        D=disc.D,
        primes=disc.primes,
        h_tilde=h,
        pi0=pi0(disc),
        twisting=is_twisting,
        twist_divisors=tuple(twist_divisors),
        rho_exact=result.rho_exact,
        rho_feasible=result.rho_feasible,
        rho_bounds=result.rho_bounds,
        irreducible=irreducible,
        splits=result.splits,
        class_numbers={delta.delta: class_number(delta) for delta in cm_orders_above(disc.D)},
        roots_of_unity=roots_of_unity_note(disc),
        mu=mu,
        twist_witnesses=twists,
        dropped_splits=result.dropped_splits,
    )


def is_admissible(D: int) -> bool:
    try:
        admissible_primes(D)
    except ValueError:
        return False
    return True


def admissible_discriminants(d_min: int, d_max: int) -> List[int]:
    return [D for D in range(max(d_min, 2), d_max + 1) if is_admissible(D)]
