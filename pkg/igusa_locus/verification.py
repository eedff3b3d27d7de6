"""
Consistency Suites.

Executable versions of the invariants the engine promises: class numbers
against a reduction oracle, the Hilbert product formula, the two counts of
principal polarizations, genus divisibility, the irreducibility verdict,
Riemann-form degree laws and the Atkin-Lehner group axioms.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .arith import prime_factors, to_rat
from .errors import DomainError, LocusError
from .locus import admissible_discriminants, al_group, analyze
from .polarization import polarization_degree, riemann_form, sample_pure_reduced_different
from .quadforms import ambiguous_count, class_number, class_number_by_reduction, h_tilde
from .quaternion import OrderCatalog, find_mu, hilbert_symbol, relevant_places, ramified_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Level:
    name: str
    max_D: int
    min_delta: int
    hilbert_samples: int
    riemann_samples: int
    al_group_max_D: int


LEVELS: Dict[str, Level] = {
    "quick": Level("quick", max_D=300, min_delta=-2000, hilbert_samples=200,
                   riemann_samples=50, al_group_max_D=66),
    "full": Level("full", max_D=3000, min_delta=-10000, hilbert_samples=1000,
                  riemann_samples=500, al_group_max_D=210),
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationResult:
    level: str
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


# =============================================================================
# SUITES
# =============================================================================

def check_class_numbers(level: Level) -> SuiteResult:
    result = SuiteResult("class numbers vs reduction oracle")
    for delta in range(-3, level.min_delta - 1, -1):
        if delta % 4 not in (0, 1):
            continue
        result.checked += 1
        h = class_number(delta)
        oracle = class_number_by_reduction(delta)
        genera = ambiguous_count(delta)
        if h != oracle:
            result.failures.append(f"h({delta}) = {h} but the oracle counts {oracle}")
        if genera & (genera - 1) or genera > h:
            result.failures.append(f"{delta}: {genera} ambiguous forms for h = {h}")
    return result


def check_hilbert_product(level: Level, seed: int = 0) -> SuiteResult:
    result = SuiteResult("Hilbert product formula")
    rng = random.Random(seed)
    while result.checked < level.hilbert_samples:
        a, b = rng.randint(-10 ** 4, 10 ** 4), rng.randint(-10 ** 4, 10 ** 4)
        if a == 0 or b == 0:
            continue
        result.checked += 1
        ra, rb = to_rat(a), to_rat(b)
        product = 1
        for v in relevant_places(ra, rb):
            product *= hilbert_symbol(ra, rb, v)
        if product != 1:
            result.failures.append(f"({a},{b}): product of local symbols is {product}")
        if len(ramified_set(a, b)) % 2:
            result.failures.append(f"({a},{b}): odd number of ramified places")
    return result


def _check_discriminant(D: int) -> List[str]:
    """pi0 paths, genus divisibility and the verdict for one D - designed to run in a worker."""
    failures = []
    try:
        report = analyze(D)
    except LocusError as e:
        return [f"D={D}: {e}"]
    r = len(report.primes) // 2
    if report.pi0 * 2 != report.h_tilde:
        failures.append(f"D={D}: pi0 {report.pi0} is not h_tilde/2")
    if report.h_tilde % 2 ** (2 * r - 1):
        failures.append(f"D={D}: 2^{2 * r - 1} does not divide {report.h_tilde}")
    if not report.twisting and report.h_tilde % 2 ** (2 * r):
        failures.append(f"D={D}: non-twisting and 2^{2 * r} does not divide {report.h_tilde}")
    if report.irreducible != (report.rho_feasible == frozenset([1])):
        failures.append(f"D={D}: verdict and rho disagree")
    if report.twisting and report.rho_bounds is not None:
        low, high = report.rho_bounds
        if any(not (low < n <= high) for n in report.rho_feasible):
            failures.append(f"D={D}: feasible rho outside ({low}, {high}]")
    if not report.twisting and report.rho_exact != h_tilde(D) // 4 ** r:
        failures.append(f"D={D}: rho_exact is not h_tilde / 2^(2r)")
    return failures


def check_locus(level: Level, jobs: int = 1) -> SuiteResult:
    result = SuiteResult("pi0, genus divisibility and irreducibility")
    discriminants = admissible_discriminants(2, level.max_D)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_check_discriminant, discriminants, chunksize=16))
    else:
        outcomes = [_check_discriminant(D) for D in discriminants]
    for failures in outcomes:
        result.checked += 1
        result.failures.extend(failures)
    return result


def check_riemann_forms(level: Level, catalog: OrderCatalog, seed: int = 0) -> SuiteResult:
    result = SuiteResult("Riemann forms on catalog orders")
    rng = random.Random(seed)
    for D, order in sorted(catalog.orders.items()):
        mu = find_mu(order, D, 8 * D)
        if mu is None:
            result.failures.append(f"D={D}: no principal mu within bound {8 * D}")
            continue
        for x in sample_pure_reduced_different(order, mu, rng, level.riemann_samples):
            result.checked += 1
            try:
                form = riemann_form(order, x)
                polarization_degree(form)
            except LocusError as e:
                result.failures.append(f"D={D}, mu={x}: {e}")
                continue
            m = form.matrix
            if any(m[i][j] != -m[j][i] for i in range(4) for j in range(4)):
                result.failures.append(f"D={D}, mu={x}: Riemann form is not alternating")
    return result


def check_al_groups(level: Level) -> SuiteResult:
    result = SuiteResult("Atkin-Lehner group axioms")
    for D in admissible_discriminants(2, level.al_group_max_D):
        group = al_group(D)
        result.checked += 1
        op, elements = group.op, group.elements
        if len(elements) != 2 ** len(prime_factors(D)):
            result.failures.append(f"D={D}: group order {len(elements)}")
        for x in elements:
            if op(x, x) != 1 or op(x, 1) != x:
                result.failures.append(f"D={D}: {x} is not self-inverse")
            for y in elements:
                if op(x, y) != op(y, x) or op(x, y) not in elements:
                    result.failures.append(f"D={D}: {x} and {y} break the group law")
                for z in elements:
                    if op(op(x, y), z) != op(x, op(y, z)):
                        result.failures.append(f"D={D}: ({x},{y},{z}) not associative")
    return result


def run_verification(level_name: str, catalog: OrderCatalog, jobs: int = 1,
                     progress: Optional[Callable[[SuiteResult], None]] = None) -> VerificationResult:
    """Run every suite at the given level.

    Args:
        level_name: "quick" or "full"
        catalog: Order catalog for the Riemann-form suite
        jobs: Worker processes for the per-D suite
        progress: Optional callback receiving each finished suite

    Returns:
        VerificationResult
    """
    if level_name not in LEVELS:
        raise DomainError(f"Unknown verification level {level_name!r}; expected one of {sorted(LEVELS)}")
    level = LEVELS[level_name]
    suites = []
    for run in (
        lambda: check_class_numbers(level),
        lambda: check_hilbert_product(level),
        lambda: check_locus(level, jobs),
        lambda: check_riemann_forms(level, catalog),
        lambda: check_al_groups(level),
    ):
        suite = run()
        suites.append(suite)
        if suite.passed:
            logger.info("%s: %d checked, all passed", suite.name, suite.checked)
        else:
            logger.warning("%s: %d checked, %d failure(s)", suite.name, suite.checked, len(suite.failures))
        if progress is not None:
            progress(suite)
    return VerificationResult(level=level.name, suites=suites)
