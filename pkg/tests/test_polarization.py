import random
from fractions import Fraction

import pytest

from igusa_locus.errors import DomainError
from igusa_locus.polarization import (
    Witness,
    al_isogeny_witness,
    check_witness,
    in_reduced_different,
    is_principal,
    pfaffian,
    polarization_data,
    polarization_degree,
    riemann_form,
    rosati,
    rosati_gram,
    rosati_positive,
    sample_pure_reduced_different,
)
from igusa_locus.quaternion import find_mu

RIEMANN_6 = (
    (0, -1, 1, 0),
    (1, 0, 0, 0),
    (-1, 0, 0, 1),
    (0, 0, -1, 0),
)


def test_riemann_form_of_principal_mu(order6, mu6):
    form = riemann_form(order6, mu6)
    assert form.matrix == RIEMANN_6
    assert form.pfaffian == -1
    assert polarization_degree(form) == 1
    assert is_principal(order6, mu6)


def test_degree_follows_reduced_norm(order6):
    mu = order6.algebra.element(0, 6)
    assert in_reduced_different(order6, mu)
    assert polarization_degree(riemann_form(order6, mu)) == 6
    assert not is_principal(order6, mu)


def test_riemann_form_rejects_non_pure(order6):
    with pytest.raises(DomainError):
        riemann_form(order6, order6.algebra.element(1, 3, 1, 0))


def test_riemann_form_rejects_element_outside_different(order6):
    with pytest.raises(DomainError):
        riemann_form(order6, order6.algebra.element(0, 1))


def test_riemann_forms_are_alternating_and_obey_degree_law(order6, mu6):
    rng = random.Random(2)
    for x in sample_pure_reduced_different(order6, mu6, rng, 40):
        assert in_reduced_different(order6, x)
        form = riemann_form(order6, x)
        m = form.matrix
        assert all(m[a][b] == -m[b][a] for a in range(4) for b in range(4))
        assert polarization_degree(form) == abs(x.nrd()) / 6


@pytest.mark.parametrize("D", [6, 10])
def test_degree_law_on_catalog_orders(catalog, D):
    order = catalog.get(D)
    mu = find_mu(order, D, 8 * D)
    assert mu is not None
    rng = random.Random(D)
    for x in sample_pure_reduced_different(order, mu, rng, 500):
        assert polarization_degree(riemann_form(order, x)) == abs(x.nrd()) / D


def test_riemann_form_is_additive(order6, mu6):
    mu2 = order6.algebra.element(0, 6)
    total = riemann_form(order6, mu6 + mu2).matrix
    parts = zip(riemann_form(order6, mu6).matrix, riemann_form(order6, mu2).matrix)
    assert total == tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in parts)


def test_pfaffian():
    assert pfaffian(RIEMANN_6) == -1
    assert pfaffian(((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))) == 1


# =============================================================================
# ROSATI INVOLUTION
# =============================================================================

def test_rosati_is_an_anti_involution(order6, mu6):
    A = order6.algebra
    x, y = A.element(1, 2, 0, 1), A.element(0, 1, -1, 3)
    assert rosati(order6, mu6, rosati(order6, mu6, x)) == x
    assert rosati(order6, mu6, x * y) == rosati(order6, mu6, y) * rosati(order6, mu6, x)


def test_rosati_preserves_norm_and_order(order6, mu6):
    rng = random.Random(13)
    for _ in range(50):
        beta = order6.element([rng.randint(-6, 6) for _ in range(4)])
        image = rosati(order6, mu6, beta)
        assert image.nrd() == beta.nrd()
        assert order6.contains(image)
        assert rosati(order6, -mu6, beta) == image


def test_rosati_positive_for_principal_mu(order6, mu6):
    assert rosati_positive(order6, mu6)
    gram = rosati_gram(order6, mu6).gram
    assert all(gram[a][b] == gram[b][a] for a in range(4) for b in range(4))


def test_rosati_positive_needs_positive_norm(order6):
    with pytest.raises(DomainError):
        rosati_positive(order6, order6.algebra.element(0, 1, 1, 0))
    with pytest.raises(DomainError):
        rosati_positive(order6, order6.algebra.element(1, 3, 1, 0))


# =============================================================================
# WITNESSES
# =============================================================================

def test_twist_is_a_witness(order6, mu6):
    chi = order6.algebra.element(0, 1, 1, 0)
    witness = check_witness(order6, chi, mu6, mu6)
    assert witness == Witness(chi, Fraction(2))
    back = witness.reversed()
    assert back.omega == -chi
    assert back.m == 2


def test_witness_search_prefers_candidates(order6, mu6):
    chi = order6.algebra.element(0, 1, 1, 0)
    witness = al_isogeny_witness(order6, mu6, mu6, 2, candidates=[chi])
    assert witness.omega == chi and witness.m == 2


def test_witness_search_box(order6, mu6):
    witness = al_isogeny_witness(order6, mu6, mu6, 1)
    assert witness is not None
    image = witness.omega.conjugate() * mu6 * witness.omega
    assert witness.m > 0
    assert image == mu6 * witness.m


def test_witness_search_needs_principal_quaternions(order6, mu6):
    with pytest.raises(DomainError):
        al_isogeny_witness(order6, mu6, order6.algebra.element(0, 6), 1)


def test_polarization_data(order6, mu6):
    data = polarization_data(order6, mu6, twist_bound=4, witness_bound=1)
    assert data.degree == 1
    assert data.rosati_positive
    assert data.form.matrix == RIEMANN_6
    assert any(chi == order6.algebra.element(0, 1, 1, 0) and m == 2 for chi, m in data.twists)
    assert any(w.omega == order6.algebra.element(0, 1, 1, 0) for w in data.twist_witnesses)
    if data.sign_witness is not None:
        w = data.sign_witness
        assert w.omega.conjugate() * mu6 * w.omega == -mu6 * w.m
