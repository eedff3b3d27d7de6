import random

import pytest

from igusa_locus.errors import DomainError
from igusa_locus.quadforms import (
    FormDisc,
    QuadForm,
    ambiguous_count,
    class_data,
    class_number,
    class_number_by_reduction,
    cm_orders_above,
    h_tilde,
    reduce_form,
    reduced_forms,
)


@pytest.mark.parametrize("delta, h", [
    (-3, 1), (-4, 1), (-7, 1), (-8, 1), (-12, 1), (-15, 2), (-20, 2), (-23, 3),
    (-24, 2), (-39, 4), (-40, 2), (-60, 2), (-47, 5), (-56, 4), (-84, 4), (-156, 4), (-163, 1),
])
def test_class_number_table(delta, h):
    assert class_number(delta) == h


def test_reduced_forms_are_sorted_and_primitive():
    assert reduced_forms(-20) == [QuadForm(1, 0, 5), QuadForm(2, 2, 3)]
    # (2,2,2) has discriminant -12 but is not primitive
    assert reduced_forms(-12) == [QuadForm(1, 0, 3)]
    assert reduced_forms(-156) == [QuadForm(1, 0, 39), QuadForm(3, 0, 13), QuadForm(5, -2, 8), QuadForm(5, 2, 8)]


def test_ambiguous_forms_count_genera():
    assert ambiguous_count(-20) == 2
    assert ambiguous_count(-23) == 1
    data = class_data(FormDisc(-156))
    assert (data.h, data.ambiguous_count) == (4, 2)


@pytest.mark.parametrize("delta", [-5, -2, 0, 4, 8])
def test_form_disc_rejects(delta):
    with pytest.raises(DomainError):
        FormDisc(delta)


def test_quad_form_predicates():
    form = QuadForm(2, 2, 3)
    assert form.discriminant == -20
    assert form.is_reduced() and form.is_primitive() and form.is_ambiguous()
    assert not QuadForm(2, -2, 3).is_reduced()
    assert str(form) == "(2,2,3)"


def test_cm_orders_and_h_tilde():
    assert [d.delta for d in cm_orders_above(15)] == [-60, -15]
    assert [d.delta for d in cm_orders_above(6)] == [-24]
    assert h_tilde(6) == 2
    assert h_tilde(15) == 4
    assert h_tilde(39) == 8
    assert h_tilde(33) == 4


@pytest.mark.parametrize("D", [0, -6, 12, 18])
def test_h_tilde_rejects(D):
    with pytest.raises(DomainError):
        h_tilde(D)


# =============================================================================
# REDUCTION ORACLE
# =============================================================================

def test_reduce_form():
    assert reduce_form(2, 5, 4) == QuadForm(1, 1, 2)
    assert reduce_form(1, 0, 5) == QuadForm(1, 0, 5)
    with pytest.raises(DomainError):
        reduce_form(1, 5, 1)


def test_enumeration_matches_reduction_oracle():
    for delta in range(-3, -10001, -1):
        if delta % 4 in (0, 1):
            assert class_number(delta) == class_number_by_reduction(delta), delta


def test_enumeration_matches_oracle_on_large_discriminants():
    rng = random.Random(7)
    deltas = set()
    while len(deltas) < 15:
        delta = -rng.randint(3001, 20000)
        if delta % 4 in (0, 1):
            deltas.add(delta)
    for delta in sorted(deltas):
        assert class_number(delta) == class_number_by_reduction(delta), delta


def test_genus_count_is_power_of_two_dividing_h():
    for delta in range(-3, -1001, -1):
        if delta % 4 not in (0, 1):
            continue
        genera, h = ambiguous_count(delta), class_number(delta)
        assert genera & (genera - 1) == 0
        assert h % genera == 0
