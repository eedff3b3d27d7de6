import pytest

from igusa_locus.errors import DomainError
from igusa_locus.verification import (
    LEVELS,
    Level,
    check_al_groups,
    check_class_numbers,
    check_hilbert_product,
    check_locus,
    check_riemann_forms,
    run_verification,
)

TINY = Level("tiny", max_D=60, min_delta=-300, hilbert_samples=50, riemann_samples=5, al_group_max_D=40)


def test_levels():
    assert set(LEVELS) == {"quick", "full"}
    assert LEVELS["full"].max_D > LEVELS["quick"].max_D


def test_class_number_suite():
    result = check_class_numbers(TINY)
    assert result.passed
    assert result.checked == sum(1 for d in range(-3, -301, -1) if d % 4 in (0, 1))


def test_hilbert_suite():
    result = check_hilbert_product(TINY, seed=4)
    assert result.passed and result.checked == 50


def test_locus_suite():
    result = check_locus(TINY)
    assert result.passed
    assert result.checked == 17


def test_riemann_suite(catalog):
    result = check_riemann_forms(TINY, catalog)
    assert result.passed
    assert result.checked == 5 * len(catalog)


def test_al_group_suite():
    assert check_al_groups(TINY).passed


def test_run_verification(monkeypatch, catalog):
    monkeypatch.setitem(LEVELS, "tiny", TINY)
    seen = []
    result = run_verification("tiny", catalog, jobs=1, progress=seen.append)
    assert result.passed
    assert len(result.suites) == 5
    assert seen == result.suites


def test_unknown_level(catalog):
    with pytest.raises(DomainError):
        run_verification("exhaustive", catalog)
