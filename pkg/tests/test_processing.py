import pytest

from igusa_locus.errors import DomainError
from igusa_locus.processing import tabulate


def test_tabulate_serial():
    calls = []
    reports = tabulate(1, 100, jobs=1, progress=lambda done, total, D: calls.append((done, total, D)))
    assert len(reports) == 30
    assert [r.D for r in reports] == sorted(r.D for r in reports)
    assert calls[-1][:2] == (30, 30)


def test_tabulate_parallel_matches_serial():
    serial = tabulate(1, 60, jobs=1)
    parallel = tabulate(1, 60, jobs=2)
    assert [(r.D, r.h_tilde, r.rho_feasible) for r in parallel] == \
        [(r.D, r.h_tilde, r.rho_feasible) for r in serial]


def test_tabulate_empty_range():
    assert tabulate(2, 5, jobs=1) == []


@pytest.mark.parametrize("d_min, d_max", [(10, 5), (0, 10)])
def test_tabulate_rejects_bad_range(d_min, d_max):
    with pytest.raises(DomainError):
        tabulate(d_min, d_max, jobs=1)
