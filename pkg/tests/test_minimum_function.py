import itertools

import pytest

from sieves import minimum_function as mf
from sieves.errors import DomainError
from sieves.offset_sieve import DOUBLE, QUAD, SINGLE

DOUBLE_MINIMA = [3, 5, 11, 11, 17, 17, 29, 29, 29, 41, 41, 41, 59, 59, 59, 59, 71]


def test_double_minimum_function():
    entries = mf.minimum_function(DOUBLE, 16)
    assert [e.n_m1 for e in entries] == DOUBLE_MINIMA
    assert [e.p_m for e in entries][:5] == [2, 3, 5, 7, 11]
    assert not any(e.flagged for e in entries)


def test_quad_minimum_function_start():
    entries = mf.minimum_function(QUAD, 5)
    assert [e.n_m1 for e in entries] == [3, 5, 11, 11, 101, 101]


def test_single_minimum_is_the_next_prime():
    entries = mf.minimum_function(SINGLE, 20)
    assert all(e.n_m1 == mf.nth_prime(e.m + 1) for e in entries)


def test_minimum_function_rejects_negative_m_max():
    with pytest.raises(DomainError):
        mf.minimum_function(DOUBLE, -1)


def test_double_jump_points():
    jumps = mf.jump_points(DOUBLE, 16)
    assert [j.m for j in jumps] == [1, 2, 4, 6, 9, 12, 16]
    assert [j.jump_value for j in jumps] == [3, 5, 11, 17, 29, 41, 59]
    assert all(j.jump_value == j.p_m for j in jumps)
    assert mf.jump_points(DOUBLE, 0) == []


def test_failed_scan_is_flagged(monkeypatch):
    monkeypatch.setattr(mf, 'first_survivor', lambda *args, **kwargs: None)
    entries = list(itertools.islice(mf.iter_minimum_function(DOUBLE), 3))
    assert all(e.flagged and e.n_m1 is None for e in entries)
    assert not any(e.is_jump for e in entries)


def test_search_bound():
    assert mf.search_bound(0, DOUBLE) == 13
    assert mf.search_bound(1, QUAD) == 35


def test_effective_ranges():
    double = mf.effective_range(2, DOUBLE)
    assert double.cutoff == 45
    assert double.members == [11, 17, 29, 41]
    assert double.all_prime
    quad = mf.effective_range(3, QUAD)
    assert quad.members == [11, 101]
    assert quad.all_prime
    with pytest.raises(DomainError):
        mf.effective_range(-1, QUAD)


def test_effective_range_members_are_constellations():
    # p_167 = 997, so depth 166 ends just below 10^6.
    assert mf.effective_cutoff(166, QUAD) < 10 ** 6 < mf.effective_cutoff(167, QUAD)
    for m in range(1, 167):
        assert mf.effective_range(m, QUAD).all_prime
        assert mf.effective_range(m, DOUBLE).all_prime


def test_all_offsets_prime():
    assert mf.all_offsets_prime([], QUAD)
    assert mf.all_offsets_prime([5, 11], QUAD)
    assert not mf.all_offsets_prime([11, 221], QUAD)


def test_solitary_primes():
    assert mf.solitary_primes(1, 20) == [2, 7, 13, 19]
    assert mf.solitary_primes(5, 6) == []


def test_assumption_41_holds_below_ten_thousand():
    report = mf.check_assumption_41(mf.m_for_prime_limit(10 ** 4))
    assert report.violations == []
    assert len(report.rows) == 1229
    assert report.min_margin > 0
    assert all(row.nonempty and row.within_bound for row in report.rows)
    # Between 5 and 11 the only solitary prime is 7.
    assert report.rows[2].solitary_primes == 1


def test_jump_identity():
    report = mf.check_jump_identity(200)
    assert report.checked > 0
    assert report.violations == []


@pytest.mark.parametrize('system', [SINGLE, DOUBLE, QUAD])
def test_minimum_invariants(system):
    report = mf.check_minimum_invariants(system, 200)
    assert report.checked == 201
    assert report.violations == []


def test_m_for_prime_limit():
    assert mf.m_for_prime_limit(2) == 0
    assert mf.m_for_prime_limit(100) == 24
    assert mf.m_for_prime_limit(10 ** 4) == 1228
    with pytest.raises(DomainError):
        mf.m_for_prime_limit(1)
