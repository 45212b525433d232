import pytest

from sieves.errors import FixtureParseError
from sieves.table_reproducer import TABLE_IDS, TableReproducer


@pytest.fixture
def reproducer():
    return TableReproducer()


@pytest.mark.parametrize('table_id, entries', [
    ('min_table', 17),
    ('n_listings', 14),
    ('lifespan_table', 6),
])
def test_tables_reproduce_exactly(reproducer, table_id, entries):
    diff = reproducer.reproduce(table_id)
    assert diff.table == table_id
    assert diff.matches == entries
    assert diff.mismatches == []
    assert diff.suspect == []


def test_gap_head_has_two_misprints(reproducer):
    diff = reproducer.reproduce('gap_head')
    assert diff.matches == 172
    assert diff.mismatches == []
    assert [(d.expected, d.computed) for d in diff.suspect] == [
        ((2459, 42), (2549, 42)),
        ((4648, 72), (4649, 72)),
    ]


@pytest.mark.slow
def test_gap_tail_has_two_misprints(reproducer):
    diff = reproducer.reproduce('gap_tail')
    assert diff.matches == 104
    assert diff.mismatches == []
    assert [d.computed[0] for d in diff.suspect] == [1287197, 1294199]


@pytest.mark.slow
def test_decade_counts(reproducer):
    diff = reproducer.reproduce('decade_counts')
    assert diff.matches == 5
    assert diff.mismatches == []


def test_wrong_sane_value_is_a_mismatch(reproducer, tmp_path):
    path = tmp_path / 'min_table.txt'
    path.write_text('0, 2, 3\n1, 3, 7\n')
    diff = reproducer.reproduce('min_table', str(path))
    assert diff.matches == 1
    assert [d.computed for d in diff.mismatches] == [(1, 3, 5)]


def test_custom_fixture_directory(tmp_path):
    (tmp_path / 'lifespan_table.txt').write_text('# columns: p_l, p_h\n5, 3\n11, 3\n')
    diff = TableReproducer(fixtures_dir=str(tmp_path)).reproduce('lifespan_table')
    assert diff.matches == 2


def test_row_width_is_checked(reproducer, tmp_path):
    path = tmp_path / 'min_table.txt'
    path.write_text('0, 2, 3\n1, 3\n')
    with pytest.raises(FixtureParseError) as info:
        reproducer.reproduce('min_table', str(path))
    assert info.value.lineno == 2


def test_unknown_table(reproducer):
    with pytest.raises(ValueError):
        reproducer.reproduce('table_9')
    assert 'gap_head' in TABLE_IDS
