import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

import sieve_toolkit


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = sieve_toolkit.main(list(argv))
        except SystemExit as exit:
            code = int(exit.code)
    return code, out.getvalue().strip(), err.getvalue().strip()


def test_sieve_csv():
    code, out, err = run_cli('sieve', '--system', 'double', '--depth', '2', '--hi', '60')
    assert code == 0
    assert out.splitlines() == ['n', '11', '17', '29', '41', '47', '59']


def test_sieve_custom_offsets():
    code, out, _ = run_cli('sieve', '--offsets', '0,2,6', '--depth', '2', '--lo', '10', '--hi', '20')
    assert code == 0
    assert out.splitlines() == ['n', '11', '17']


def test_period_summary_and_elements():
    code, out, _ = run_cli('period', '--system', 'quad', '--depth', '3')
    assert code == 0
    assert out.splitlines() == ['depth,period,survivor_count', '3,210,3']
    code, out, _ = run_cli('period', '--system', 'quad', '--depth', '3', '--elements')
    assert out.splitlines() == ['depth,element', '3,11', '3,101', '3,191']


def test_minfunc_json():
    code, out, _ = run_cli('minfunc', '--system', 'double', '--m-max', '4', '--format', 'json')
    assert code == 0
    document = json.loads(out)
    assert document['schema'] == 'sieve-report/1'
    assert document['kind'] == 'minfunc'
    assert [r['n_m1'] for r in document['records']] == [3, 5, 11, 11, 17]


def test_jumps():
    code, out, _ = run_cli('jumps', '--system', 'double', '--m-max', '16')
    assert code == 0
    assert [line.split(',')[3] for line in out.splitlines()[1:]] == \
        ['3', '5', '11', '17', '29', '41', '59']


def test_effective():
    code, out, _ = run_cli('effective', '--system', 'double', '--m', '2')
    assert code == 0
    assert out.splitlines() == ['m,cutoff,z', '2,45,11', '2,45,17', '2,45,29', '2,45,41']


def test_twins_gaps_and_quads():
    assert run_cli('twins', '--hi', '20')[1].splitlines() == ['former', '3', '5', '11', '17']
    assert run_cli('gaps', '--limit', '20')[1].splitlines() == \
        ['former,gap', '3,2', '5,6', '11,6', '17,']
    assert run_cli('quads', '--hi', '200')[1].splitlines() == \
        ['start,gap_to_next', '5,6', '11,90', '101,90', '191,']


def test_lifespan():
    code, out, _ = run_cli('lifespan', '--z', '821')
    assert code == 0
    assert out.splitlines() == ['p_l,p_h,l,h,lower,upper', '821,23,141,8,519,831']
    code, out, _ = run_cli('lifespan', '--limit', '200')
    assert [line.split(',')[:2] for line in out.splitlines()[1:]] == \
        [['5', '3'], ['11', '3'], ['101', '7'], ['191', '13']]


def test_lifespan_of_a_non_start():
    code, out, err = run_cli('lifespan', '--z', '7')
    assert code == 2
    assert 'does not start a prime quadruplet' in err


def test_verify_theorem71_json():
    code, out, _ = run_cli('verify', 'theorem71', '--limit', '2000', '--format', 'json')
    assert code == 0
    document = json.loads(out)
    assert document['ok'] is True
    assert document['difference'] == {'jumps_not_quadruplets': [], 'quadruplets_not_jumps': []}
    assert document['jump_values'] == [5, 11, 101, 191, 821, 1481, 1871]
    assert document['records'][0] == {
        'value': 5, 'is_jump_value': True, 'is_quadruplet': True, 'difference': None,
    }


@pytest.mark.parametrize('argv', [
    ('verify', 'assumption41', '--p-max', '200'),
    ('verify', 'jump-identity', '--m-max', '100'),
    ('verify', 'invariants', '--system', 'quad', '--m-max', '50'),
])
def test_verify_suites_pass(argv):
    code, _, _ = run_cli(*argv)
    assert code == 0


def test_reproduce_summary():
    code, out, _ = run_cli('reproduce', 'min_table')
    assert code == 0
    assert out.splitlines() == ['table,matches,mismatches,suspect,total', 'min_table,17,0,0,17']


def test_reproduce_reports_suspect_entries_without_failing():
    code, out, err = run_cli('reproduce', 'gap_head', '--format', 'json')
    assert code == 0
    document = json.loads(out)
    assert document['records'][0]['suspect'] == 2
    assert [d['status'] for d in document['details']] == ['suspect', 'suspect']
    assert 'fails a sanity check' in err


def test_reproduce_mismatch_exits_one(tmp_path):
    path = tmp_path / 'min_table.txt'
    path.write_text('0, 2, 5\n')
    code, out, _ = run_cli('reproduce', 'min_table', '--fixture', str(path))
    assert code == 1
    assert out.splitlines()[1] == 'min_table,0,1,0,1'


def test_reproduce_mismatch_is_named_on_stderr(tmp_path):
    path = tmp_path / 'min_table.txt'
    path.write_text('0, 2, 3\n1, 3, 7\n')
    code, out, err = run_cli('reproduce', 'min_table', '--fixture', str(path))
    assert code == 1
    assert out.splitlines()[1] == 'min_table,1,1,0,2'
    assert 'line 2' in err
    assert 'printed (1, 3, 7)' in err


def test_reproduce_malformed_fixture(tmp_path):
    path = tmp_path / 'min_table.txt'
    path.write_text('0, 2, ?\n')
    code, _, err = run_cli('reproduce', 'min_table', '--fixture', str(path))
    assert code == 2
    assert ':1:' in err


@pytest.mark.parametrize('argv, expected', [
    (('sieve', '--depth', '1', '--hi', str(2 * 10 ** 9)), 3),
    (('decades', '--from', '3', '--to', '9'), 3),
    (('sieve', '--offsets', '0,2,4', '--depth', '1', '--hi', '10'), 2),
    (('sieve', '--depth', '1', '--hi', '10', '--segment-size', '0'), 2),
    (('minfunc', '--m-max', '-1'), 2),
    (('frobnicate',), 2),
])
def test_exit_codes(argv, expected):
    assert run_cli(*argv)[0] == expected


def test_segment_size_from_environment(monkeypatch):
    monkeypatch.setenv('SIEVE_SEGMENT_SIZE', '5')
    args = sieve_toolkit.set_up_parser().parse_args(['twins', '--hi', '10'])
    assert args.segment_size == 5
    code, out, _ = run_cli('twins', '--hi', '100')
    assert out.splitlines()[1:] == ['3', '5', '11', '17', '29', '41', '59', '71']


@pytest.mark.parametrize('argv', [
    ('lifespan', '--z', '3000041741'),
    ('effective', '--system', 'quad', '--m', '5000'),
])
def test_implied_ranges_respect_the_ceiling(argv):
    code, _, err = run_cli(*argv)
    assert code == 3
    assert '--allow-large' in err


def test_gap_frequencies():
    code, out, _ = run_cli('gaps', '--limit', '100', '--frequencies')
    assert code == 0
    assert out.splitlines() == ['gap,count', '2,1', '6,2', '12,3', '18,1']


@pytest.mark.parametrize('argv', [
    ('verify', 'assumption41', '--system', 'quad', '--p-max', '100'),
    ('verify', 'jump-identity', '--offsets', '0,2', '--m-max', '10'),
    ('verify', 'theorem71', '--system', 'double', '--limit', '100'),
])
def test_verify_rejects_a_foreign_system(argv):
    code, _, err = run_cli(*argv)
    assert code == 2
    assert 'system only' in err


def test_verify_accepts_its_own_system():
    assert run_cli('verify', 'theorem71', '--system', 'quad', '--limit', '200')[0] == 0
    assert run_cli('verify', 'assumption41', '--system', 'double', '--p-max', '100')[0] == 0


@pytest.mark.slow
def test_reproduce_all():
    code, out, _ = run_cli('reproduce', 'all')
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'table,matches,mismatches,suspect,total'
    assert [line.split(',')[0] for line in lines[1:]] == list(sieve_toolkit.TABLE_IDS)
    assert all(line.split(',')[2] == '0' for line in lines[1:])
