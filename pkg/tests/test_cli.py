import csv
import io
import json
import os
import subprocess
import sys
import tempfile

import pytest

from mcg_certs.cli import certify
from mcg_certs.core import CertificationEngine
from mcg_certs.utils.errors import InvariantViolation


FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
MODULE = "mcg_certs.cli.certify"


def run_cli(args):
    """Helper to run CLI commands and capture output."""
    result = subprocess.run([sys.executable, '-m', MODULE, *args], capture_output=True, text=True)
    return result


def test_help():
    result = run_cli(['--help'])
    assert result.returncode == 0
    assert 'usage' in result.stdout.lower()


@pytest.mark.parametrize('args', [
    [],
    ['witness', '--random-genus', '3'],
    ['witness', '--k', '3'],
    ['spread', '--offset', '4'],
    ['unknown'],
])
def test_usage_errors_exit_1(args):
    result = run_cli(args)
    assert result.returncode == 1
    assert 'usage' in result.stderr.lower()


def test_paper_example_matches_fixture():
    result = run_cli(['paper-example'])
    assert result.returncode == 0
    with open(os.path.join(FIXTURES, 'paper_example.txt')) as f:
        assert result.stdout == f.read()


def test_paper_example_at_genus():
    result = run_cli(['paper-example', '--genus', '1731'])
    assert result.returncode == 0
    assert 'bound(1731) = 1\n' in result.stdout


def test_paper_example_json():
    result = run_cli(['paper-example', '--format', 'json'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['int_sum'] == '576'
    assert record['seed'] == 20240229


def test_witness_from_fixture():
    result = run_cli(['witness', '--matrix', os.path.join(FIXTURES, 'planted_block.json'), '--k', '3'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['kind'] == 'lower_bound'
    assert 1 <= int(record['witness_j']) <= 4
    assert int(record['lefschetz_at_j']) < 0
    assert record['bound'] == 'C/(g*j)'


def test_witness_identity_matrix():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'identity.json')
        with open(path, 'w') as f:
            json.dump({'rows': 4, 'cols': 4, 'entries': [[int(i == j) for j in range(4)] for i in range(4)]}, f)
        result = run_cli(['witness', '--matrix', path, '--k', '4', '--format', 'text'])

    assert result.returncode == 0
    assert 'witness j = 1' in result.stdout
    assert 'L(f^j) = -2' in result.stdout


def test_witness_random_genus():
    result = run_cli(['witness', '--random-genus', '4', '--k', '5', '--seed', '7'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['seed'] == 7
    assert int(record['witness_j']) <= 2 * 4 - 5 + 1


def test_witness_small_k_falls_back():
    result = run_cli(['witness', '--random-genus', '3', '--k', '1'])
    assert result.returncode == 2
    record = json.loads(result.stdout)
    assert record['status'] == 'fallback'
    assert 'min{C, C0, C1, C2}' in record['note']


def test_witness_malformed_matrix_with_small_k_exits_1():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'diag.json')
        with open(path, 'w') as f:
            json.dump({'rows': 3, 'cols': 3, 'entries': [[1, 0, 0], [0, 1, 0], [0, 0, 2]]}, f)
        result = run_cli(['witness', '--matrix', path, '--k', '1'])

    assert result.returncode == 1
    assert 'fallback' not in result.stdout


@pytest.mark.parametrize('args', [
    ['witness', '--matrix', '/nonexistent/matrix.json', '--k', '3'],
    ['witness', '--matrix', os.path.join(FIXTURES, 'planted_block.json'), '--k', '5'],
    ['cover', '--degree-range', '1..3'],
    ['cover', '--degree-range', '5..2'],
    ['orbit-sum', '--n', '3', '--k', '3'],
])
def test_input_errors_exit_1(args):
    result = run_cli(args)
    assert result.returncode == 1


def test_cover():
    result = run_cli(['cover', '--degree-range', '2..10', '--include-obstructions'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['all_passed'] is True
    assert [r['m_value'] for r in record['records']] == [str(2 * d + 1) for d in range(2, 11)]
    assert len(record['obstructions']) == 9



def test_cover_by_genus_with_matrices():
    result = run_cli(['cover', '--genus-range', '3..4', '--include-matrices'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert [r['d'] for r in record['records']] == ['2', '3']
    assert [r['cover_genus'] for r in record['records']] == ['3', '4']

    matrix = record['matrices'][0]
    assert matrix['d'] == '2'
    assert matrix['basis_labels'] == ['gamma_0', 'gamma_1', 'delta_0', 'delta_1', 'eta', 'alpha']
    assert matrix['entries'][5][4] == '-2'
    assert len(record['matrices'][1]['basis_labels']) == 8


def test_cover_genus_and_degree_ranges_are_exclusive():
    result = run_cli(['cover', '--genus-range', '3..4', '--degree-range', '2..3'])
    assert result.returncode == 1

    result = run_cli(['cover', '--genus-range', '2..4'])
    assert result.returncode == 1

def test_cover_torelli_variant_csv():
    result = run_cli(['cover', '--degree-range', '2..4', '--torelli-variant', '--format', 'csv'])
    assert result.returncode == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert [row['m_value'] for row in rows] == ['6', '8', '10']
    assert all(row['passed'] == 'True' for row in rows)


def test_spread_csv():
    result = run_cli(['spread', '--genus-range', '1155..1160'])
    assert result.returncode == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert [row['g'] for row in rows] == [str(g) for g in range(1155, 1161)]
    assert all(row['n_star'] == '2' and row['bound'] == '1' for row in rows)
    assert all(row['seed'] == '20240229' for row in rows)


def test_spread_unavailable_rows():
    result = run_cli(['spread', '--genus-range', '100..102', '--offset', '2'])
    assert result.returncode == 2
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert all(row['available'] == 'False' and row['bound'] == '' for row in rows)


def test_spread_partly_unavailable_exits_2():
    result = run_cli(['spread', '--genus-range', '577..580'])
    assert result.returncode == 2
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert [row['available'] for row in rows] == ['False', 'False', 'True', 'True']


def test_spread_saturated_cover_is_unconfirmed():
    result = run_cli(['spread', '--genus-range', '5', '--int-sum', '3', '--offset', '2'])
    assert result.returncode == 2
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows[0]['available'] == 'False'
    assert rows[0]['bound'] == ''
    assert (rows[0]['n_star'], rows[0]['automaton_width'], rows[0]['automaton_confirms']) == ('1', '5', 'False')

    result = run_cli(['spread', '--genus-range', '5', '--int-sum', '3', '--offset', '2', '--format', 'text'])
    assert result.returncode == 2
    assert 'g = 5: unconfirmed' in result.stdout


def test_orbit_sum():
    result = run_cli(['orbit-sum', '--n', '4', '--k', '2'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['dimension'] == '4'
    assert record['invariant'] is True


def test_surjectivity_sanity():
    result = run_cli(['surjectivity-sanity'])
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record['reached'] == '6'
    assert record['passed'] is True



def test_orbit_sum_and_sanity_csv():
    result = run_cli(['orbit-sum', '--n', '4', '--k', '2', '--format', 'csv'])
    assert result.returncode == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert len(rows) == 1
    assert (rows[0]['dimension'], rows[0]['expected_dimension'], rows[0]['invariant']) == ('4', '4', 'True')
    assert rows[0]['seed'] == '20240229'

    result = run_cli(['surjectivity-sanity', '--format', 'csv'])
    assert result.returncode == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert (rows[0]['reached'], rows[0]['expected'], rows[0]['passed']) == ('6', '6', 'True')
    assert 'first_length' not in rows[0]

def test_output_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'out', 'spread.csv')
        result = run_cli(['spread', '--genus-range', '1731', '--output', path])
        assert result.returncode == 0
        assert result.stdout == ''
        with open(path) as f:
            rows = list(csv.DictReader(f))

    assert rows[0]['bound'] == '2/3'


def test_invariant_violation_exits_3(monkeypatch):
    def broken(self):
        raise InvariantViolation("broken enumeration")

    monkeypatch.setattr(CertificationEngine, 'surjectivity_sanity', broken)
    assert certify.run(['surjectivity-sanity']) == 3
