#
# egcore -- Exact equilibrium analysis of the police/drivers enforcement game
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#

import json

import pytest

from egcore.egcore import *


def _run(capsys, *argv):
    status = main(list(argv) + ['--quiet'])
    out, err = capsys.readouterr()
    return status, out, err


def test_verify_builtin(capsys):
    status, out, err = _run(capsys, 'verify')
    assert status == EXIT_OK
    assert out.splitlines()[0] == 'Not_NE; witness Drivers@DE,DS->S'
    assert err == ''


def test_progress_goes_to_stderr(capsys):
    assert main(['verify']) == EXIT_OK
    out, err = capsys.readouterr()
    assert 'Parameter summary' in err
    assert 'Parameter summary' not in out


def test_expect_mismatch(capsys):
    status, _, err = _run(capsys, 'verify', '--expect', 'SPE')
    assert status == EXIT_EXPECT
    assert 'expected SPE, got Not_NE' in err
    status, _, _ = _run(capsys, 'verify', '--expect', 'Not_NE')
    assert status == EXIT_OK


def test_decimal_is_rejected(capsys):
    status, out, err = _run(capsys, 'verify', '--delta', '0.9')
    assert status == EXIT_PARSE
    assert out == ''
    assert 'ERROR' in err


def test_argument_errors():
    with pytest.raises(SystemExit) as e:
        main(['no-such-command'])
    assert e.value.code == 2


def test_synthesize(capsys):
    status, out, _ = _run(capsys, 'synthesize', '--format', 'json', '--expect', 'NE_not_SPE')
    assert status == EXIT_OK
    data = json.loads(out)
    assert data['thresholds']['driver_lower_bound']['exact'] == '400/1141'
    assert data['automaton_document']['states'] == ['ms', 'p1', 'p2']

    status, _, _ = _run(capsys, 'synthesize', '--subsidy', '--expect', 'SPE')
    assert status == EXIT_OK


def test_synthesize_infeasible(capsys):
    status, out, err = _run(capsys, 'synthesize', '--b', '1/5')
    assert status == EXIT_INFEASIBLE
    assert out == ''
    assert 'driver lower bound: 400/1141' in err
    assert 'police upper bound: 1/2' in err


def test_csv_output_file(capsys, tmpdir):
    path = str(tmpdir.join('thresholds.csv'))
    status, _, _ = _run(capsys, 'thresholds', '--format', 'csv', '--output', path)
    assert status == EXIT_OK
    with open(path, 'rb') as f:
        raw = f.read()
    assert b'\r\n' not in raw
    assert raw.decode().splitlines()[1] == '2,19,20,400/1141,1/2,true,,,9,25'


def test_sweep_is_deterministic(capsys):
    args = ['sweep', '--ns', '1,2', '--deltas', '1/2,9/10', '--bs', '9/25', '--format', 'csv']
    _, serial, _ = _run(capsys, *args)
    _, again, _ = _run(capsys, *args)
    _, parallel, _ = _run(capsys, *(args + ['--np', '2']))
    assert serial == again == parallel
    assert len(serial.splitlines()) == 5


def test_sweep_rejects_long_punishment(capsys):
    status, _, err = _run(capsys, 'sweep', '--ns', '12')
    assert status == EXIT_PARSE
    assert 'must stay below N=12' in err


def test_catalog_round_trip(capsys, tmpdir):
    status, out, _ = _run(capsys, 'catalog', 'punishment-path(N=12,n=2,b=9/25,alpha=20000,beta=10000)',
                          '--format', 'json')
    assert status == EXIT_OK
    path = str(tmpdir.join('automaton.json'))
    with open(path, 'w') as f:
        f.write(out)
    status, out, _ = _run(capsys, 'verify', '--automaton', path, '--delta', '19/20', '--expect', 'NE_not_SPE')
    assert status == EXIT_OK
    assert out.startswith('NE_not_SPE; witness Police@p1->DE')


def test_catalog_listing_and_notes(capsys):
    _, out, _ = _run(capsys, 'catalog')
    assert out.splitlines()[0].startswith('elvik-stage [game]: ')
    _, out, _ = _run(capsys, 'catalog', '--notes')
    assert 'drivers-first-pivot: published 1/4, exact 2/7' in out


def test_analyze_stage_and_induct(capsys):
    _, out, _ = _run(capsys, 'analyze-stage', '--format', 'json')
    assert json.loads(out)['mixed_nash'][0]['Drivers']['S']['exact'] == '1/2'
    _, out, _ = _run(capsys, 'induct', '--tree', 'elvik-tree-drivers-first',
                     '--mixing-node', 'R', '--earlier-mover', 'Drivers')
    assert out.splitlines()[0] == 'path: Drivers:DS -> Police:DE'
    assert 'probability 2/7 (0.285714)' in out
    assert '  [root] Drivers' in out.splitlines()
    status, _, _ = _run(capsys, 'induct', '--mixing-node', 'L')
    assert status == EXIT_PARSE


def test_simulate(capsys):
    _, out, _ = _run(capsys, 'simulate', '--switch-up', '7/10', '--format', 'csv')
    rows = out.splitlines()
    assert rows[0] == 't,action,b_num,b_den'
    assert rows[1:8:6] == ['0,E,4,5', '6,E,4,5']
    status, _, _ = _run(capsys, 'simulate', '--down-step', 'linear(1)')
    assert status == EXIT_PARSE


def test_documented_automaton_example(capsys):
    status, out, err = _run(capsys, 'verify', '--automaton', 'punishment-path(N=12,n=2,b=9/25)')
    assert status == EXIT_OK
    assert 'ERROR' not in err
    assert out.splitlines()[0].split(';')[0] in ('SPE', 'NE_not_SPE', 'Not_NE')


def test_ini_file(capsys, tmpdir):
    path = str(tmpdir.join('input.ini'))
    with open(path, 'w') as f:
        print("[repeated]", file=f)
        print("delta = 1/2", file=f)
    _, out, _ = _run(capsys, 'verify', '--ini', path)
    assert 'delta: 1/2 (0.5)' in out

    with open(path, 'w') as f:
        print("[repeated]", file=f)
        print("gamma = 1/2", file=f)
    status, _, err = _run(capsys, 'verify', '--ini', path)
    assert status == EXIT_PARSE
    assert "Parameter 'gamma' is not allowed in section [repeated]" in err


def test_malformed_documents_exit_with_parse_error(capsys, tmpdir):
    path = str(tmpdir.join('game.json'))
    with open(path, 'w') as f:
        json.dump({'players': ['A', 'B'], 'actions': 5, 'payoffs': []}, f)
    status, _, err = _run(capsys, 'analyze-stage', '--game', path)
    assert status == EXIT_PARSE
    assert 'actions must hold one list per player' in err

    path = str(tmpdir.join('automaton.json'))
    with open(path, 'w') as f:
        json.dump({'states': ['a'], 'initial': 'a', 'prescriptions': {'a': ['E']},
                   'transitions': {'a': {'*': 'a'}}}, f)
    status, _, err = _run(capsys, 'verify', '--automaton', path)
    assert status == EXIT_PARSE
    assert 'prescriptions.a' in err


def test_quiet_from_ini_file(capsys, tmpdir):
    path = str(tmpdir.join('input.ini'))
    with open(path, 'w') as f:
        print("[output]", file=f)
        print("quiet = True", file=f)
    status = main(['thresholds', '--ini', path])
    _, err = capsys.readouterr()
    assert status == EXIT_OK
    assert err == ''

    status = main(['thresholds'])
    _, err = capsys.readouterr()
    assert '#### egcore' in err
