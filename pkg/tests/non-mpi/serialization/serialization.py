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

from fractions import Fraction
import json

import pytest

from egcore.serialization import *
from egcore.exceptions import ParseError
from egcore.models import create_builtin, elvik_stage_game
from egcore.dynamics import AdaptationSpec, AffineStep, GeometricStep


def test_game_document():
    doc = game_to_dict(elvik_stage_game())
    assert doc['players'] == ['Police', 'Drivers']
    assert doc['payoffs'][0][0] == [[-10000, 1], [-300, 1]]
    assert game_from_dict(json.loads(dumps_json(doc))) == elvik_stage_game()


def test_game_accepts_integers_and_strings():
    doc = {'players': ['A', 'B'], 'actions': [['x', 'y'], ['u', 'v']],
           'payoffs': [[[1, '1/2'], [0, 0]], [[0, 0], ['-3/4', [2, 3]]]]}
    game = game_from_dict(doc)
    assert game.payoff(('x', 'u')) == (1, Fraction(1, 2))
    assert game.payoff(('y', 'v')) == (Fraction(-3, 4), Fraction(2, 3))


def test_game_rejects_decimals():
    doc = {'players': ['A', 'B'], 'actions': [['x', 'y'], ['u', 'v']],
           'payoffs': [[[0.5, 0], [0, 0]], [[0, 0], [0, 0]]]}
    with pytest.raises(ParseError) as e:
        game_from_dict(doc)
    assert 'game.payoffs[0][0][0]' in str(e.value)


def test_game_missing_key():
    with pytest.raises(ParseError) as e:
        game_from_dict({'players': ['A', 'B'], 'actions': [['x'], ['u']]})
    assert 'payoffs' in str(e.value)


def test_malformed_game_labels():
    payoffs = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    for key, value, location in [('actions', 5, 'game.actions'),
                                 ('actions', [['x', 'y'], 3], 'game.actions[1]'),
                                 ('players', 'AB', 'game.players'),
                                 ('players', ['A', 'B', 'C'], 'game.players')]:
        doc = {'players': ['A', 'B'], 'actions': [['x', 'y'], ['u', 'v']], 'payoffs': payoffs}
        doc[key] = value
        with pytest.raises(ParseError) as e:
            game_from_dict(doc)
        assert str(e.value).startswith(location + ':'), key


def test_tree_document():
    tree = create_builtin('elvik-tree-drivers-first').create()
    doc = json.loads(dumps_json(tree_to_dict(tree)))
    assert doc['nodes']['root'] == {'player': 'Drivers', 'edges': [['DS', 'L'], ['S', 'R']]}
    assert tree_from_dict(doc) == tree


def test_tree_errors_carry_location():
    doc = {'players': ['A', 'B'], 'root': 'r',
           'nodes': {'r': {'player': 'A', 'edges': [['x', 'l']]}, 'l': {'payoffs': [0, 1.5]}}}
    with pytest.raises(ParseError) as e:
        tree_from_dict(doc)
    assert 'tree.nodes.l.payoffs[1]' in str(e.value)
    doc['nodes']['l'] = {'payoffs': [0, 1]}
    doc['root'] = 'missing'
    with pytest.raises(ParseError):
        tree_from_dict(doc)


def test_automaton_document():
    automaton = create_builtin('punishment-path(N=12,n=2,b=9/25,alpha=20000,beta=10000)').create()
    doc = json.loads(dumps_json(automaton_to_dict(automaton)))
    assert doc['prescriptions']['ms']['Drivers'] == {'S': [9, 25], 'DS': [16, 25]}
    again = automaton_from_dict(doc)
    assert automaton_to_dict(again) == automaton_to_dict(automaton)


def test_automaton_labels_and_transfers():
    doc = {'states': ['a'], 'initial': 'a',
           'prescriptions': {'a': {'Police': 'E', 'Drivers': {'S': '1/3', 'DS': '2/3'}}},
           'transitions': {'a': {'*': 'a'}},
           'transfers': {'a': {'Police': {'E': 5}}}}
    automaton = automaton_from_dict(doc)
    assert automaton.prescription('a', 'Drivers').prob('S') == Fraction(1, 3)
    assert automaton.transfer('a', 'Police', 'E') == 5
    assert automaton_to_dict(automaton)['transfers'] == {'a': {'Police': {'E': [5, 1]}}}


def test_automaton_errors():
    doc = {'states': ['a'], 'initial': 'a',
           'prescriptions': {'a': {'Police': 'E', 'Drivers': {'S': '1/3', 'DS': '1/3'}}},
           'transitions': {'a': {'*': 'a'}}}
    with pytest.raises(ParseError) as e:
        automaton_from_dict(doc)
    assert 'automaton.prescriptions.a.Drivers' in str(e.value)
    doc['prescriptions'] = ['a']
    with pytest.raises(ParseError):
        automaton_from_dict(doc)


def test_malformed_automaton_tables():
    doc = {'states': ['a'], 'initial': 'a',
           'prescriptions': {'a': ['E']},
           'transitions': {'a': {'*': 'a'}}}
    with pytest.raises(ParseError) as e:
        automaton_from_dict(doc)
    assert 'automaton.prescriptions.a' in str(e.value)

    doc['prescriptions'] = {'a': {'Police': 'E', 'Drivers': 'S'}}
    doc['transitions'] = {'a': ['a']}
    with pytest.raises(ParseError) as e:
        automaton_from_dict(doc)
    assert 'automaton.transitions.a' in str(e.value)

    doc['transitions'] = {'a': {'*': 'a'}}
    doc['transfers'] = {'a': {'Police': 5}}
    with pytest.raises(ParseError) as e:
        automaton_from_dict(doc)
    assert 'automaton.transfers.a.Police' in str(e.value)

    doc['transfers'] = {}
    doc['states'] = 'a'
    with pytest.raises(ParseError) as e:
        automaton_from_dict(doc)
    assert 'automaton.states' in str(e.value)


def test_adaptation_document():
    spec = AdaptationSpec(Fraction(4, 5), GeometricStep(Fraction(1, 2)), AffineStep(Fraction(1, 10)), 12,
                          switch_up=Fraction(7, 10), initial_action='E')
    doc = json.loads(dumps_json(adaptation_to_dict(spec)))
    assert doc['down_step'] == {'kind': 'geometric', 'factor': [1, 2], 'anchor': [0, 1]}
    assert adaptation_from_dict(doc) == spec


def test_adaptation_errors():
    doc = {'b0': '4/5', 'horizon': 5, 'down_step': {'kind': 'linear', 'shift': 0},
           'up_step': {'kind': 'affine', 'shift': '1/10'}}
    with pytest.raises(ParseError) as e:
        adaptation_from_dict(doc)
    assert 'dynamics.down_step' in str(e.value)
    doc['down_step'] = {'kind': 'affine', 'shift': '1/10'}
    with pytest.raises(ParseError):
        adaptation_from_dict(doc)


def test_toml_documents(tmpdir):
    path = str(tmpdir.join('game.toml'))
    with open(path, 'w') as f:
        f.write(dumps_toml(game_to_dict(elvik_stage_game())))
    assert game_from_dict(load_document(path)) == elvik_stage_game()


def test_load_errors(tmpdir):
    with pytest.raises(ParseError):
        load_document(str(tmpdir.join('missing.json')))
    path = str(tmpdir.join('bad.json'))
    with open(path, 'w') as f:
        f.write('{"players": ')
    with pytest.raises(ParseError) as e:
        load_document(path)
    assert 'bad.json' in str(e.value)
