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

from egcore.extensive_form import *
from egcore.serialization import tree_to_dict, tree_from_dict, dumps_json
from egcore._testing import rng, random_positive_rational
from egcore.game_core import ActionProfile, pure_nash
from egcore.exceptions import InvalidTree, UnsupportedShape, InvalidStrategy
from egcore.models import create_builtin


def _police_first():
    return create_builtin('elvik-tree-police-first').create()


def _drivers_first():
    return create_builtin('elvik-tree-drivers-first').create()


def test_backward_induction_police_first():
    tree = _police_first()
    result = backward_induction(tree)
    assert [(s.player, s.action) for s in result.path] == [('Police', 'E'), ('Drivers', 'DS')]
    assert result.payoffs == (-10000, -50)
    assert result.profile.choices == {'root': 'E', 'L': 'S', 'R': 'DS'}
    assert result.ties == []


def test_backward_induction_drivers_first():
    tree = _drivers_first()
    result = backward_induction(tree)
    assert [(s.player, s.action) for s in result.path] == [('Drivers', 'DS'), ('Police', 'DE')]
    assert result.payoffs == (-50, 0)
    assert result.profile.action('R') == 'E'


def test_backward_induction_tie():
    nodes = {'root': Decision('A', [('y', 'l1'), ('x', 'l2')]),
             'l1': Leaf((1, 0)), 'l2': Leaf((1, 5))}
    tree = GameTree(('A', 'B'), 'root', nodes)
    result = backward_induction(tree)
    assert result.profile.action('root') == 'x'
    assert result.ties == [Tie('root', ('x', 'y'))]


def test_invalid_trees():
    with pytest.raises(InvalidTree):
        GameTree(('A', 'B'), 'missing', {'l': Leaf((0, 0))})
    with pytest.raises(InvalidTree):
        GameTree(('A', 'B'), 'r', {'r': Decision('A', [('x', 'l'), ('y', 'l')]), 'l': Leaf((0, 0))})
    with pytest.raises(InvalidTree):
        GameTree(('A', 'B'), 'r', {'r': Decision('C', [('x', 'l')]), 'l': Leaf((0, 0))})
    with pytest.raises(InvalidTree):
        GameTree(('A', 'B'), 'r', {'r': Decision('A', [('x', 'l')]), 'l': Leaf((0, 0)), 'u': Leaf((1, 1))})
    with pytest.raises(InvalidTree):
        GameTree(('A', 'B'), 'r', {'r': Decision('A', [])})


def test_profile_must_cover_all_nodes():
    tree = _police_first()
    with pytest.raises(InvalidStrategy):
        PureStrategyProfile(tree, {'root': 'E', 'R': 'DS'})
    with pytest.raises(InvalidStrategy):
        PureStrategyProfile(tree, {'root': 'E', 'L': 'X', 'R': 'DS'})


def test_evaluate_with_behavior():
    tree = _police_first()
    profile = PureStrategyProfile(tree, {'root': 'DE', 'L': 'S', 'R': 'DS'})
    behavior = BehaviorAssignment(tree, {'L': {'S': Fraction(3, 4), 'DS': Fraction(1, 4)}})
    assert evaluate(tree, profile, behavior) == (-15000, 25)
    assert evaluate(tree, profile, start='R') == (-10000, -50)


def test_nash_but_not_subgame_perfect():
    tree = _police_first()
    profile = PureStrategyProfile(tree, {'root': 'E', 'L': 'S', 'R': 'DS'})
    behavior = {'L': {'S': Fraction(3, 4), 'DS': Fraction(1, 4)}}
    check = check_nash_sequential(tree, profile, behavior)
    assert check.is_nash
    assert not check.is_spe
    assert check.witness == SequentialWitness('L', 'Drivers', 'L', 'S', 25)
    assert check.witnesses == [check.witness]


def test_not_nash():
    tree = _police_first()
    profile = PureStrategyProfile(tree, {'root': 'DE', 'L': 'S', 'R': 'DS'})
    check = check_nash_sequential(tree, profile)
    assert not check.is_nash
    assert check.witness == SequentialWitness('root', 'Police', 'root', 'E', 10000)


def test_backward_induction_is_subgame_perfect():
    for tree in [_police_first(), _drivers_first()]:
        check = check_nash_sequential(tree, backward_induction(tree).profile)
        assert check.is_nash and check.is_spe
        assert check.witness is None


def test_subgames():
    assert subgames(_police_first()) == ['root', 'L', 'R']


def test_threshold_police_first():
    th = off_path_threshold(_police_first(), 'L', 'Police')
    assert th.action == 'S'
    assert th.decision_node == 'root'
    assert th.pivot == Fraction(1, 2)
    assert th.above == 'E'
    assert th.below == 'DE'
    assert not th.always_indifferent


def test_threshold_drivers_first():
    th = off_path_threshold(_drivers_first(), 'R', 'Drivers', 'E')
    assert th.pivot == Fraction(2, 7)
    assert th.above == 'DS'
    assert th.below == 'S'

    # Same point expressed through the other action
    th = off_path_threshold(_drivers_first(), 'R', 'Drivers', 'DE')
    assert th.pivot == Fraction(5, 7)
    assert th.above == 'S'


def test_threshold_without_dependence():
    nodes = {'root': Decision('A', [('in', 'm'), ('out', 'o')]),
             'm': Decision('B', [('x', 'mx'), ('y', 'my')]),
             'mx': Leaf((3, 0)), 'my': Leaf((3, 1)), 'o': Leaf((1, 0))}
    tree = GameTree(('A', 'B'), 'root', nodes)
    th = off_path_threshold(tree, 'm', 'A')
    assert th.pivot is None
    assert th.above == 'in' and th.below == 'in'


def test_threshold_bad_shape():
    tree = _police_first()
    with pytest.raises(UnsupportedShape):
        off_path_threshold(tree, 'root', 'Police')
    with pytest.raises(UnsupportedShape):
        off_path_threshold(tree, 'L.S', 'Police')


def test_induced_normal_form():
    form = induced_normal_form(_drivers_first())
    assert form.players == ('Drivers', 'Police')
    assert form.actions[0] == ('root=DS', 'root=S')
    assert len(form.actions[1]) == 4
    assert pure_nash(form) == [ActionProfile('root=DS', 'L=DE,R=E')]


def test_format_tree():
    tree = _police_first()
    text = format_tree(tree, backward_induction(tree).profile)
    assert text.splitlines()[0] == '[root] Police'
    assert 'E* -> [R] Drivers' in text
    assert '(-10000, -50)' in text


def _random_tree(r, depth=3):
    """ Binary tree with alternating movers and integer payoffs in [-3, 3] """
    nodes = {}

    def grow(node_id, level):
        if level == depth:
            nodes[node_id] = Leaf((r.randint(-3, 3), r.randint(-3, 3)))
            return
        nodes[node_id] = Decision('AB'[level % 2], [('l', node_id + 'l'), ('r', node_id + 'r')])
        grow(node_id + 'l', level + 1)
        grow(node_id + 'r', level + 1)

    grow('n', 0)
    return GameTree(('A', 'B'), 'n', nodes)


def _scale_tree(tree, factors):
    nodes = {}
    for node_id, node in tree.nodes.items():
        if isinstance(node, Leaf):
            node = Leaf(tuple(f * v for f, v in zip(factors, node.payoffs)))
        nodes[node_id] = node
    return GameTree(tree.players, tree.root, nodes)


def test_backward_induction_on_random_trees():
    for seed in range(30):
        tree = _random_tree(rng(seed))
        result = backward_induction(tree)
        assert evaluate(tree, result.profile) == result.payoffs, seed
        assert check_nash_sequential(tree, result.profile).is_spe, seed
        for step in result.path:
            assert result.profile.action(step.node) == step.action
        again = backward_induction(tree_from_dict(json.loads(dumps_json(tree_to_dict(tree)))))
        assert again.profile == result.profile, seed


def test_threshold_invariant_under_rescaling():
    r = rng(11)
    for tree, node, mover in [(_police_first(), 'L', 'Police'), (_drivers_first(), 'R', 'Drivers')]:
        th = off_path_threshold(tree, node, mover)
        for _ in range(10):
            factors = (random_positive_rational(r), random_positive_rational(r))
            other = off_path_threshold(_scale_tree(tree, factors), node, mover)
            assert other.pivot == th.pivot
            assert (other.above, other.below) == (th.above, th.below)


def test_threshold_always_indifferent():
    nodes = {'root': Decision('A', [('in', 'm'), ('out', 'o')]),
             'm': Decision('B', [('x', 'mx'), ('y', 'my')]),
             'mx': Leaf((2, 0)), 'my': Leaf((2, 1)), 'o': Leaf((2, 5))}
    th = off_path_threshold(GameTree(('A', 'B'), 'root', nodes), 'm', 'A')
    assert th.always_indifferent
    assert th.pivot is None
    assert th.above is None and th.below is None
