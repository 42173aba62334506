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
"""
Perfect-information game trees.

Leaf payoffs are ordered like GameTree.players.
"""

from collections import namedtuple, OrderedDict
from fractions import Fraction
from itertools import product

from .exceptions import InvalidTree, UnsupportedShape, InvalidStrategy
from .game_core import MixedStrategy, StageGame
from .tools import as_rational

Leaf = namedtuple('Leaf', ('payoffs',))
PathStep = namedtuple('PathStep', ('node', 'player', 'action'))
Tie = namedtuple('Tie', ('node', 'actions'))
SequentialWitness = namedtuple('SequentialWitness', ('subgame', 'player', 'node', 'action', 'gain'))


class Decision(object):
    """
    Decision node. `edges` is an ordered sequence of (action label, child node id).
    """
    def __init__(self, player, edges):
        self.player = player
        self.edges = OrderedDict(edges)

    def actions(self):
        return tuple(self.edges.keys())

    def child(self, action):
        try:
            return self.edges[action]
        except KeyError:
            raise InvalidStrategy(f"Action {action!r} is not available; actions are {self.actions()!r}")

    def __eq__(self, other):
        if not isinstance(other, Decision):
            return NotImplemented
        return self.player == other.player and list(self.edges.items()) == list(other.edges.items())

    def __repr__(self):
        return f"Decision({self.player!r}, {list(self.edges.items())!r})"


class GameTree(object):
    def __init__(self, players, root, nodes):
        """
        :param players: pair of player names; leaf payoffs follow this order
        :param root: id of the root node
        :param nodes: dict node id -> Decision or Leaf
        """
        self._players = tuple(players)
        self._root = root
        self._nodes = OrderedDict()
        for node_id, node in nodes.items():
            if isinstance(node, Leaf):
                node = Leaf(tuple(as_rational(v, f"leaf {node_id}") for v in node.payoffs))
            self._nodes[node_id] = node
        self._parent = {}
        self._preorder = []
        self._validate()

    def _validate(self):
        if len(self._players) != 2 or self._players[0] == self._players[1]:
            raise InvalidTree(f"A game tree needs two distinct players, got {self._players!r}")
        if self._root not in self._nodes:
            raise InvalidTree(f"Root {self._root!r} is not a node")

        seen = set()
        stack = [self._root]
        while stack:
            node_id = stack.pop()
            if node_id in seen:
                raise InvalidTree(f"Node {node_id!r} is reachable more than once")
            seen.add(node_id)
            self._preorder.append(node_id)
            node = self._nodes[node_id]
            if isinstance(node, Leaf):
                if len(node.payoffs) != 2:
                    raise InvalidTree(f"Leaf {node_id!r} must carry two payoffs")
                continue
            if not isinstance(node, Decision):
                raise InvalidTree(f"Node {node_id!r} is neither a decision node nor a leaf")
            if node.player not in self._players:
                raise InvalidTree(f"Node {node_id!r} belongs to unknown player {node.player!r}")
            if len(node.edges) == 0:
                raise InvalidTree(f"Decision node {node_id!r} has no edges")
            for child in reversed(list(node.edges.values())):
                if child not in self._nodes:
                    raise InvalidTree(f"Edge from {node_id!r} points to unknown node {child!r}")
                if child in self._parent:
                    raise InvalidTree(f"Node {child!r} has more than one parent")
                self._parent[child] = node_id
                stack.append(child)

        unreachable = [n for n in self._nodes if n not in seen]
        if unreachable:
            raise InvalidTree(f"Nodes not reachable from the root: {unreachable!r}")

    @property
    def players(self):
        return self._players

    @property
    def root(self):
        return self._root

    @property
    def nodes(self):
        return self._nodes

    def node(self, node_id):
        try:
            return self._nodes[node_id]
        except KeyError:
            raise InvalidTree(f"Unknown node {node_id!r}")

    def parent(self, node_id):
        return self._parent.get(node_id)

    def player_index(self, player):
        if player not in self._players:
            raise InvalidTree(f"Unknown player {player!r}")
        return self._players.index(player)

    def preorder(self, start=None):
        """ Node ids in pre-order (edges in declaration order) """
        if start is None or start == self._root:
            return list(self._preorder)
        result = []
        stack = [start]
        while stack:
            node_id = stack.pop()
            result.append(node_id)
            node = self._nodes[node_id]
            if isinstance(node, Decision):
                stack.extend(reversed(list(node.edges.values())))
        return result

    def decision_nodes(self, player=None, start=None):
        return [n for n in self.preorder(start) if isinstance(self._nodes[n], Decision)
                and (player is None or self._nodes[n].player == player)]

    def __eq__(self, other):
        if not isinstance(other, GameTree):
            return NotImplemented
        return self._players == other._players and self._root == other._root \
            and list(self._nodes.items()) == list(other._nodes.items())


class PureStrategyProfile(object):
    """
    One action at every decision node of the tree, on and off the path.
    """
    def __init__(self, tree, choices):
        missing = [n for n in tree.decision_nodes() if n not in choices]
        if missing:
            raise InvalidStrategy(f"No action assigned at decision nodes {missing!r}")
        self._choices = OrderedDict()
        for node_id in tree.decision_nodes():
            action = choices[node_id]
            tree.node(node_id).child(action)
            self._choices[node_id] = action
        extra = [n for n in choices if n not in self._choices]
        if extra:
            raise InvalidStrategy(f"Actions assigned at non-decision nodes {extra!r}")

    @property
    def choices(self):
        return dict(self._choices)

    def action(self, node_id):
        return self._choices[node_id]

    def for_player(self, tree, player):
        return OrderedDict((n, a) for n, a in self._choices.items() if tree.node(n).player == player)

    def __eq__(self, other):
        if not isinstance(other, PureStrategyProfile):
            return NotImplemented
        return self._choices == other._choices

    def __repr__(self):
        return f"PureStrategyProfile({dict(self._choices)!r})"


class BehaviorAssignment(object):
    """
    Mixtures at selected decision nodes, overriding a pure profile there.
    """
    def __init__(self, tree, mix):
        self._mix = OrderedDict()
        for node_id, strategy in mix.items():
            node = tree.node(node_id)
            if not isinstance(node, Decision):
                raise InvalidStrategy(f"Node {node_id!r} is not a decision node")
            if not isinstance(strategy, MixedStrategy):
                strategy = MixedStrategy(node.player, strategy)
            if strategy.owner != node.player:
                raise InvalidStrategy(f"Mixture at {node_id!r} must belong to {node.player}")
            for a in strategy.support():
                node.child(a)
            self._mix[node_id] = strategy

    @property
    def mix(self):
        return dict(self._mix)

    def __contains__(self, node_id):
        return node_id in self._mix

    def __getitem__(self, node_id):
        return self._mix[node_id]


BackwardInductionResult = namedtuple('BackwardInductionResult', ('profile', 'path', 'payoffs', 'ties'))


def backward_induction(tree):
    """
    Subgame-perfect pure profile by backward induction.

    At ties the lexicographically first action label is selected and the
    tie is reported in `ties`.

    :return: BackwardInductionResult
    """
    values = {}
    choices = {}
    ties = []
    for node_id in reversed(tree.preorder()):
        node = tree.node(node_id)
        if isinstance(node, Leaf):
            values[node_id] = node.payoffs
            continue
        idx = tree.player_index(node.player)
        best = max(values[c][idx] for c in node.edges.values())
        maximizers = sorted(a for a, c in node.edges.items() if values[c][idx] == best)
        if len(maximizers) > 1:
            ties.append(Tie(node_id, tuple(maximizers)))
        choices[node_id] = maximizers[0]
        values[node_id] = values[node.child(maximizers[0])]

    profile = PureStrategyProfile(tree, choices)
    ties.reverse()
    return BackwardInductionResult(profile, realized_path(tree, profile), values[tree.root], ties)


def realized_path(tree, profile, start=None):
    path = []
    node_id = tree.root if start is None else start
    while isinstance(tree.node(node_id), Decision):
        node = tree.node(node_id)
        action = profile.action(node_id)
        path.append(PathStep(node_id, node.player, action))
        node_id = node.child(action)
    return path


def _node_distribution(tree, node_id, profile, behavior):
    """ list of (action, probability) played at a decision node """
    if behavior is not None and node_id in behavior:
        return list(behavior[node_id].probs.items())
    return [(profile.action(node_id), Fraction(1))]


def evaluate(tree, profile, behavior=None, start=None):
    """
    Expected payoffs of the subgame rooted at `start` under the profile.

    :return: tuple of two Fractions, ordered like tree.players
    """
    start = tree.root if start is None else start
    values = {}
    for node_id in reversed(tree.preorder(start)):
        node = tree.node(node_id)
        if isinstance(node, Leaf):
            values[node_id] = node.payoffs
            continue
        v = [Fraction(0), Fraction(0)]
        for action, p in _node_distribution(tree, node_id, profile, behavior):
            child = values[node.child(action)]
            v[0] += p * child[0]
            v[1] += p * child[1]
        values[node_id] = tuple(v)
    return values[start]


def _best_response(tree, player, profile, behavior, start):
    """
    Best-response values of `player` in the subgame at `start` while the other player
    follows the profile. Where the profile's own play already attains the maximum it is kept.

    :return: (dict node -> value of player, dict node -> best action or None when kept)
    """
    idx = tree.player_index(player)
    values = {}
    deviation = {}
    for node_id in reversed(tree.preorder(start)):
        node = tree.node(node_id)
        if isinstance(node, Leaf):
            values[node_id] = node.payoffs[idx]
            continue
        dist = _node_distribution(tree, node_id, profile, behavior)
        own = sum(p * values[node.child(a)] for a, p in dist)
        if node.player != player:
            values[node_id] = own
            continue
        best = max(values[c] for c in node.edges.values())
        if own == best:
            values[node_id] = own
        else:
            deviation[node_id] = min(a for a, c in node.edges.items() if values[c] == best)
            values[node_id] = best
    return values, deviation


def _first_deviation(tree, profile, behavior, start, deviation):
    """ First node in pre-order, reached under the deviating play, where the best response differs """
    stack = [start]
    while stack:
        node_id = stack.pop()
        node = tree.node(node_id)
        if isinstance(node, Leaf):
            continue
        if node_id in deviation:
            return node_id, deviation[node_id]
        reached = [node.child(a) for a, p in _node_distribution(tree, node_id, profile, behavior) if p > 0]
        stack.extend(reversed(reached))
    return None, None


def _nash_witnesses(tree, profile, behavior, start):
    witnesses = []
    for player in tree.players:
        values, deviation = _best_response(tree, player, profile, behavior, start)
        idx = tree.player_index(player)
        current = evaluate(tree, profile, behavior, start)[idx]
        gain = values[start] - current
        if gain > 0:
            node_id, action = _first_deviation(tree, profile, behavior, start, deviation)
            witnesses.append(SequentialWitness(start, player, node_id, action, gain))
    return witnesses


def subgames(tree):
    """ Roots of all proper and improper subgames (every decision node), pre-order """
    return tree.decision_nodes()


SequentialCheck = namedtuple('SequentialCheck', ('is_nash', 'is_spe', 'witness', 'witnesses'))


def check_nash_sequential(tree, profile, behavior=None):
    """
    Nash and subgame-perfection check of a (possibly partly mixed) profile.

    Unilateral pure deviations are searched by dynamic programming in every
    subgame. `witness` is the first failure: the whole game if it is not a
    Nash equilibrium, otherwise the first failing subgame in pre-order.

    :param behavior: BehaviorAssignment or dict node -> mixture, optional
    :return: SequentialCheck
    """
    if behavior is not None and not isinstance(behavior, BehaviorAssignment):
        behavior = BehaviorAssignment(tree, behavior)

    witnesses = []
    for start in subgames(tree):
        witnesses.extend(_nash_witnesses(tree, profile, behavior, start))

    root_failures = [w for w in witnesses if w.subgame == tree.root]
    is_nash = len(root_failures) == 0
    is_spe = len(witnesses) == 0
    witness = witnesses[0] if witnesses else None
    return SequentialCheck(is_nash, is_spe, witness, witnesses)


ThresholdResult = namedtuple('ThresholdResult', (
    'node', 'mixer', 'action', 'decision_node', 'earlier_mover',
    'branch_action', 'other_action', 'pivot', 'above', 'below', 'always_indifferent'))
ThresholdResult.__doc__ = """
Indifference point of the earlier mover.

pivot is the probability of `action` at `node` at which the earlier mover is
indifferent between `branch_action` (leading to the mixing node) and
`other_action`. `above`/`below` name the action preferred for probabilities
above/below the pivot; None means indifference. pivot is None when the
comparison does not depend on the probability.
"""


def off_path_threshold(tree, mixing_node, earlier_mover, action=None):
    """
    Probability at which the earlier mover is indifferent between its two actions,
    when the occupant of `mixing_node` mixes and all other nodes follow backward induction.

    :param action: the action whose probability is solved for (default: first edge)
    :return: ThresholdResult
    """
    node = tree.node(mixing_node)
    if not isinstance(node, Decision) or len(node.edges) != 2:
        n_actions = len(node.edges) if isinstance(node, Decision) else 0
        raise UnsupportedShape(f"Mixing node {mixing_node!r} must have exactly 2 actions, has {n_actions}")
    actions = node.actions()
    if action is None:
        action = actions[0]
    elif action not in actions:
        raise InvalidStrategy(f"Action {action!r} is not available at {mixing_node!r}")
    complement = actions[1] if action == actions[0] else actions[0]

    # Nearest two-action ancestor owned by the earlier mover
    child, ancestor = mixing_node, tree.parent(mixing_node)
    while ancestor is not None:
        anc = tree.node(ancestor)
        if anc.player == earlier_mover and len(anc.edges) == 2:
            break
        child, ancestor = ancestor, tree.parent(ancestor)
    if ancestor is None:
        raise UnsupportedShape(f"No two-action decision node of {earlier_mover} above {mixing_node!r}")
    anc = tree.node(ancestor)
    branch_action = [a for a, c in anc.edges.items() if c == child][0]
    other_action = [a for a in anc.actions() if a != branch_action][0]

    bi = backward_induction(tree).profile
    idx = tree.player_index(earlier_mover)
    v_other = evaluate(tree, bi, start=anc.child(other_action))[idx]

    def branch_value(a):
        behavior = BehaviorAssignment(tree, {mixing_node: MixedStrategy.pure(node.player, a)})
        return evaluate(tree, bi, behavior, start=anc.child(branch_action))[idx]

    # Value of the branch is p * v_one + (1 - p) * v_zero
    v_one = branch_value(action)
    v_zero = branch_value(complement)

    if v_one == v_zero:
        if v_zero == v_other:
            pref = None
        else:
            pref = branch_action if v_zero > v_other else other_action
        return ThresholdResult(mixing_node, node.player, action, ancestor, earlier_mover,
                               branch_action, other_action, None, pref, pref, pref is None)

    pivot = (v_other - v_zero) / (v_one - v_zero)
    if v_one > v_zero:
        above, below = branch_action, other_action
    else:
        above, below = other_action, branch_action
    return ThresholdResult(mixing_node, node.player, action, ancestor, earlier_mover,
                           branch_action, other_action, pivot, above, below, False)


def induced_normal_form(tree):
    """
    Strategic form of the tree. A pure strategy of a player picks one action at
    each of that player's decision nodes; it is labelled "node=action,...".

    :return: StageGame with players ordered like tree.players
    """
    strategies = []
    labels = []
    for player in tree.players:
        nodes = tree.decision_nodes(player)
        combos = list(product(*[tree.node(n).actions() for n in nodes]))
        strategies.append([dict(zip(nodes, c)) for c in combos])
        labels.append([','.join(f"{n}={a}" for n, a in zip(nodes, c)) for c in combos])

    payoffs = []
    for s1 in strategies[0]:
        row = []
        for s2 in strategies[1]:
            choices = dict(s1)
            choices.update(s2)
            row.append(evaluate(tree, PureStrategyProfile(tree, choices)))
        payoffs.append(row)
    return StageGame(tree.players, labels, payoffs)


def format_tree(tree, profile=None):
    """
    Indented text rendering; the profile's choices are marked with '*'.
    """
    lines = []

    def visit(node_id, label, depth):
        node = tree.node(node_id)
        indent = '  ' * depth
        prefix = f"{label} -> " if label is not None else ''
        if isinstance(node, Leaf):
            pay = ', '.join(str(v) for v in node.payoffs)
            lines.append(f"{indent}{prefix}({pay})")
            return
        lines.append(f"{indent}{prefix}[{node_id}] {node.player}")
        for a, c in node.edges.items():
            mark = '*' if profile is not None and profile.action(node_id) == a else ''
            visit(c, a + mark, depth + 1)

    visit(tree.root, None, 0)
    return '\n'.join(lines)
