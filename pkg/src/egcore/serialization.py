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
JSON/TOML documents. Rationals are written as [numerator, denominator] pairs;
on input an integer or a "p/q" string is accepted as well.
"""

import json
import os
from collections import OrderedDict

import toml

from .exceptions import ParseError, EgcoreError
from .tools import as_rational, rational_pair
from .game_core import StageGame, MixedStrategy
from .extensive_form import GameTree, Decision, Leaf
from .repeated_automaton import Automaton
from .dynamics import AdaptationSpec, AffineStep, GeometricStep


def load_document(path):
    """
    Read a JSON (.json) or TOML (.toml) document into a dict
    """
    if not os.path.exists(path):
        raise ParseError("file not found", path)
    with open(path, 'r') as f:
        text = f.read()
    return loads_document(text, path)


def loads_document(text, location='<string>'):
    try:
        if str(location).endswith('.toml'):
            return toml.loads(text)
        return json.loads(text, object_pairs_hook=OrderedDict)
    except (ValueError, toml.TomlDecodeError) as e:
        raise ParseError(f"malformed document: {e}", location)


def dumps_json(doc):
    return json.dumps(doc, indent=2) + '\n'


def _get(doc, key, location):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", location)
    if key not in doc:
        raise ParseError(f"missing key {key!r}", location)
    return doc[key]


def _rational(value, location):
    if isinstance(value, float):
        raise ParseError(f"decimal {value!r} is not allowed; write a rational", location)
    return as_rational(value, location)


def _labels(value, location, count=None):
    """ A list of string labels, optionally of a fixed length """
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError("expected a list of string labels", location)
    if count is not None and len(value) != count:
        raise ParseError(f"expected {count} labels, got {len(value)}", location)
    return value


def _object(value, location, what="an object"):
    if not isinstance(value, dict):
        raise ParseError(f"expected {what}", location)
    return value


def _wrap(fn, location):
    """ Re-raise validation errors of the model classes with the document location """
    try:
        return fn()
    except ParseError:
        raise
    except EgcoreError as e:
        raise ParseError(str(e), location)


# Stage games

def game_to_dict(game):
    payoffs = [[[rational_pair(v) for v in game.payoffs[i, j, :]]
                for j in range(len(game.actions[1]))]
               for i in range(len(game.actions[0]))]
    return OrderedDict([('players', list(game.players)),
                        ('actions', [list(a) for a in game.actions]),
                        ('payoffs', payoffs)])


def game_from_dict(doc, location='game'):
    players = _labels(_get(doc, 'players', location), f"{location}.players", 2)
    actions = _get(doc, 'actions', location)
    if not isinstance(actions, list) or len(actions) != 2:
        raise ParseError("actions must hold one list per player", f"{location}.actions")
    for k, acts in enumerate(actions):
        _labels(acts, f"{location}.actions[{k}]")
    raw = _get(doc, 'payoffs', location)
    if not isinstance(raw, list):
        raise ParseError("payoffs must be a nested list", f"{location}.payoffs")
    payoffs = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise ParseError("payoff row must be a list", f"{location}.payoffs[{i}]")
        cells = []
        for j, cell in enumerate(row):
            loc = f"{location}.payoffs[{i}][{j}]"
            if not isinstance(cell, list) or len(cell) != 2:
                raise ParseError("payoff cell must be a pair of rationals", loc)
            cells.append(tuple(_rational(v, f"{loc}[{k}]") for k, v in enumerate(cell)))
        payoffs.append(cells)
    return _wrap(lambda: StageGame(players, actions, payoffs), location)


# Game trees

def tree_to_dict(tree):
    nodes = OrderedDict()
    for node_id, node in tree.nodes.items():
        if isinstance(node, Leaf):
            nodes[node_id] = OrderedDict([('payoffs', [rational_pair(v) for v in node.payoffs])])
        else:
            nodes[node_id] = OrderedDict([('player', node.player),
                                          ('edges', [[a, c] for a, c in node.edges.items()])])
    return OrderedDict([('players', list(tree.players)), ('root', tree.root), ('nodes', nodes)])


def tree_from_dict(doc, location='tree'):
    players = _labels(_get(doc, 'players', location), f"{location}.players")
    root = _get(doc, 'root', location)
    if not isinstance(root, str):
        raise ParseError("root must be a node id", f"{location}.root")
    raw = _get(doc, 'nodes', location)
    if not isinstance(raw, dict):
        raise ParseError("nodes must be an object", f"{location}.nodes")
    nodes = OrderedDict()
    for node_id, node in raw.items():
        loc = f"{location}.nodes.{node_id}"
        if isinstance(node, dict) and 'payoffs' in node:
            pay = node['payoffs']
            if not isinstance(pay, list):
                raise ParseError("payoffs must be a list", loc)
            nodes[node_id] = Leaf(tuple(_rational(v, f"{loc}.payoffs[{k}]") for k, v in enumerate(pay)))
        else:
            player = _get(node, 'player', loc)
            edges = _get(node, 'edges', loc)
            if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)
                                                   for e in edges):
                raise ParseError("edges must be a list of [action, child] pairs", f"{loc}.edges")
            nodes[node_id] = Decision(player, [tuple(e) for e in edges])
    return _wrap(lambda: GameTree(players, root, nodes), location)


# Automata

def _strategy_to_dict(strategy):
    return OrderedDict((a, rational_pair(p)) for a, p in strategy.probs.items())


def automaton_to_dict(automaton):
    doc = OrderedDict()
    if automaton.name is not None:
        doc['name'] = automaton.name
    doc['states'] = list(automaton.states)
    doc['initial'] = automaton.initial
    doc['tolerance'] = rational_pair(automaton.tolerance)
    doc['prescriptions'] = OrderedDict(
        (s, OrderedDict((p, _strategy_to_dict(st)) for p, st in presc.items()))
        for s, presc in automaton.output.items())
    doc['transitions'] = OrderedDict((s, OrderedDict(t)) for s, t in automaton.transitions.items())
    if automaton.transfers:
        doc['transfers'] = OrderedDict(
            (s, OrderedDict((p, OrderedDict((a, rational_pair(x)) for a, x in amounts.items()))
                            for p, amounts in per_player.items()))
            for s, per_player in automaton.transfers.items())
    return doc


def automaton_from_dict(doc, location='automaton'):
    states = _labels(_get(doc, 'states', location), f"{location}.states")
    initial = _get(doc, 'initial', location)
    raw = _get(doc, 'prescriptions', location)
    transitions = _get(doc, 'transitions', location)
    for key, value in (('prescriptions', raw), ('transitions', transitions)):
        if not isinstance(value, dict):
            raise ParseError(f"{key} must be an object keyed by state", f"{location}.{key}")
    tolerance = _rational(doc.get('tolerance', 0), f"{location}.tolerance")

    output = OrderedDict()
    for s, presc in raw.items():
        _object(presc, f"{location}.prescriptions.{s}", "an object player -> prescription")
        output[s] = OrderedDict()
        for p, probs in presc.items():
            loc = f"{location}.prescriptions.{s}.{p}"
            if isinstance(probs, str):
                output[s][p] = probs
            elif isinstance(probs, dict):
                output[s][p] = _wrap(lambda: MixedStrategy(
                    p, OrderedDict((a, _rational(v, f"{loc}.{a}")) for a, v in probs.items())), loc)
            else:
                raise ParseError("prescription must be an action label or an object action -> probability", loc)
    for s, table in transitions.items():
        _object(table, f"{location}.transitions.{s}", "an object signal -> next state")

    transfers = OrderedDict()
    for s, per_player in _object(doc.get('transfers', {}), f"{location}.transfers").items():
        transfers[s] = OrderedDict()
        for p, amounts in _object(per_player, f"{location}.transfers.{s}").items():
            loc = f"{location}.transfers.{s}.{p}"
            transfers[s][p] = OrderedDict((a, _rational(x, f"{loc}.{a}"))
                                          for a, x in _object(amounts, loc).items())
    return _wrap(lambda: Automaton(states, initial, output, transitions, tolerance, transfers,
                                   doc.get('name')), location)


# Adaptation specs

def _step_to_dict(step):
    d = OrderedDict([('kind', step.kind)])
    for field in step._fields:
        d[field] = rational_pair(getattr(step, field))
    return d


def _step_from_dict(doc, location):
    kind = _get(doc, 'kind', location)
    if kind == 'affine':
        return _wrap(lambda: AffineStep(_rational(_get(doc, 'shift', location), f"{location}.shift")), location)
    if kind == 'geometric':
        return _wrap(lambda: GeometricStep(_rational(_get(doc, 'factor', location), f"{location}.factor"),
                                           _rational(doc.get('anchor', 0), f"{location}.anchor")), location)
    raise ParseError(f"unknown step kind {kind!r}; use 'affine' or 'geometric'", location)


def adaptation_to_dict(spec):
    doc = OrderedDict([('b0', rational_pair(spec.b0)),
                       ('horizon', spec.horizon),
                       ('down_step', _step_to_dict(spec.down_step)),
                       ('up_step', _step_to_dict(spec.up_step)),
                       ('switch_down', rational_pair(spec.switch_down)),
                       ('switch_up', rational_pair(spec.switch_up)),
                       ('clamp', spec.clamp)])
    if spec.initial_action is not None:
        doc['initial_action'] = spec.initial_action
    return doc


def adaptation_from_dict(doc, location='dynamics'):
    switch_up = doc.get('switch_up')
    return _wrap(lambda: AdaptationSpec(
        _rational(_get(doc, 'b0', location), f"{location}.b0"),
        _step_from_dict(_get(doc, 'down_step', location), f"{location}.down_step"),
        _step_from_dict(_get(doc, 'up_step', location), f"{location}.up_step"),
        _get(doc, 'horizon', location),
        switch_down=_rational(doc.get('switch_down', '1/2'), f"{location}.switch_down"),
        switch_up=None if switch_up is None else _rational(switch_up, f"{location}.switch_up"),
        initial_action=doc.get('initial_action'),
        clamp=doc.get('clamp', True)), location)


def dumps_toml(doc):
    return toml.dumps(doc)
