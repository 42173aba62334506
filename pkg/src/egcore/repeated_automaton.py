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
Strategy automata for the infinitely repeated stage game.

Values are normalized discounted sums, V = (1 - delta) * sum_t delta^t u(t).
The automaton observes one compliance signal per period: "compliant" when
every player's declared behavior lies within `tolerance` of the prescription
(max-norm on the probabilities), otherwise a deviation by the offending player.
"""

from collections import namedtuple, OrderedDict
from enum import Enum
from fractions import Fraction

from .exceptions import InvalidAutomaton, InvalidStrategy, InvalidParams
from .game_core import MixedStrategy, expected_utility
from .tools import as_rational, check_discount, solve_rational_system

COMPLIANT = 'compliant'
JOINT = 'joint'
ANY = '*'
COMPLY = '<comply>'


class ComplianceSignal(namedtuple('ComplianceSignal', ('tag', 'player', 'action'))):
    """
    tag is 'compliant', 'deviated' (player and action set) or 'joint'.
    """
    @classmethod
    def compliant(cls):
        return cls(COMPLIANT, None, None)

    @classmethod
    def deviated(cls, player, action):
        return cls('deviated', player, action)

    @classmethod
    def joint(cls):
        return cls(JOINT, None, None)

    @property
    def key(self):
        if self.tag == 'deviated':
            return f"deviated:{self.player}:{self.action}"
        return self.tag

    def lookup_keys(self):
        """ Transition keys tried in order """
        if self.tag == 'deviated':
            return [self.key, f"deviated:{self.player}:*", ANY]
        return [self.key, ANY]


def _check_key(key, state):
    if key in (COMPLIANT, JOINT, ANY):
        return
    parts = key.split(':')
    if len(parts) != 3 or parts[0] != 'deviated' or not parts[1] or not parts[2]:
        raise InvalidAutomaton(f"Malformed transition key {key!r} at state {state!r}")


class Automaton(object):
    def __init__(self, states, initial, output, transitions, tolerance=0, transfers=None, name=None):
        """
        :param states: ordered state ids
        :param initial: initial state
        :param output: dict state -> dict player -> MixedStrategy, action label or dict action -> probability
        :param transitions: dict state -> dict signal key -> next state
        :param tolerance: rational tolerance of the compliance test
        :param transfers: dict state -> dict player -> dict action -> rational added to the stage payoff
        """
        self._states = tuple(states)
        self._initial = initial
        self._tolerance = as_rational(tolerance, 'tolerance')
        self._name = name
        if self._tolerance < 0:
            raise InvalidAutomaton(f"Tolerance must be non-negative, got {self._tolerance}")
        if len(set(self._states)) != len(self._states) or len(self._states) == 0:
            raise InvalidAutomaton("States must be non-empty and unique")
        if initial not in self._states:
            raise InvalidAutomaton(f"Initial state {initial!r} is not a state")

        self._output = OrderedDict()
        for s in self._states:
            if s not in output:
                raise InvalidAutomaton(f"No prescription for state {s!r}")
            presc = OrderedDict()
            for player, behavior in output[s].items():
                presc[player] = _as_strategy(player, behavior)
            if len(presc) != 2:
                raise InvalidAutomaton(f"State {s!r} must prescribe behavior for two players")
            self._output[s] = presc
        players = [tuple(sorted(p.keys())) for p in self._output.values()]
        if len(set(players)) != 1:
            raise InvalidAutomaton("All states must prescribe behavior for the same players")
        self._players = tuple(self._output[self._states[0]].keys())

        self._transitions = OrderedDict()
        for s in self._states:
            table = OrderedDict(transitions.get(s, {}))
            for key, target in table.items():
                _check_key(key, s)
                if target not in self._states:
                    raise InvalidAutomaton(f"Transition {key!r} of state {s!r} leads to unknown state {target!r}")
            if COMPLIANT not in table and ANY not in table:
                raise InvalidAutomaton(f"State {s!r} has no transition for the compliant signal")
            self._transitions[s] = table
        extra = [s for s in transitions if s not in self._output]
        if extra:
            raise InvalidAutomaton(f"Transitions given for unknown states {extra!r}")

        self._transfers = OrderedDict()
        for s, per_player in (transfers or {}).items():
            if s not in self._output:
                raise InvalidAutomaton(f"Transfer given for unknown state {s!r}")
            self._transfers[s] = OrderedDict(
                (p, OrderedDict((a, as_rational(x, f"transfer {s}:{p}:{a}")) for a, x in amounts.items()))
                for p, amounts in per_player.items())

        reachable = self._reachable()
        unreachable = [s for s in self._states if s not in reachable]
        if unreachable:
            raise InvalidAutomaton(f"States not reachable from {initial!r}: {unreachable!r}")

    def _reachable(self):
        seen = {self._initial}
        stack = [self._initial]
        while stack:
            s = stack.pop()
            for t in self._transitions[s].values():
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    @property
    def states(self):
        return self._states

    @property
    def initial(self):
        return self._initial

    @property
    def tolerance(self):
        return self._tolerance

    @property
    def name(self):
        return self._name

    @property
    def players(self):
        return self._players

    @property
    def output(self):
        return self._output

    @property
    def transitions(self):
        return self._transitions

    @property
    def transfers(self):
        return self._transfers

    def prescription(self, state, player):
        try:
            return self._output[state][player]
        except KeyError:
            raise InvalidAutomaton(f"No prescription for {player!r} at state {state!r}")

    def transfer(self, state, player, action):
        return self._transfers.get(state, {}).get(player, {}).get(action, Fraction(0))

    def with_transfers(self, transfers):
        """ Copy of the automaton with the given transfers added to the existing ones """
        merged = OrderedDict()
        for source in (self._transfers, transfers):
            for s, per_player in source.items():
                for p, amounts in per_player.items():
                    for a, x in amounts.items():
                        slot = merged.setdefault(s, OrderedDict()).setdefault(p, OrderedDict())
                        slot[a] = slot.get(a, Fraction(0)) + as_rational(x)
        return Automaton(self._states, self._initial, self._output, self._transitions,
                         self._tolerance, merged, self._name)

    def is_compliant(self, state, player, behavior):
        strategy = _as_strategy(player, behavior)
        return strategy.distance(self.prescription(state, player)) <= self._tolerance

    def signal_for(self, state, behaviors):
        """
        :param behaviors: dict player -> action label or MixedStrategy
        :return: ComplianceSignal
        """
        deviators = [p for p in self._players if not self.is_compliant(state, p, behaviors[p])]
        if not deviators:
            return ComplianceSignal.compliant()
        if len(deviators) > 1:
            return ComplianceSignal.joint()
        p = deviators[0]
        behavior = behaviors[p]
        action = behavior if isinstance(behavior, str) else _label(behavior)
        return ComplianceSignal.deviated(p, action)

    def next_state(self, state, signal):
        table = self._transitions[state]
        for key in signal.lookup_keys():
            if key in table:
                return table[key]
        raise InvalidAutomaton(f"No transition for signal {signal.key!r} at state {state!r}")

    def compliant_successor(self, state):
        return self.next_state(state, ComplianceSignal.compliant())

    def on_path_states(self):
        """ States visited from the initial state when everyone complies, in visiting order """
        path = []
        s = self._initial
        while s not in path:
            path.append(s)
            s = self.compliant_successor(s)
        return path

    def validate(self, game):
        """
        Check prescriptions, transfers and transitions against a stage game.
        Every unilateral pure deviation must have a transition.
        """
        if set(self._players) != set(game.players):
            raise InvalidAutomaton(f"Automaton players {self._players!r} do not match game players {game.players!r}")
        for s in self._states:
            for p in game.players:
                try:
                    game.probability_vector(self.prescription(s, p))
                except InvalidStrategy as e:
                    raise InvalidAutomaton(f"State {s!r}: {e}")
                for a in game.actions_of(p):
                    if not self.is_compliant(s, p, a):
                        self.next_state(s, ComplianceSignal.deviated(p, a))
            for p, amounts in self._transfers.get(s, {}).items():
                for a in amounts:
                    if p not in game.players or a not in game.actions_of(p):
                        raise InvalidAutomaton(f"Transfer at state {s!r} refers to unknown {p}:{a}")

    def __repr__(self):
        return f"Automaton(name={self._name!r}, states={self._states!r}, initial={self._initial!r})"


def _as_strategy(player, behavior):
    if isinstance(behavior, MixedStrategy):
        if behavior.owner != player:
            raise InvalidAutomaton(f"Strategy of {behavior.owner} given for {player}")
        return behavior
    if isinstance(behavior, str):
        return MixedStrategy.pure(player, behavior)
    if isinstance(behavior, dict):
        return MixedStrategy(player, behavior)
    raise InvalidAutomaton(f"Cannot interpret behavior {behavior!r} of {player}")


def _label(strategy):
    if strategy.is_pure():
        return strategy.support()[0]
    return '(' + ','.join(f"{a}:{p}" for a, p in strategy.probs.items()) + ')'


class StateValues(object):
    """
    Discounted value of every (player, state) pair.
    """
    def __init__(self, values, delta):
        self._values = OrderedDict(values)
        self.delta = delta

    def value(self, player, state):
        return self._values[(player, state)]

    def __getitem__(self, key):
        return self._values[key]

    def for_player(self, player):
        return OrderedDict((s, v) for (p, s), v in self._values.items() if p == player)

    def items(self):
        return self._values.items()

    def __eq__(self, other):
        if not isinstance(other, StateValues):
            return NotImplemented
        return self._values == other._values and self.delta == other.delta


def stage_payoff(automaton, game, state, player, behaviors):
    """
    Expected stage payoff of `player` at `state`, transfers included.

    :param behaviors: dict player -> action label or MixedStrategy
    """
    strategies = [_as_strategy(p, behaviors[p]) for p in game.players]
    u = expected_utility(game, player, strategies[0], strategies[1])
    own = strategies[game.player_index(player)]
    return u + sum((pr * automaton.transfer(state, player, a) for a, pr in own.probs.items()), Fraction(0))


def _compliant_behaviors(automaton, state):
    return {p: automaton.prescription(state, p) for p in automaton.players}


def _solve_linear_values(states, delta, rewards, successors):
    """ Solve V_s = (1 - delta) r_s + delta V_next(s) exactly """
    index = {s: i for i, s in enumerate(states)}
    n = len(states)
    a = [[Fraction(0)] * n for _ in range(n)]
    b = []
    for s in states:
        i = index[s]
        a[i][i] += 1
        a[i][index[successors[s]]] -= delta
        b.append((1 - delta) * rewards[s])
    return OrderedDict(zip(states, solve_rational_system(a, b)))


def solve_state_values(automaton, game, delta):
    """
    Exact state values of every player when everyone follows the automaton.

    :return: StateValues
    """
    delta = check_discount(delta)
    automaton.validate(game)
    successors = {s: automaton.compliant_successor(s) for s in automaton.states}
    values = OrderedDict()
    for player in game.players:
        rewards = {s: stage_payoff(automaton, game, s, player, _compliant_behaviors(automaton, s))
                   for s in automaton.states}
        for s, v in _solve_linear_values(automaton.states, delta, rewards, successors).items():
            values[(player, s)] = v
    return StateValues(values, delta)


def repeated_payoff(profile_stream, game, delta, player, horizon):
    """
    Truncated normalized discounted payoff (1 - delta) * sum_{t=1..horizon} delta^(t-1) u(a(t)).
    The stream is repeated cyclically when it is shorter than the horizon.
    """
    delta = check_discount(delta)
    if not isinstance(horizon, int) or horizon <= 0:
        raise InvalidParams(f"horizon must be a positive integer, got {horizon!r}")
    if len(profile_stream) == 0:
        raise InvalidParams("Empty profile stream")
    total = Fraction(0)
    weight = Fraction(1)
    for t in range(horizon):
        total += weight * game.payoff(profile_stream[t % len(profile_stream)], player)
        weight *= delta
    return (1 - delta) * total


def cyclic_payoff(cycle, game, delta, player):
    """
    Infinite-horizon normalized payoff of repeating `cycle` forever.
    """
    delta = check_discount(delta)
    if len(cycle) == 0:
        raise InvalidParams("Empty cycle")
    total = sum((delta ** k * game.payoff(a, player) for k, a in enumerate(cycle)), Fraction(0))
    return (1 - delta) * total / (1 - delta ** len(cycle))


def one_shot_payoff(automaton, state, profile, game, delta, player, values=None):
    """
    g(a) = (1 - delta) u(a) + delta V(tau(state, signal(a))).

    :param profile: ActionProfile ordered like game.players; entries are action
                    labels or MixedStrategy objects
    :param values: StateValues, computed when omitted
    """
    delta = check_discount(delta)
    if values is None:
        values = solve_state_values(automaton, game, delta)
    if state not in automaton.states:
        raise InvalidAutomaton(f"Unknown state {state!r}")
    behaviors = dict(zip(game.players, profile))
    nxt = automaton.next_state(state, automaton.signal_for(state, behaviors))
    return (1 - delta) * stage_payoff(automaton, game, state, player, behaviors) + delta * values.value(player, nxt)


def _choices(automaton, game, state, player):
    """
    Options of a unilateral deviator at a state: comply, or play one pure action.

    :return: list of (label, stage payoff, next state)
    """
    behaviors = _compliant_behaviors(automaton, state)
    result = [(COMPLY, stage_payoff(automaton, game, state, player, behaviors), automaton.compliant_successor(state))]
    prescribed = automaton.prescription(state, player)
    for a in game.actions_of(player):
        if prescribed == MixedStrategy.pure(player, a):
            continue
        dev = dict(behaviors)
        dev[player] = a
        nxt = automaton.next_state(state, automaton.signal_for(state, dev))
        result.append((a, stage_payoff(automaton, game, state, player, dev), nxt))
    return result


def best_response_values(automaton, game, delta, player):
    """
    Optimal values of `player` against the other player following the automaton,
    by exact policy iteration over {comply} and the player's pure actions.

    :return: (OrderedDict state -> value, OrderedDict state -> chosen option)
    """
    delta = check_discount(delta)
    automaton.validate(game)
    options = {s: _choices(automaton, game, s, player) for s in automaton.states}
    policy = OrderedDict((s, 0) for s in automaton.states)
    while True:
        rewards = {s: options[s][policy[s]][1] for s in automaton.states}
        successors = {s: options[s][policy[s]][2] for s in automaton.states}
        v = _solve_linear_values(automaton.states, delta, rewards, successors)
        changed = False
        for s in automaton.states:
            q = [(1 - delta) * r + delta * v[nxt] for _, r, nxt in options[s]]
            best = max(q)
            if q[policy[s]] < best:
                policy[s] = q.index(best)
                changed = True
        if not changed:
            return v, OrderedDict((s, options[s][policy[s]][0]) for s in automaton.states)


class Classification(Enum):
    SPE = 'SPE'
    NE_NOT_SPE = 'NE_not_SPE'
    NOT_NE = 'Not_NE'


Witness = namedtuple('Witness', ('player', 'state', 'action', 'gain', 'on_path'))


class Verdict(object):
    def __init__(self, classification, witnesses, values, deviation_gains):
        """
        :param deviation_gains: dict player -> best-response value minus compliant value at the initial state
        """
        self.classification = classification
        self.witnesses = list(witnesses)
        self.values = values
        self.deviation_gains = OrderedDict(deviation_gains)

    @property
    def is_spe(self):
        return self.classification == Classification.SPE

    @property
    def is_nash(self):
        return self.classification != Classification.NOT_NE

    def witness_keys(self):
        return {(w.player, w.state, w.action) for w in self.witnesses}

    def __repr__(self):
        return f"Verdict({self.classification.value}, witnesses={len(self.witnesses)})"


def one_shot_witnesses(automaton, game, delta, values):
    witnesses = []
    on_path = set(automaton.on_path_states())
    for s in automaton.states:
        for player in game.players:
            current = values.value(player, s)
            for label, r, nxt in _choices(automaton, game, s, player)[1:]:
                gain = (1 - delta) * r + delta * values.value(player, nxt) - current
                if gain > 0:
                    witnesses.append(Witness(player, s, label, gain, s in on_path))
    return witnesses


def verify(automaton, game, delta):
    """
    Classify the automaton as SPE, Nash but not subgame perfect, or not Nash.

    SPE is decided by the one-shot deviation principle over pure deviations at every
    state. Nash is decided by each player's best-response problem from the initial state.

    :return: Verdict
    """
    delta = check_discount(delta)
    values = solve_state_values(automaton, game, delta)
    witnesses = one_shot_witnesses(automaton, game, delta, values)

    gains = OrderedDict()
    for player in game.players:
        br, _ = best_response_values(automaton, game, delta, player)
        gains[player] = br[automaton.initial] - values.value(player, automaton.initial)

    if not witnesses:
        classification = Classification.SPE
    elif all(g == 0 for g in gains.values()):
        classification = Classification.NE_NOT_SPE
    else:
        classification = Classification.NOT_NE
    return Verdict(classification, witnesses, values, gains)


DeviationPlan = namedtuple('DeviationPlan', ('player', 'start', 'plan', 'gain'))


def exhaustive_deviation_search(automaton, game, delta, depth=4, values=None):
    """
    All profitable finite deviation plans of length <= depth, from every state.
    A plan lists the option taken in each period (COMPLY or a pure action);
    compliance resumes afterwards.

    :return: list of DeviationPlan
    """
    delta = check_discount(delta)
    if values is None:
        values = solve_state_values(automaton, game, delta)
    options = {(s, p): _choices(automaton, game, s, p) for s in automaton.states for p in game.players}
    found = []

    def explore(player, start, state, t, acc, plan):
        if plan:
            gain = acc + delta ** t * values.value(player, state) - values.value(player, start)
            if gain > 0:
                found.append(DeviationPlan(player, start, plan, gain))
        if t == depth:
            return
        for label, r, nxt in options[(state, player)]:
            explore(player, start, nxt, t + 1, acc + (1 - delta) * delta ** t * r, plan + (label,))

    for s in automaton.states:
        for player in game.players:
            explore(player, s, s, 0, Fraction(0), ())
    return found


def absorbing_automaton(game, prescriptions, name=None):
    """
    One-state automaton repeating the given behaviors forever.

    :param prescriptions: tuple ordered like game.players (labels or MixedStrategy)
    """
    output = {'s0': dict(zip(game.players, prescriptions))}
    return Automaton(['s0'], 's0', output, {'s0': {ANY: 's0'}}, name=name)

