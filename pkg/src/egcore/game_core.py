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
Two-player finite normal-form games with exact rational payoffs.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import product

import numpy

from .exceptions import InvalidStrategy, UnsupportedShape, InvalidParams
from .tools import as_rational, rational_array

ActionProfile = namedtuple('ActionProfile', ('a1', 'a2'))


class MixedStrategy(object):
    """
    Probability distribution over the actions of one player.

    Actions with zero probability may be omitted.
    """
    def __init__(self, owner, probs):
        self._owner = owner
        self._probs = {}
        total = Fraction(0)
        for action, p in probs.items():
            p = as_rational(p, f"{owner}:{action}")
            if p < 0 or p > 1:
                raise InvalidStrategy(f"Probability of {action!r} for {owner} is {p}, not in [0, 1]")
            if p > 0:
                self._probs[action] = p
            total += p
        if total != 1:
            raise InvalidStrategy(f"Probabilities of {owner} sum to {total}, not 1")

    @classmethod
    def pure(cls, owner, action):
        return cls(owner, {action: Fraction(1)})

    @property
    def owner(self):
        return self._owner

    @property
    def probs(self):
        return dict(self._probs)

    def prob(self, action):
        return self._probs.get(action, Fraction(0))

    def support(self):
        return tuple(self._probs.keys())

    def is_pure(self):
        return len(self._probs) == 1

    def distance(self, other):
        """ Largest absolute difference of probabilities (max-norm) """
        actions = set(self._probs) | set(other._probs)
        return max(abs(self.prob(a) - other.prob(a)) for a in actions)

    def __eq__(self, other):
        if not isinstance(other, MixedStrategy):
            return NotImplemented
        return self._owner == other._owner and self._probs == other._probs

    def __hash__(self):
        return hash((self._owner, frozenset(self._probs.items())))

    def __repr__(self):
        body = ', '.join(f"{a}:{p}" for a, p in self._probs.items())
        return f"MixedStrategy({self._owner!r}, {{{body}}})"


class StageGame(object):
    """
    Two-player normal-form game.

    payoffs[i, j] holds the pair (u_1, u_2) for the profile (actions[0][i], actions[1][j]).
    """
    def __init__(self, players, actions, payoffs):
        if not isinstance(players, (list, tuple)) or len(players) != 2 or players[0] == players[1]:
            raise InvalidParams(f"A stage game needs two distinct players, got {players!r}")
        if not isinstance(actions, (list, tuple)) or len(actions) != 2 \
                or not all(isinstance(a, (list, tuple)) for a in actions):
            raise InvalidParams("actions must hold one list per player")
        self._players = tuple(players)
        self._actions = tuple(tuple(a) for a in actions)
        for p, acts in zip(self._players, self._actions):
            if len(acts) == 0 or len(set(acts)) != len(acts):
                raise InvalidParams(f"Actions of {p} must be non-empty and unique: {acts!r}")

        shape = (len(self._actions[0]), len(self._actions[1]), 2)
        if numpy.shape(numpy.asarray(payoffs, dtype=object)) != shape:
            raise InvalidParams(f"Payoff matrix must have shape {shape}")
        self._payoffs = rational_array(payoffs)
        self._payoffs.setflags(write=False)

    @property
    def players(self):
        return self._players

    @property
    def actions(self):
        return self._actions

    @property
    def payoffs(self):
        return self._payoffs

    def player_index(self, player):
        try:
            return self._players.index(player)
        except ValueError:
            raise InvalidStrategy(f"Unknown player {player!r}; players are {self._players!r}")

    def opponent(self, player):
        return self._players[1 - self.player_index(player)]

    def actions_of(self, player):
        return self._actions[self.player_index(player)]

    def action_index(self, player, action):
        acts = self.actions_of(player)
        if action not in acts:
            raise InvalidStrategy(f"Unknown action {action!r} for {player}; actions are {acts!r}")
        return acts.index(action)

    def payoff_matrix(self, player):
        """ (n1, n2) object array of the given player's payoffs """
        return self._payoffs[:, :, self.player_index(player)]

    def payoff(self, profile, player=None):
        i = self.action_index(self._players[0], profile[0])
        j = self.action_index(self._players[1], profile[1])
        if player is None:
            return tuple(self._payoffs[i, j, :])
        return self._payoffs[i, j, self.player_index(player)]

    def probability_vector(self, strategy):
        """
        Probability vector of a strategy in action order.
        """
        acts = self.actions_of(strategy.owner)
        for a in strategy.support():
            if a not in acts:
                raise InvalidStrategy(f"Unknown action {a!r} for {strategy.owner}; actions are {acts!r}")
        return numpy.array([strategy.prob(a) for a in acts], dtype=object)

    def profiles(self):
        return [ActionProfile(a1, a2) for a1, a2 in product(*self._actions)]

    def __eq__(self, other):
        if not isinstance(other, StageGame):
            return NotImplemented
        return self._players == other._players and self._actions == other._actions \
            and numpy.array_equal(self._payoffs, other._payoffs)

    def __repr__(self):
        return f"StageGame(players={self._players!r}, actions={self._actions!r})"


def _ordered(game, s1, s2):
    """ Return (strategy of player 1, strategy of player 2) """
    if s1.owner == s2.owner:
        raise InvalidStrategy(f"Both strategies belong to {s1.owner}")
    game.player_index(s1.owner)
    game.player_index(s2.owner)
    if s1.owner == game.players[0]:
        return s1, s2
    return s2, s1


def expected_utility(game, player, s1, s2):
    """
    Expected stage payoff of `player` when the two players use s1 and s2.

    The strategies may be passed in either order; they are matched to
    players by their owners.
    """
    s1, s2 = _ordered(game, s1, s2)
    x = game.probability_vector(s1)
    y = game.probability_vector(s2)
    return Fraction(x.dot(game.payoff_matrix(player)).dot(y))


def action_values(game, player, opponent):
    """
    Expected payoff of each pure action of `player` against `opponent`, in action order.
    """
    if opponent.owner == player:
        raise InvalidStrategy(f"Opponent strategy belongs to {player}")
    y = game.probability_vector(opponent)
    u = game.payoff_matrix(player)
    if game.player_index(player) == 0:
        vals = u.dot(y)
    else:
        vals = y.dot(u)
    return [Fraction(v) for v in vals]


def best_responses(game, player, opponent):
    """
    Pure best responses of `player` against the mixed strategy `opponent`.

    All maximizers are returned, in action order.

    :return: tuple of action labels
    """
    vals = action_values(game, player, opponent)
    vmax = max(vals)
    return tuple(a for a, v in zip(game.actions_of(player), vals) if v == vmax)


def pure_nash(game):
    """
    All pure-strategy Nash equilibria, in row-major order of the payoff matrix.

    :return: list of ActionProfile
    """
    p1, p2 = game.players
    result = []
    for a1, a2 in game.profiles():
        if a1 in best_responses(game, p1, MixedStrategy.pure(p2, a2)) \
                and a2 in best_responses(game, p2, MixedStrategy.pure(p1, a1)):
            result.append(ActionProfile(a1, a2))
    return result


def _indifference_probability(diff_first, diff_second):
    """
    Probability q of the first action of the mixer such that
    q * diff_first + (1 - q) * diff_second == 0, or None.
    """
    den = diff_first - diff_second
    if den == 0:
        return None
    return -diff_second / den


def is_degenerate(game):
    """
    True if some pure action of one player leaves the other player indifferent
    between two actions. Such 2x2 games may have a continuum of equilibria.
    """
    a = game.payoff_matrix(game.players[0])
    b = game.payoff_matrix(game.players[1])
    n1, n2 = a.shape
    for i in range(n1):
        if len(set(b[i, :])) < n2:
            return True
    for j in range(n2):
        if len(set(a[:, j])) < n1:
            return True
    return False


def _interior_endpoints(d_first, d_second):
    """
    Endpoints in (0, 1) of {q in [0, 1] : q * d_first + (1 - q) * d_second >= 0}.
    """
    if d_first == d_second:
        return []
    q = d_second / (d_second - d_first)
    return [q] if 0 < q < 1 else []


def mixed_nash_2x2(game):
    """
    Nash equilibria of a 2x2 game by support enumeration.

    Pure equilibria come first (row-major), then the partially mixed ones, then
    the completely mixed one if it exists. In a degenerate game the equilibria in
    which exactly one player mixes form segments; each segment is reported by
    its endpoints.

    :return: list of (MixedStrategy, MixedStrategy) in the order of game.players
    """
    if tuple(len(a) for a in game.actions) != (2, 2):
        raise UnsupportedShape(f"mixed_nash_2x2 needs a 2x2 game, got shape "
                               f"{len(game.actions[0])}x{len(game.actions[1])}")
    p1, p2 = game.players
    (r0, r1), (c0, c1) = game.actions
    a = game.payoff_matrix(p1)
    b = game.payoff_matrix(p2)

    result = [(MixedStrategy.pure(p1, prof.a1), MixedStrategy.pure(p2, prof.a2)) for prof in pure_nash(game)]

    # One player stays pure while the other, indifferent against it, mixes.
    for i, row in enumerate((r0, r1)):
        if b[i, 0] == b[i, 1]:
            for y in _interior_endpoints(a[i, 0] - a[1 - i, 0], a[i, 1] - a[1 - i, 1]):
                result.append((MixedStrategy.pure(p1, row), MixedStrategy(p2, {c0: y, c1: 1 - y})))
    for j, col in enumerate((c0, c1)):
        if a[0, j] == a[1, j]:
            for x in _interior_endpoints(b[0, j] - b[0, 1 - j], b[1, j] - b[1, 1 - j]):
                result.append((MixedStrategy(p1, {r0: x, r1: 1 - x}), MixedStrategy.pure(p2, col)))

    # Player 1 mixes to make player 2 indifferent between the columns, and vice versa.
    x0 = _indifference_probability(b[0, 0] - b[0, 1], b[1, 0] - b[1, 1])
    y0 = _indifference_probability(a[0, 0] - a[1, 0], a[0, 1] - a[1, 1])
    if x0 is not None and y0 is not None and 0 < x0 < 1 and 0 < y0 < 1:
        result.append((MixedStrategy(p1, {r0: x0, r1: 1 - x0}),
                       MixedStrategy(p2, {c0: y0, c1: 1 - y0})))
    return result


def scale_game(game, player, factor, shift=0):
    """
    Apply the positive affine map u -> factor * u + shift to one player's payoffs.
    """
    factor = as_rational(factor, 'factor')
    shift = as_rational(shift, 'shift')
    if factor <= 0:
        raise InvalidParams(f"Scaling factor must be positive, got {factor}")
    idx = game.player_index(player)
    payoffs = numpy.array(game.payoffs, dtype=object)
    payoffs[:, :, idx] = payoffs[:, :, idx] * factor + shift
    return StageGame(game.players, game.actions, payoffs)
