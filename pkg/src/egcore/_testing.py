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
Random instances for tests. Every generator takes a random.Random.
"""

import random
from fractions import Fraction

from .game_core import StageGame, MixedStrategy
from .repeated_automaton import Automaton, COMPLIANT, ANY

PROBABILITIES = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
DISCOUNTS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def rng(seed):
    return random.Random(seed)


def random_game(r, low=-5, high=5):
    """ 2x2 game with integer payoffs in [low, high] """
    payoffs = [[(Fraction(r.randint(low, high)), Fraction(r.randint(low, high))) for _ in range(2)]
               for _ in range(2)]
    return StageGame(('P1', 'P2'), (('a', 'b'), ('c', 'd')), payoffs)


def random_strategy(r, player, actions):
    p = r.choice(PROBABILITIES)
    return MixedStrategy(player, {actions[0]: p, actions[1]: 1 - p})


def random_automaton(r, game, max_states=3):
    """
    Automaton with 1..max_states states. The catch-all transition of state i
    points to state i+1 (mod the number of states) so that every state is reachable.
    """
    n = r.randint(1, max_states)
    states = [f"w{i}" for i in range(n)]
    output = {}
    transitions = {}
    for i, s in enumerate(states):
        output[s] = {p: random_strategy(r, p, game.actions_of(p)) for p in game.players}
        table = {COMPLIANT: r.choice(states), ANY: states[(i + 1) % n]}
        for p in game.players:
            if r.random() < 0.5:
                table[f"deviated:{p}:*"] = r.choice(states)
        transitions[s] = table
    return Automaton(states, states[0], output, transitions, name='random')


def random_instance(seed, max_states=3):
    """ (game, automaton, delta) """
    r = rng(seed)
    game = random_game(r)
    automaton = random_automaton(r, game, max_states)
    return game, automaton, r.choice(DISCOUNTS)


def random_positive_rational(r, max_num=9, max_den=9):
    return Fraction(r.randint(1, max_num), r.randint(1, max_den))
