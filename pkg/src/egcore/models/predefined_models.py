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

from .base import BuiltinModel
from ..extensive_form import GameTree, Decision, Leaf
from ..repeated_automaton import Automaton, COMPLIANT, ANY
from ..synthesis import (short_period_game, build_punishment_automaton, ShortPeriodParams,
                         POLICE, DRIVERS, ENFORCE, DONT_ENFORCE, SPEED, DONT_SPEED)

ANNUAL_ALPHA = 20000
ANNUAL_BETA = 10000


def elvik_stage_game():
    return short_period_game(1, ANNUAL_ALPHA, ANNUAL_BETA)


class ElvikStage(BuiltinModel):
    @classmethod
    def name(cls):
        return 'elvik-stage'

    @classmethod
    def kind(cls):
        return 'game'

    @classmethod
    def description(cls):
        return 'Annual police/drivers stage game, payoffs (Police, Drivers)'

    def create(self):
        return elvik_stage_game()


class ElvikTreePoliceFirst(BuiltinModel):
    @classmethod
    def name(cls):
        return 'elvik-tree-police-first'

    @classmethod
    def kind(cls):
        return 'tree'

    @classmethod
    def description(cls):
        return 'Police moves first, drivers observe; leaves (Police, Drivers)'

    def create(self):
        nodes = {
            'root': Decision(POLICE, [(DONT_ENFORCE, 'L'), (ENFORCE, 'R')]),
            'L': Decision(DRIVERS, [(SPEED, 'L.S'), (DONT_SPEED, 'L.DS')]),
            'R': Decision(DRIVERS, [(SPEED, 'R.S'), (DONT_SPEED, 'R.DS')]),
            'L.S': Leaf((-20000, 50)),
            'L.DS': Leaf((0, -50)),
            'R.S': Leaf((-10000, -300)),
            'R.DS': Leaf((-10000, -50)),
        }
        return GameTree((POLICE, DRIVERS), 'root', nodes)


class ElvikTreeDriversFirst(BuiltinModel):
    @classmethod
    def name(cls):
        return 'elvik-tree-drivers-first'

    @classmethod
    def kind(cls):
        return 'tree'

    @classmethod
    def description(cls):
        return 'Drivers move first, police observes; leaves (Drivers, Police)'

    def create(self):
        nodes = {
            'root': Decision(DRIVERS, [(DONT_SPEED, 'L'), (SPEED, 'R')]),
            'L': Decision(POLICE, [(ENFORCE, 'L.E'), (DONT_ENFORCE, 'L.DE')]),
            'R': Decision(POLICE, [(ENFORCE, 'R.E'), (DONT_ENFORCE, 'R.DE')]),
            'L.E': Leaf((-50, -10000)),
            'L.DE': Leaf((-50, 0)),
            'R.E': Leaf((-300, -10000)),
            'R.DE': Leaf((50, -20000)),
        }
        return GameTree((DRIVERS, POLICE), 'root', nodes)


class ShortPeriod(BuiltinModel):
    parameters = {'N': None, 'alpha': Fraction(20000), 'beta': Fraction(10000)}

    @classmethod
    def name(cls):
        return 'short-period'

    @classmethod
    def kind(cls):
        return 'game'

    @classmethod
    def description(cls):
        return 'Stage game of one of N periods per year, police costs alpha (no enforcement) and beta (enforcement)'

    def create(self):
        return short_period_game(self.int_param('N'), self.param('alpha'), self.param('beta'))


class ElvikAutomatonI(BuiltinModel):
    @classmethod
    def name(cls):
        return 'elvik-automaton-i'

    @classmethod
    def kind(cls):
        return 'automaton'

    @classmethod
    def description(cls):
        return 'Repeat (DE,DS); any deviation triggers one period of (E,DS)'

    def create(self):
        calm, punish = 'DE,DS', 'E,DS'
        output = {calm: {POLICE: DONT_ENFORCE, DRIVERS: DONT_SPEED},
                  punish: {POLICE: ENFORCE, DRIVERS: DONT_SPEED}}
        transitions = {calm: {COMPLIANT: calm, ANY: punish},
                       punish: {COMPLIANT: calm, ANY: punish}}
        return Automaton([calm, punish], calm, output, transitions, name=self.name())

    def game(self):
        return elvik_stage_game()


class ElvikAutomatonII(BuiltinModel):
    parameters = {'b': None, 'eps': Fraction(0)}

    @classmethod
    def name(cls):
        return 'elvik-automaton-ii'

    @classmethod
    def kind(cls):
        return 'automaton'

    @classmethod
    def description(cls):
        return 'Mixed state (DE, speeding with probability b) with a one-period punishment, annual game'

    def short_period_params(self):
        return ShortPeriodParams(1, 1, 0, self.param('b'), ANNUAL_ALPHA, ANNUAL_BETA)

    def create(self):
        automaton = build_punishment_automaton(self.short_period_params(), self.param('eps'))
        return Automaton(automaton.states, automaton.initial, automaton.output, automaton.transitions,
                         automaton.tolerance, name=self.name())

    def game(self):
        return elvik_stage_game()


class PunishmentPath(BuiltinModel):
    parameters = {'N': None, 'n': None, 'b': None, 'alpha': Fraction(20000), 'beta': Fraction(10000),
                  'delta': Fraction(0), 'eps': Fraction(0)}

    @classmethod
    def name(cls):
        return 'punishment-path'

    @classmethod
    def kind(cls):
        return 'automaton'

    @classmethod
    def description(cls):
        return 'Mixed state with an n-state (E,DS) punishment path in the short-period game'

    def short_period_params(self):
        return ShortPeriodParams(self.int_param('N'), self.int_param('n'), self.param('delta'),
                                 self.param('b'), self.param('alpha'), self.param('beta'))

    def create(self):
        return build_punishment_automaton(self.short_period_params(), self.param('eps'))

    def game(self):
        return self.short_period_params().game()
