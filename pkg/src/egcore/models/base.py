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

from ..exceptions import InvalidSpec


class BuiltinModel(object):
    """
    Base class for ready-made inputs (stage games, trees and automata)
    """
    # Parameter names and default values; None means required
    parameters = {}

    def __init__(self, **params):
        unknown = [k for k in params if k not in self.parameters]
        if unknown:
            raise InvalidSpec(f"Unknown parameters {unknown!r} for builtin {self.name()!r}; "
                              f"accepted: {list(self.parameters)!r}")
        self._params = {}
        for k, default in self.parameters.items():
            value = params.get(k, default)
            if value is None:
                raise InvalidSpec(f"Builtin {self.name()!r} needs parameter {k!r}")
            self._params[k] = value

    @classmethod
    def name(cls):
        return 'builtin_base_model'

    @classmethod
    def kind(cls):
        """ 'game', 'tree' or 'automaton' """
        raise NotImplementedError

    @classmethod
    def description(cls):
        return ''

    def param(self, key):
        return self._params[key]

    def int_param(self, key):
        value = Fraction(self._params[key])
        if value.denominator != 1:
            raise InvalidSpec(f"Parameter {key!r} of {self.name()!r} must be an integer, got {value}")
        return int(value)

    def create(self):
        raise NotImplementedError

    def game(self):
        """ Stage game an automaton runs on; None for games and trees """
        return None
