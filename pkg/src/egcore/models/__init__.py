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
import re
from collections import OrderedDict

from .predefined_models import (ElvikStage, ElvikTreePoliceFirst, ElvikTreeDriversFirst, ShortPeriod,
                                ElvikAutomatonI, ElvikAutomatonII, PunishmentPath, elvik_stage_game)
from ..exceptions import InvalidSpec, ParseError
from ..tools import parse_rational

all_builtin_models = [ElvikStage, ElvikTreePoliceFirst, ElvikTreeDriversFirst, ShortPeriod,
                      ElvikAutomatonI, ElvikAutomatonII, PunishmentPath]

_CALL_RE = re.compile(r'^\s*([A-Za-z0-9_-]+)\s*(?:\((.*)\))?\s*$')


def builtin_games():
    """
    Catalog of builtin inputs: name -> model class
    """
    return OrderedDict((c.name(), c) for c in all_builtin_models)


def parse_builtin(text):
    """
    'short-period(N=12,alpha=20000,beta=10000)' -> ('short-period', {'N': 12, ...})
    """
    m = _CALL_RE.match(text)
    if m is None:
        raise ParseError(f"Cannot parse builtin reference {text!r}", 'builtin')
    name, arglist = m.group(1), m.group(2)
    params = OrderedDict()
    if arglist is not None and arglist.strip():
        for item in arglist.split(','):
            if '=' not in item:
                raise ParseError(f"Expected key=value, got {item.strip()!r}", f"builtin {name}")
            key, value = (s.strip() for s in item.split('=', 1))
            params[key] = parse_rational(value, f"builtin {name}: {key}")
    return name, params


def create_builtin(text):
    """
    Instantiate a builtin model from its reference string
    """
    name, params = parse_builtin(text)
    for c in all_builtin_models:
        if name == c.name():
            return c(**params)
    raise InvalidSpec(f"Unknown builtin {name!r}; available: {', '.join(c.name() for c in all_builtin_models)}")
