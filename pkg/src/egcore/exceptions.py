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
Errors raised by egcore.

Library code raises these; only the command-line front end turns them into
exit codes.
"""


class EgcoreError(RuntimeError):
    """Base class of all errors raised by egcore"""


class InvalidStrategy(EgcoreError):
    pass


class UnsupportedShape(EgcoreError):
    pass


class InvalidTree(EgcoreError):
    pass


class InvalidDiscount(EgcoreError):
    pass


class InvalidAutomaton(EgcoreError):
    pass


class InvalidParams(EgcoreError):
    pass


class InvalidSpec(EgcoreError):
    pass


class ParseError(EgcoreError):
    """
    Malformed input. ``location`` names the file, JSON path or option.
    """
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class InfeasibleSynthesis(EgcoreError):
    """
    No punishment-path automaton exists for the requested speeding probability.
    """
    def __init__(self, message, driver_bound, police_bound):
        self.driver_bound = driver_bound
        self.police_bound = police_bound
        super().__init__(message)
