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
Alternating enforcement: the speeding frequency b drifts down while the police
enforces and up while it does not, and the police switches at thresholds.

Each period the police looks at b and acts, then the drivers adapt.
"""

from collections import namedtuple
from fractions import Fraction

from .exceptions import InvalidSpec
from .tools import as_rational

ENFORCE, DONT_ENFORCE = 'E', 'DE'


class AffineStep(namedtuple('AffineStep', ('shift',))):
    """ b -> b + shift """
    kind = 'affine'

    def __new__(cls, shift):
        return super(AffineStep, cls).__new__(cls, as_rational(shift, 'shift'))

    def __call__(self, b):
        return b + self.shift

    def is_non_increasing(self):
        return self.shift <= 0

    def is_non_decreasing(self):
        return self.shift >= 0


class GeometricStep(namedtuple('GeometricStep', ('factor', 'anchor'))):
    """ b -> anchor + factor * (b - anchor); anchor 0 shrinks b, anchor 1 shrinks 1 - b """
    kind = 'geometric'

    def __new__(cls, factor, anchor=0):
        factor = as_rational(factor, 'factor')
        if factor < 0:
            raise InvalidSpec(f"Geometric factor must be non-negative, got {factor}")
        return super(GeometricStep, cls).__new__(cls, factor, as_rational(anchor, 'anchor'))

    def __call__(self, b):
        return self.anchor + self.factor * (b - self.anchor)

    # Monotonicity on [0, 1]
    def is_non_increasing(self):
        return self.factor == 1 or (self.factor < 1 and self.anchor <= 0)

    def is_non_decreasing(self):
        return self.factor == 1 or (self.factor < 1 and self.anchor >= 1)


class AdaptationSpec(object):
    def __init__(self, b0, down_step, up_step, horizon, switch_down=Fraction(1, 2),
                 switch_up=None, initial_action=None, clamp=True):
        """
        :param b0: initial speeding frequency
        :param down_step: update of b while the police enforces
        :param up_step: update of b while the police does not enforce
        :param horizon: number of periods
        :param switch_down: an enforcing police keeps enforcing iff b > switch_down
        :param switch_up: a non-enforcing police starts enforcing iff b > switch_up (default: switch_down)
        :param initial_action: police action in the first period (default: E iff b0 > switch_up)
        :param clamp: clamp b to [0, 1] (and flag the period) instead of failing
        """
        self.b0 = as_rational(b0, 'b0')
        self.down_step = down_step
        self.up_step = up_step
        self.horizon = horizon
        self.switch_down = as_rational(switch_down, 'switch_down')
        self.switch_up = self.switch_down if switch_up is None else as_rational(switch_up, 'switch_up')
        self.initial_action = initial_action
        self.clamp = clamp
        self._validate()

    def _validate(self):
        if not 0 <= self.b0 <= 1:
            raise InvalidSpec(f"b0={self.b0} must lie in [0, 1]")
        if not isinstance(self.horizon, int) or self.horizon <= 0:
            raise InvalidSpec(f"horizon must be a positive integer, got {self.horizon!r}")
        if not self.down_step.is_non_increasing():
            raise InvalidSpec(f"down_step {self.down_step!r} must be non-increasing")
        if not self.up_step.is_non_decreasing():
            raise InvalidSpec(f"up_step {self.up_step!r} must be non-decreasing")
        if self.switch_down > self.switch_up:
            raise InvalidSpec(f"switch_down={self.switch_down} must not exceed switch_up={self.switch_up}")
        if self.initial_action not in (None, ENFORCE, DONT_ENFORCE):
            raise InvalidSpec(f"initial_action must be {ENFORCE!r} or {DONT_ENFORCE!r}")

    def police_action(self, b, previous=None):
        """ Police rule; `previous` is the police action of the last period (None in the first) """
        if previous is None:
            if self.initial_action is not None:
                return self.initial_action
            return ENFORCE if b > self.switch_up else DONT_ENFORCE
        if previous == ENFORCE:
            return ENFORCE if b > self.switch_down else DONT_ENFORCE
        return ENFORCE if b > self.switch_up else DONT_ENFORCE

    def is_markov(self):
        """ True if the police action depends on b alone """
        return self.switch_down == self.switch_up and self.initial_action is None

    def __eq__(self, other):
        if not isinstance(other, AdaptationSpec):
            return NotImplemented
        return vars(self) == vars(other)


Record = namedtuple('Record', ('t', 'action', 'b', 'clamped'))
Cycle = namedtuple('Cycle', ('offset', 'period'))


class Trajectory(object):
    def __init__(self, records, cycles=None):
        self.records = list(records)
        self.cycles = list(cycles) if cycles else []

    def __len__(self):
        return len(self.records)

    def states(self):
        return [(r.action, r.b) for r in self.records]

    def clamped_periods(self):
        return [r.t for r in self.records if r.clamped]


def simulate(spec):
    """
    Run the adaptation process for spec.horizon periods.

    :return: Trajectory with the detected cycle attached
    """
    records = []
    b = spec.b0
    clamped = False
    action = None
    for t in range(spec.horizon):
        action = spec.police_action(b, action)
        records.append(Record(t, action, b, clamped))
        step = spec.down_step if action == ENFORCE else spec.up_step
        b = step(b)
        clamped = False
        if b < 0 or b > 1:
            if not spec.clamp:
                raise InvalidSpec(f"Step {step!r} left [0, 1] at period {t}: b={b}")
            b = min(max(b, Fraction(0)), Fraction(1))
            clamped = True
    traj = Trajectory(records)
    cycle = detect_cycle(traj)
    if cycle is not None:
        start = traj.records[cycle.offset:cycle.offset + cycle.period]
        traj.cycles.append((cycle.period, ' '.join(f"{r.action}@{r.b}" for r in start)))
    return traj


def detect_cycle(traj):
    """
    First exact recurrence of the (police action, b) state.

    :return: Cycle(offset, period) or None
    """
    if len(traj) == 0:
        raise InvalidSpec("Empty trajectory")
    seen = {}
    for i, state in enumerate(traj.states()):
        if state in seen:
            return Cycle(seen[state], i - seen[state])
        seen[state] = i
    return None
