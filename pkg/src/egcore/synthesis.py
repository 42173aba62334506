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
Punishment-path thresholds, the punishment automaton and the enforcement subsidy
for the short-period game.

In the short-period game a year is split into N periods. The police pays
beta for enforcing and suffers alpha when drivers speed unchecked; the
drivers' payoffs are the annual ones divided by N.
"""

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
import numbers

import sympy

from .exceptions import InvalidParams
from .game_core import StageGame
from .repeated_automaton import Automaton, COMPLIANT, ANY
from .tools import as_rational, check_discount

POLICE = 'Police'
DRIVERS = 'Drivers'
ENFORCE, DONT_ENFORCE = 'E', 'DE'
SPEED, DONT_SPEED = 'S', 'DS'

MIXED_STATE = 'ms'


def _check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise InvalidParams(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def short_period_game(N, alpha, beta):
    """
    Stage game of one of N periods per year. N = 1 with alpha = 20000, beta = 10000
    gives the annual game.
    """
    N = _check_positive_int(N, 'N')
    alpha = as_rational(alpha, 'alpha')
    beta = as_rational(beta, 'beta')
    if alpha <= 0 or beta <= 0:
        raise InvalidParams(f"alpha and beta must be positive, got alpha={alpha}, beta={beta}")
    d = Fraction(1, N)
    payoffs = [[(-beta, -300 * d), (-beta, -50 * d)],
               [(-alpha, 50 * d), (Fraction(0), -50 * d)]]
    return StageGame((POLICE, DRIVERS), ((ENFORCE, DONT_ENFORCE), (SPEED, DONT_SPEED)), payoffs)


class AffineCost(namedtuple('AffineCost', ('a0', 'a1'))):
    """
    Cost as a function of the speeding probability, c(b) = a0 + a1 * b.
    """
    def __new__(cls, a0, a1=0):
        return super(AffineCost, cls).__new__(cls, as_rational(a0, 'a0'), as_rational(a1, 'a1'))

    def __call__(self, b):
        return self.a0 + self.a1 * b


def evaluate_cost(cost, b):
    if isinstance(cost, AffineCost):
        return cost(b)
    return as_rational(cost)


class ShortPeriodParams(namedtuple('ShortPeriodParams', ('N', 'n', 'delta', 'b', 'alpha', 'beta'))):
    """
    N periods per year, punishment length n, per-period discount factor delta,
    drivers' speeding probability b, and the police costs alpha(b) and beta(b)
    evaluated at b.

    N = 1 is the annual game and accepts any n; otherwise n < N.
    """
    def __new__(cls, N, n, delta, b, alpha, beta):
        N = _check_positive_int(N, 'N')
        n = _check_positive_int(n, 'n')
        if N >= 2 and n >= N:
            raise InvalidParams(f"Punishment length n={n} must be smaller than N={N}")
        delta = check_discount(delta)
        b = as_rational(b, 'b')
        if b < 0 or b > 1:
            raise InvalidParams(f"b={b} must lie in [0, 1]")
        alpha = evaluate_cost(alpha, b)
        beta = evaluate_cost(beta, b)
        if alpha <= 0 or beta <= 0:
            raise InvalidParams(f"alpha(b) and beta(b) must be positive, got alpha={alpha}, beta={beta}")
        return super(ShortPeriodParams, cls).__new__(cls, N, n, delta, b, alpha, beta)

    def game(self):
        return short_period_game(self.N, self.alpha, self.beta)


def driver_threshold(n, delta):
    """
    Smallest speeding probability, exclusive, that leaves the drivers no profitable
    deviation from the mixed state: (1 - delta) / (1 - delta^(n+1)).
    """
    n = _check_positive_int(n, 'n')
    delta = check_discount(delta)
    return (1 - delta) / (1 - delta ** (n + 1))


@lru_cache(maxsize=None)
def threshold_limit(n):
    """
    Limit of driver_threshold(n, delta) for delta -> 1, which is 1/(n+1).
    """
    n = _check_positive_int(n, 'n')
    d = sympy.Symbol('d')
    lim = sympy.limit((1 - d) / (1 - d ** (n + 1)), d, 1, dir='-')
    return as_rational(sympy.Rational(lim))


Infeasible = namedtuple('Infeasible', ('floor',))
Infeasible.__doc__ = "No punishment length works; `floor` is the infimum 1 - delta of the driver bound."


def min_punishment_length(target_b, delta):
    """
    Smallest n with driver_threshold(n, delta) < target_b.

    :return: int or Infeasible
    """
    target_b = as_rational(target_b, 'target_b')
    delta = check_discount(delta)
    if target_b <= 0 or target_b >= 1:
        raise InvalidParams(f"target_b={target_b} must lie in (0, 1)")
    floor = 1 - delta
    if target_b <= floor:
        return Infeasible(floor)
    n = 1
    while driver_threshold(n, delta) >= target_b:
        n += 1
    return n


PoliceFeasibility = namedtuple('PoliceFeasibility', ('feasible', 'margin'))


def police_feasible(params):
    """
    The police prefers the mixed state to enforcing iff b < beta/alpha.

    :return: PoliceFeasibility(flag, beta/alpha - b)
    """
    ratio = params.beta / params.alpha
    return PoliceFeasibility(params.b < ratio, ratio - params.b)


ThresholdReport = namedtuple('ThresholdReport', (
    'n', 'delta', 'driver_lower_bound', 'police_upper_bound', 'feasible_interval', 'limit_at_delta_1'))


def threshold_report(n, delta, alpha, beta):
    """
    Both bounds on the speeding probability. feasible_interval is the open
    interval between them, or None when it is empty.
    """
    lower = driver_threshold(n, delta)
    alpha = as_rational(alpha, 'alpha')
    beta = as_rational(beta, 'beta')
    if alpha <= 0 or beta <= 0:
        raise InvalidParams(f"alpha and beta must be positive, got alpha={alpha}, beta={beta}")
    upper = beta / alpha
    interval = (lower, upper) if lower < upper else None
    return ThresholdReport(n, check_discount(delta), lower, upper, interval, threshold_limit(n))


def sweep_thresholds(ns, deltas, alpha, beta):
    """ ThresholdReport for every (n, delta), n varying slowest """
    return [threshold_report(n, d, alpha, beta) for n in ns for d in deltas]


def punishment_state(i):
    return f"p{i}"


def build_punishment_automaton(params, eps=0):
    """
    Mixed initial state followed by an n-state punishment path of (E, DS).

    In the mixed state the police does not enforce and the drivers speed with
    probability b. A drivers' deviation (or a joint one) starts the punishment;
    a police deviation keeps the mixed state. Each punishment state advances on
    compliance, the last one back to the mixed state, and repeats itself otherwise.
    """
    eps = as_rational(eps, 'eps')
    if eps < 0:
        raise InvalidParams(f"eps must be non-negative, got {eps}")
    n = params.n
    states = [MIXED_STATE] + [punishment_state(i) for i in range(1, n + 1)]
    output = {MIXED_STATE: {POLICE: DONT_ENFORCE, DRIVERS: {SPEED: params.b, DONT_SPEED: 1 - params.b}}}
    transitions = {MIXED_STATE: {COMPLIANT: MIXED_STATE,
                                 f"deviated:{POLICE}:*": MIXED_STATE,
                                 f"deviated:{DRIVERS}:*": punishment_state(1),
                                 ANY: punishment_state(1)}}
    for i in range(1, n + 1):
        s = punishment_state(i)
        output[s] = {POLICE: ENFORCE, DRIVERS: DONT_SPEED}
        transitions[s] = {COMPLIANT: punishment_state(i + 1) if i < n else MIXED_STATE, ANY: s}
    return Automaton(states, MIXED_STATE, output, transitions, tolerance=eps, name='punishment-path')


SubsidyResult = namedtuple('SubsidyResult', (
    'per_period', 'gamma', 'binding_m', 'per_m', 'gamma_paper_form', 'discrepancy'))
SubsidyResult.__doc__ = """
per_period: smallest top-up x* of the police enforcement payoff on the punishment path
gamma: total subsidy n * x*
per_m: list of (m, smallest x for the m-th punishment state)
gamma_paper_form: (1/n) (1 - delta^n / (1 - delta^n)) beta, kept for comparison
"""


def subsidy_lower_bound(params):
    """
    Smallest per-period top-up that removes the police's incentive to abandon
    the punishment path, by direct evaluation of the constraint of every
    punishment state m (n - m + 1 periods of punishment left):

        (1 - delta) (x - beta) (1 + delta + ... + delta^(n-m)) + delta^(n-m+1) V_ms >= 0

    with V_ms = -alpha * b the police value of the mixed state.
    """
    n, delta, beta = params.n, params.delta, params.beta
    v_ms = -params.alpha * params.b
    per_m = []
    for m in range(1, n + 1):
        remaining = n - m + 1
        coeff = (1 - delta) * sum(delta ** k for k in range(remaining))
        per_m.append((m, beta - delta ** remaining * v_ms / coeff))
    binding_m, x_star = max(per_m, key=lambda item: item[1])

    published = Fraction(1, n) * (1 - delta ** n / (1 - delta ** n)) * beta
    gamma = n * x_star
    return SubsidyResult(x_star, gamma, binding_m, per_m, published, published != gamma)


def apply_subsidy(automaton, params, per_period):
    """ Add `per_period` to the police payoff of enforcing in every punishment state """
    per_period = as_rational(per_period, 'per_period')
    transfers = {punishment_state(i): {POLICE: {ENFORCE: per_period}} for i in range(1, params.n + 1)}
    return automaton.with_transfers(transfers)

