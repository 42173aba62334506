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
Grid evaluation of thresholds and subsidies over (n, delta, b).
Rows come back in grid order (n slowest, b fastest) for any number of processes.
"""

from collections import namedtuple
from multiprocessing import Pool

from .exceptions import InvalidParams
from .synthesis import ShortPeriodParams, threshold_report, subsidy_lower_bound

GridPoint = namedtuple('GridPoint', ('index', 'N', 'n', 'delta', 'b', 'alpha', 'beta'))


def grid(N, ns, deltas, bs, alpha, beta):
    """
    :return: list of GridPoint, n varying slowest
    """
    if not ns or not deltas or not bs:
        raise InvalidParams("Sweep grids must not be empty")
    points = []
    for n in ns:
        for d in deltas:
            for b in bs:
                points.append(GridPoint(len(points), N, n, d, b, alpha, beta))
    return points


def evaluate_point(point):
    """
    ThresholdReport at the costs evaluated at b, and the subsidy

    :return: (index, ThresholdReport, b, SubsidyResult)
    """
    params = ShortPeriodParams(point.N, point.n, point.delta, point.b, point.alpha, point.beta)
    report = threshold_report(point.n, point.delta, params.alpha, params.beta)
    return point.index, report, params.b, subsidy_lower_bound(params)


def run_sweep(points, np=1):
    """
    Evaluate all grid points, with `np` worker processes when np > 1.

    :return: list of (ThresholdReport, b, SubsidyResult) in grid order
    """
    if np < 1:
        raise InvalidParams(f"np={np} must be positive")
    if np == 1 or len(points) <= 1:
        results = [evaluate_point(p) for p in points]
    else:
        with Pool(min(np, len(points))) as pool:
            results = pool.map(evaluate_point, points)
    results.sort(key=lambda r: r[0])
    return [r[1:] for r in results]


def sweep_rows(N, ns, deltas, bs, alpha, beta, np=1):
    return run_sweep(grid(N, ns, deltas, bs, alpha, beta), np)
