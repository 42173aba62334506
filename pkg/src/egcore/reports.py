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
Text, JSON and CSV renderings of analysis results.

Every rational appears exactly and with a 6-significant-digit decimal.
CSV output is comma separated with a header row and LF line endings.
"""

import csv
from io import StringIO
from collections import namedtuple, OrderedDict
from fractions import Fraction

from .exceptions import InvalidParams
from .tools import format_rational, format_exact, rational_pair
from .game_core import pure_nash, mixed_nash_2x2, is_degenerate
from .extensive_form import backward_induction, check_nash_sequential, off_path_threshold, format_tree
from .repeated_automaton import COMPLY
from .serialization import dumps_json

THRESHOLD_COLUMNS = ['n', 'delta_num', 'delta_den', 'driver_bound', 'police_bound', 'feasible',
                     'gamma_bruteforce', 'gamma_paper_form', 'b_num', 'b_den']
TRAJECTORY_COLUMNS = ['t', 'action', 'b_num', 'b_den']


def _num(x):
    """ JSON form of a rational """
    x = Fraction(x)
    return OrderedDict([('exact', format_exact(x)), ('decimal', float(f"{float(x):.6g}"))])


def _opt_num(x):
    return None if x is None else _num(x)


def _strategy_text(strategy):
    return ', '.join(f"{a} {format_exact(p)}" for a, p in strategy.probs.items())


class Report(object):
    """
    Result of one command. `data` is the JSON document, `lines` the text
    rendering and `table` an optional (columns, rows) pair for CSV.
    """
    def __init__(self, kind, data, lines, table=None):
        self.kind = kind
        self.data = data
        self.lines = list(lines)
        self.table = table

    def render(self, fmt):
        if fmt == 'json':
            return dumps_json(self.data)
        if fmt == 'csv':
            if self.table is None:
                raise InvalidParams(f"No CSV rendering for the {self.kind} report")
            return to_csv(*self.table)
        return '\n'.join(self.lines) + '\n'


def to_csv(columns, rows):
    buf = StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction='ignore', lineterminator='\n')
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# Stage games

def stage_report(game):
    pure = pure_nash(game)
    mixed = []
    degenerate = None
    if tuple(len(a) for a in game.actions) == (2, 2):
        mixed = [eq for eq in mixed_nash_2x2(game) if not (eq[0].is_pure() and eq[1].is_pure())]
        degenerate = is_degenerate(game)

    data = OrderedDict([
        ('players', list(game.players)),
        ('pure_nash', [list(p) for p in pure]),
        ('mixed_nash', [OrderedDict((s.owner, OrderedDict((a, _num(p)) for a, p in s.probs.items()))
                                    for s in eq) for eq in mixed]),
        ('degenerate', degenerate),
    ])

    lines = [f"players: {', '.join(game.players)}"]
    lines.append("pure NE: " + ('none' if not pure else '; '.join(f"({a1}, {a2})" for a1, a2 in pure)))
    if mixed:
        for eq in mixed:
            lines.append("mixed NE: " + '; '.join(f"{s.owner} ({_strategy_text(s)})" for s in eq))
    elif degenerate is None:
        lines.append("mixed NE: not enumerated (game is not 2x2)")
    else:
        lines.append("mixed NE: none")
    if degenerate:
        lines.append("note: degenerate game, segments of equilibria are listed by their endpoints")
    return Report('stage', data, lines)


# Game trees

def tree_report(tree, mixing_node=None, earlier_mover=None):
    bi = backward_induction(tree)
    check = check_nash_sequential(tree, bi.profile)
    data = OrderedDict([
        ('players', list(tree.players)),
        ('profile', OrderedDict(sorted(bi.profile.choices.items()))),
        ('path', [[s.node, s.player, s.action] for s in bi.path]),
        ('payoffs', [_num(v) for v in bi.payoffs]),
        ('ties', [[t.node, list(t.actions)] for t in bi.ties]),
        ('is_spe', check.is_spe),
    ])
    lines = ["path: " + ' -> '.join(f"{s.player}:{s.action}" for s in bi.path)]
    lines.append("payoffs: " + ', '.join(f"{p} {format_rational(v)}" for p, v in zip(tree.players, bi.payoffs)))
    lines.append("profile: " + ', '.join(f"{n}={a}" for n, a in sorted(bi.profile.choices.items())))
    for t in bi.ties:
        lines.append(f"tie at {t.node}: {', '.join(t.actions)} (chose {t.actions[0]})")
    lines.append("tree:")
    lines.extend("  " + line for line in format_tree(tree, bi.profile).splitlines())

    if mixing_node:
        th = off_path_threshold(tree, mixing_node, earlier_mover)
        data['threshold'] = OrderedDict([
            ('node', th.node), ('mixer', th.mixer), ('action', th.action),
            ('decision_node', th.decision_node), ('earlier_mover', th.earlier_mover),
            ('pivot', _opt_num(th.pivot)), ('above', th.above), ('below', th.below),
            ('always_indifferent', th.always_indifferent)])
        if th.pivot is None:
            lines.append(f"threshold: {th.earlier_mover} does not react to the mixing at {th.node}"
                         + (f" (always {th.above})" if th.above else " (always indifferent)"))
        else:
            lines.append(f"threshold: {th.mixer} playing {th.action} at {th.node} with probability "
                         f"{format_rational(th.pivot)}; above: {th.earlier_mover} plays {th.above}, "
                         f"below: {th.below}")
    return Report('tree', data, lines)


# Repeated games

def verdict_report(verdict, automaton, delta, plans=None):
    data = OrderedDict([
        ('automaton', automaton.name),
        ('delta', _num(delta)),
        ('classification', verdict.classification.value),
        ('witnesses', [OrderedDict([('player', w.player), ('state', w.state), ('action', w.action),
                                    ('gain', _num(w.gain)), ('on_path', w.on_path)])
                       for w in verdict.witnesses]),
        ('deviation_gains', OrderedDict((p, _num(g)) for p, g in verdict.deviation_gains.items())),
        ('values', [OrderedDict([('player', p), ('state', s), ('value', _num(v))])
                    for (p, s), v in verdict.values.items()]),
    ])
    head = verdict.classification.value
    if verdict.witnesses:
        w = verdict.witnesses[0]
        head += f"; witness {w.player}@{w.state}->{w.action}"
    lines = [head, f"delta: {format_rational(delta)}"]
    for w in verdict.witnesses:
        where = 'on path' if w.on_path else 'off path'
        lines.append(f"  {w.player} at {w.state} ({where}) plays {w.action}: gain {format_rational(w.gain)}")
    for p, g in verdict.deviation_gains.items():
        lines.append(f"  best deviation gain of {p} from {automaton.initial}: {format_rational(g)}")
    for (p, s), v in verdict.values.items():
        lines.append(f"  V[{p}, {s}] = {format_rational(v)}")

    if plans is not None:
        data['deviation_plans'] = [OrderedDict([('player', d.player), ('start', d.start),
                                                ('plan', list(d.plan)), ('gain', _num(d.gain))])
                                   for d in plans]
        lines.append(f"profitable deviation plans: {len(plans)}")
        for d in plans[:10]:
            plan = ' '.join('comply' if a == COMPLY else a for a in d.plan)
            lines.append(f"  {d.player} from {d.start}: {plan} (gain {format_rational(d.gain)})")
    return Report('verdict', data, lines)


# Short-period game

def threshold_row(report, b=None, subsidy=None):
    """ One CSV row; gamma columns stay empty without a subsidy result """
    row = OrderedDict([
        ('n', report.n),
        ('delta_num', report.delta.numerator),
        ('delta_den', report.delta.denominator),
        ('driver_bound', format_exact(report.driver_lower_bound)),
        ('police_bound', format_exact(report.police_upper_bound)),
        ('feasible', 'true' if report.feasible_interval is not None else 'false'),
        ('gamma_bruteforce', '' if subsidy is None else format_exact(subsidy.gamma)),
        ('gamma_paper_form', '' if subsidy is None else format_exact(subsidy.gamma_paper_form)),
        ('b_num', '' if b is None else Fraction(b).numerator),
        ('b_den', '' if b is None else Fraction(b).denominator),
    ])
    return row


def _threshold_dict(report):
    return OrderedDict([
        ('n', report.n),
        ('delta', _num(report.delta)),
        ('driver_lower_bound', _num(report.driver_lower_bound)),
        ('police_upper_bound', _num(report.police_upper_bound)),
        ('feasible_interval', None if report.feasible_interval is None
            else [_num(x) for x in report.feasible_interval]),
        ('limit_at_delta_1', _num(report.limit_at_delta_1)),
    ])


def threshold_lines(report):
    lines = [f"n = {report.n}, delta = {format_rational(report.delta)}",
             f"  driver lower bound: b > {format_rational(report.driver_lower_bound)}",
             f"  police upper bound: b < {format_rational(report.police_upper_bound)}"]
    if report.feasible_interval is None:
        lines.append("  feasible interval: empty")
    else:
        lo, hi = report.feasible_interval
        lines.append(f"  feasible interval: ({format_rational(lo)}, {format_rational(hi)})")
    lines.append(f"  limit as delta -> 1: {format_rational(report.limit_at_delta_1)}")
    return lines


def threshold_report_view(report, b=None):
    data = _threshold_dict(report)
    lines = threshold_lines(report)
    if b is not None:
        data['b'] = _num(b)
        inside = report.feasible_interval is not None and report.feasible_interval[0] < b < report.feasible_interval[1]
        data['b_feasible'] = inside
        lines.append(f"  b = {format_rational(b)} is {'inside' if inside else 'outside'} the feasible interval")
    return Report('thresholds', data, lines, (THRESHOLD_COLUMNS, [threshold_row(report, b)]))


def subsidy_view(result, params):
    data = OrderedDict([
        ('n', params.n),
        ('delta', _num(params.delta)),
        ('b', _num(params.b)),
        ('per_period', _num(result.per_period)),
        ('gamma', _num(result.gamma)),
        ('binding_m', result.binding_m),
        ('per_m', [OrderedDict([('m', m), ('x', _num(x))]) for m, x in result.per_m]),
        ('gamma_paper_form', _num(result.gamma_paper_form)),
        ('discrepancy', result.discrepancy),
    ])
    lines = [f"per-period subsidy x*: {format_rational(result.per_period)} (binding at m = {result.binding_m})",
             f"total subsidy gamma = n x*: {format_rational(result.gamma)}"]
    for m, x in result.per_m:
        lines.append(f"  m = {m}: x >= {format_rational(x)}")
    flag = '  [differs]' if result.discrepancy else ''
    lines.append(f"published closed form: {format_rational(result.gamma_paper_form)}{flag}")
    row = OrderedDict([('n', params.n), ('delta_num', params.delta.numerator),
                       ('delta_den', params.delta.denominator),
                       ('gamma_bruteforce', format_exact(result.gamma)),
                       ('gamma_paper_form', format_exact(result.gamma_paper_form)),
                       ('b_num', params.b.numerator), ('b_den', params.b.denominator)])
    return Report('subsidy', data, lines, (THRESHOLD_COLUMNS, [row]))


def sweep_view(rows):
    """
    :param rows: list of (ThresholdReport, b, SubsidyResult or None) in grid order
    """
    data = [OrderedDict(list(_threshold_dict(r).items()) + [
        ('b', _num(b)),
        ('gamma_bruteforce', _opt_num(None if s is None else s.gamma)),
        ('gamma_paper_form', _opt_num(None if s is None else s.gamma_paper_form))]) for r, b, s in rows]
    lines = []
    for r, b, s in rows:
        feasible = 'feasible' if r.feasible_interval is not None else 'empty'
        gamma = '' if s is None else f", gamma {format_rational(s.gamma)}"
        lines.append(f"n={r.n} delta={format_rational(r.delta)} b={format_rational(b)}: "
                     f"({format_rational(r.driver_lower_bound)}, {format_rational(r.police_upper_bound)}) "
                     f"{feasible}{gamma}")
    return Report('sweep', data, lines, (THRESHOLD_COLUMNS, [threshold_row(r, b, s) for r, b, s in rows]))


# Dynamics

def trajectory_view(traj):
    rows = [OrderedDict([('t', r.t), ('action', r.action), ('b_num', r.b.numerator), ('b_den', r.b.denominator)])
            for r in traj.records]
    data = OrderedDict([
        ('records', [OrderedDict([('t', r.t), ('action', r.action), ('b', rational_pair(r.b)),
                                  ('clamped', r.clamped)]) for r in traj.records]),
        ('cycles', [OrderedDict([('period', period), ('phase', phase)]) for period, phase in traj.cycles]),
    ])
    lines = [f"{r.t:4d}  {r.action:<2}  {format_rational(r.b)}{'  (clamped)' if r.clamped else ''}"
             for r in traj.records]
    if traj.cycles:
        for period, phase in traj.cycles:
            lines.append(f"cycle of period {period}: {phase}")
    else:
        lines.append("no cycle within the horizon")
    return Report('trajectory', data, lines, (TRAJECTORY_COLUMNS, rows))


# Known differences between published values and exact evaluation

Discrepancy = namedtuple('Discrepancy', ('key', 'quantity', 'published', 'exact', 'note'))


def known_discrepancies():
    """
    Published values of the enforcement game that exact evaluation does not reproduce.
    Exact values are recomputed here.
    """
    from .models import create_builtin
    from .synthesis import (threshold_limit, subsidy_lower_bound, ShortPeriodParams,
                            build_punishment_automaton)
    from .repeated_automaton import verify

    tree = create_builtin('elvik-tree-drivers-first').create()
    pivot = off_path_threshold(tree, 'R', 'Drivers', 'E').pivot
    example = ShortPeriodParams(12, 2, Fraction(9, 10), Fraction(2, 5), 125, 100)
    subsidy = subsidy_lower_bound(example)
    harsh = ShortPeriodParams(12, 2, Fraction(19, 20), Fraction(9, 25), 40000, 10000)
    verdict = verify(build_punishment_automaton(harsh), harsh.game(), harsh.delta)

    return [
        Discrepancy('drivers-first-pivot',
                    'enforcement probability at the off-path node leaving the drivers indifferent',
                    '1/4', format_exact(pivot), '-300 p + 50 (1 - p) = -50 gives p = 2/7'),
        Discrepancy('threshold-limit-n3', 'limit of the driver bound for n = 3 as delta -> 1',
                    '0.20', format_exact(threshold_limit(3)), 'the limit is 1/(n + 1)'),
        Discrepancy('punishment-edge-exponent', 'driver bound printed on the punishment-path diagram',
                    '(1 - delta)/(1 - delta^n)', '(1 - delta)/(1 - delta^(n+1))',
                    'the derivation in the text gives the exponent n + 1'),
        Discrepancy('subsidy-closed-form', 'total subsidy for n = 2, delta = 9/10, beta = 100, alpha b = 50',
                    format_exact(subsidy.gamma_paper_form), format_exact(subsidy.gamma),
                    'closed form is negative near delta = 1; the per-state constraints are used'),
        Discrepancy('subsidy-binding-state', 'punishment state with the binding subsidy constraint',
                    'm = 1', f"m = {subsidy.binding_m}",
                    'the shortest remaining punishment needs the largest top-up'),
        Discrepancy('punishment-path-alpha-4beta', 'verdict of the punishment path with n = 2, delta = 19/20, '
                    'b = 9/25, alpha = 4 beta', 'NE_not_SPE', verdict.classification.value,
                    'b exceeds beta/alpha = 1/4, so the police deviates in the initial state'),
    ]


def discrepancy_view(records):
    data = [OrderedDict(d._asdict()) for d in records]
    lines = [f"{d.key}: published {d.published}, exact {d.exact} ({d.note})" for d in records]
    return Report('discrepancies', data, lines)
