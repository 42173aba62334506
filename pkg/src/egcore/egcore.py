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

import os
import sys
from collections import OrderedDict

from .program_options import create_parser, parse_parameters, print_parameters, cost_of
from .exceptions import EgcoreError, InvalidSpec, InfeasibleSynthesis
from .models import create_builtin, builtin_games
from .serialization import (load_document, game_from_dict, tree_from_dict, automaton_from_dict,
                            adaptation_from_dict, game_to_dict, tree_to_dict, automaton_to_dict, dumps_json)
from .tools import format_rational
from .repeated_automaton import verify, exhaustive_deviation_search
from .synthesis import (ShortPeriodParams, threshold_report, subsidy_lower_bound, build_punishment_automaton,
                        apply_subsidy)
from .dynamics import AdaptationSpec, simulate
from .sweep import sweep_rows
from . import reports
from .version import print_header

EXIT_OK = 0
EXIT_EXPECT = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3

command_sections = OrderedDict([
    ('analyze-stage', ['game', 'output']),
    ('induct', ['game', 'output']),
    ('verify', ['game', 'repeated', 'output']),
    ('synthesize', ['short_period', 'output']),
    ('thresholds', ['short_period', 'output']),
    ('subsidy', ['short_period', 'output']),
    ('simulate', ['dynamics', 'output']),
    ('sweep', ['short_period', 'sweep', 'output']),
    ('catalog', ['output']),
])


def _progress(params, message):
    if not params['output']['quiet']:
        print(message, file=sys.stderr)


def _is_file(ref):
    return ref.endswith(('.json', '.toml')) or os.path.exists(ref)


def _load(ref, kind, params):
    """
    Read a document or instantiate a builtin.

    :return: (object, stage game carried by the input or None)
    """
    if _is_file(ref):
        _progress(params, f"  @ Reading {ref} ...")
        doc = load_document(ref)
        if kind == 'game':
            return game_from_dict(doc, ref), None
        if kind == 'tree':
            return tree_from_dict(doc, ref), None
        game = game_from_dict(doc['game'], f"{ref}: game") if 'game' in doc else None
        return automaton_from_dict(doc, ref), game
    model = create_builtin(ref)
    if model.kind() != kind:
        raise InvalidSpec(f"Builtin {model.name()!r} is a {model.kind()}, not a {kind}")
    return model.create(), model.game()


def _check_expect(params, verdict):
    expected = params['output']['expect']
    if expected and expected != verdict.classification.value:
        print(f"ERROR: expected {expected}, got {verdict.classification.value}", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_OK


def _short_period_params(params):
    sp = params['short_period']
    return ShortPeriodParams(sp['N'], sp['n'], sp['delta'], sp['b'],
                             cost_of(params, 'alpha'), cost_of(params, 'beta'))


def egcore_analyze_stage(params):
    game, _ = _load(params['game']['stage'] or 'elvik-stage', 'game', params)
    return reports.stage_report(game), EXIT_OK


def egcore_induct(params):
    tree, _ = _load(params['game']['tree'], 'tree', params)
    mixing_node = params['game']['mixing_node'] or None
    earlier_mover = params['game']['earlier_mover'] or None
    if (mixing_node is None) != (earlier_mover is None):
        raise InvalidSpec("mixing_node and earlier_mover must be given together")
    return reports.tree_report(tree, mixing_node, earlier_mover), EXIT_OK


def egcore_verify(params):
    automaton, carried = _load(params['game']['automaton'], 'automaton', params)
    if params['game']['stage']:
        game, _ = _load(params['game']['stage'], 'game', params)
    elif carried is not None:
        game = carried
    else:
        game, _ = _load('elvik-stage', 'game', params)
    delta = params['repeated']['delta']
    _progress(params, f"  @ Verifying {automaton.name or params['game']['automaton']} at delta = {delta} ...")
    verdict = verify(automaton, game, delta)
    plans = None
    if params['repeated']['depth'] > 0:
        plans = exhaustive_deviation_search(automaton, game, delta, params['repeated']['depth'], verdict.values)
    return reports.verdict_report(verdict, automaton, delta, plans), _check_expect(params, verdict)


def egcore_synthesize(params):
    sp = _short_period_params(params)
    th = threshold_report(sp.n, sp.delta, sp.alpha, sp.beta)
    lo, hi = th.driver_lower_bound, th.police_upper_bound
    if not lo < sp.b < hi:
        raise InfeasibleSynthesis(f"b = {sp.b} is outside ({lo}, {hi})", lo, hi)

    automaton = build_punishment_automaton(sp, params['short_period']['eps'])
    if params['short_period']['subsidy']:
        automaton = apply_subsidy(automaton, sp, subsidy_lower_bound(sp).per_period)
    verdict = verify(automaton, sp.game(), sp.delta)

    report = reports.verdict_report(verdict, automaton, sp.delta)
    report.data['thresholds'] = reports.threshold_report_view(th, sp.b).data
    report.data['automaton_document'] = automaton_to_dict(automaton)
    report.data['game'] = game_to_dict(sp.game())
    report.lines = reports.threshold_lines(th) + report.lines
    return report, _check_expect(params, verdict)


def egcore_thresholds(params):
    sp = _short_period_params(params)
    th = threshold_report(sp.n, sp.delta, sp.alpha, sp.beta)
    return reports.threshold_report_view(th, sp.b), EXIT_OK


def egcore_subsidy(params):
    sp = _short_period_params(params)
    return reports.subsidy_view(subsidy_lower_bound(sp), sp), EXIT_OK


def egcore_simulate(params):
    dyn = params['dynamics']
    if dyn['spec']:
        _progress(params, f"  @ Reading {dyn['spec']} ...")
        spec = adaptation_from_dict(load_document(dyn['spec']), dyn['spec'])
    else:
        spec = AdaptationSpec(dyn['b0'], dyn['down_step'], dyn['up_step'], dyn['horizon'],
                              switch_down=dyn['switch_down'], switch_up=dyn['switch_up'],
                              initial_action=dyn['initial_action'] or None, clamp=dyn['clamp'])
    return reports.trajectory_view(simulate(spec)), EXIT_OK


def egcore_sweep(params):
    sw = params['sweep']
    points = len(sw['n']) * len(sw['delta']) * len(sw['b'])
    _progress(params, f"  @ Sweeping {points} grid points with {sw['np']} process(es) ...")
    rows = sweep_rows(params['short_period']['N'], sw['n'].to_tuple(), sw['delta'].to_tuple(),
                      sw['b'].to_tuple(), cost_of(params, 'alpha'), cost_of(params, 'beta'), sw['np'])
    return reports.sweep_view(rows), EXIT_OK


def egcore_catalog(params, name=None, notes=False):
    if notes:
        return reports.discrepancy_view(reports.known_discrepancies()), EXIT_OK
    if name is not None:
        model = create_builtin(name)
        obj = model.create()
        if model.kind() == 'game':
            doc = game_to_dict(obj)
        elif model.kind() == 'tree':
            doc = tree_to_dict(obj)
        else:
            doc = automaton_to_dict(obj)
            if model.game() is not None:
                doc['game'] = game_to_dict(model.game())
        return reports.Report('document', doc, dumps_json(doc).splitlines()), EXIT_OK

    data = OrderedDict()
    lines = []
    for key, cls in builtin_games().items():
        data[key] = OrderedDict([('kind', cls.kind()), ('parameters', list(cls.parameters)),
                                 ('description', cls.description())])
        args = f"({', '.join(cls.parameters)})" if cls.parameters else ''
        lines.append(f"{key}{args} [{cls.kind()}]: {cls.description()}")
    return reports.Report('catalog', data, lines), EXIT_OK


def _write(params, text):
    path = params['output']['output']
    if path:
        with open(path, 'w', newline='') as f:
            f.write(text)
        _progress(params, f"  @ Wrote {path}")
    else:
        sys.stdout.write(text)


def _add_common(p):
    p.add_argument('--ini', default=None, type=str, help='Input file (ini format) with default options')
    p.add_argument('--format', dest='output.format', default=None, choices=['text', 'json', 'csv'],
                   help='Report format')
    p.add_argument('--output', dest='output.output', default=None, help='Output file')
    p.add_argument('--expect', dest='output.expect', default=None,
                   choices=['SPE', 'NE_not_SPE', 'Not_NE'], help='Expected verdict; exit status 1 on mismatch')
    p.add_argument('--quiet', dest='output.quiet', default=None, action='store_true',
                   help='Suppress progress messages')


def _add_short_period(p, with_N=True):
    if with_N:
        p.add_argument('--N', dest='short_period.N', default=None, type=int, help='Periods per year')
    p.add_argument('--n', dest='short_period.n', default=None, type=int, help='Punishment length')
    p.add_argument('--delta', dest='short_period.delta', default=None, help='Per-period discount factor (p/q)')
    p.add_argument('--b', dest='short_period.b', default=None, help='Speeding probability (p/q)')
    p.add_argument('--alpha', dest='short_period.alpha', default=None, help='Police cost alpha (p/q)')
    p.add_argument('--beta', dest='short_period.beta', default=None, help='Police cost beta (p/q)')


def build_argument_parser():
    import argparse
    from .option_tables import generate_all_description
    from .version import version

    parser = argparse.ArgumentParser(
        prog='egcore',
        description='Exact equilibrium analysis of the police/drivers enforcement game',
        add_help=True,
        formatter_class=argparse.RawTextHelpFormatter,
        epilog=generate_all_description()
    )
    parser.add_argument('--version', action='version', version='egcore {}'.format(version))
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('analyze-stage', help='Pure and mixed Nash equilibria of a stage game')
    p.add_argument('--game', dest='game.stage', default=None, help='Stage game file or builtin')
    _add_common(p)

    p = sub.add_parser('induct', help='Backward induction and off-path thresholds of a game tree')
    p.add_argument('--tree', dest='game.tree', default=None, help='Game tree file or builtin')
    p.add_argument('--mixing-node', dest='game.mixing_node', default=None, help='Node whose mixing is scanned')
    p.add_argument('--earlier-mover', dest='game.earlier_mover', default=None, help='Player reacting to the mixing')
    _add_common(p)

    p = sub.add_parser('verify', help='Classify an automaton profile: SPE, NE_not_SPE or Not_NE')
    p.add_argument('--game', dest='game.stage', default=None, help='Stage game file or builtin')
    p.add_argument('--automaton', dest='game.automaton', default=None, help='Automaton file or builtin')
    p.add_argument('--delta', dest='repeated.delta', default=None, help='Discount factor (p/q)')
    p.add_argument('--depth', dest='repeated.depth', default=None, type=int,
                   help='Also search deviation plans up to this length')
    _add_common(p)

    p = sub.add_parser('synthesize', help='Build and verify the punishment-path automaton')
    _add_short_period(p)
    p.add_argument('--eps', dest='short_period.eps', default=None, help='Compliance tolerance (p/q)')
    p.add_argument('--subsidy', dest='short_period.subsidy', default=None, action='store_true',
                   help='Add the smallest enforcement subsidy')
    _add_common(p)

    p = sub.add_parser('thresholds', help='Driver and police bounds on the speeding probability')
    _add_short_period(p)
    _add_common(p)

    p = sub.add_parser('subsidy', help='Smallest subsidy making enforcement on the punishment path credible')
    _add_short_period(p)
    _add_common(p)

    p = sub.add_parser('simulate', help='Alternating enforcement dynamics')
    p.add_argument('--spec', dest='dynamics.spec', default=None, help='AdaptationSpec file (.json/.toml)')
    p.add_argument('--b0', dest='dynamics.b0', default=None, help='Initial speeding frequency (p/q)')
    p.add_argument('--down-step', dest='dynamics.down_step', default=None, help='e.g. affine(-1/10)')
    p.add_argument('--up-step', dest='dynamics.up_step', default=None, help='e.g. affine(1/10)')
    p.add_argument('--switch-down', dest='dynamics.switch_down', default=None, help='p/q')
    p.add_argument('--switch-up', dest='dynamics.switch_up', default=None, help='p/q')
    p.add_argument('--initial-action', dest='dynamics.initial_action', default=None, choices=['E', 'DE'])
    p.add_argument('--horizon', dest='dynamics.horizon', default=None, type=int, help='Number of periods')
    p.add_argument('--no-clamp', dest='dynamics.clamp', default=None, action='store_false',
                   help='Fail instead of clamping b to [0, 1]')
    _add_common(p)

    p = sub.add_parser('sweep', help='Thresholds and subsidies over a grid of (n, delta, b)')
    p.add_argument('--ns', dest='sweep.n', default=None, help='e.g. 1,2,3')
    p.add_argument('--deltas', dest='sweep.delta', default=None, help='e.g. 1/2,9/10')
    p.add_argument('--bs', dest='sweep.b', default=None, help='e.g. 9/25,2/5')
    p.add_argument('--np', dest='sweep.np', default=None, type=int, help='Number of worker processes')
    p.add_argument('--N', dest='short_period.N', default=None, type=int, help='Periods per year')
    p.add_argument('--alpha', dest='short_period.alpha', default=None, help='Police cost alpha (p/q)')
    p.add_argument('--beta', dest='short_period.beta', default=None, help='Police cost beta (p/q)')
    _add_common(p)

    p = sub.add_parser('catalog', help='List builtin inputs, or dump one as JSON')
    p.add_argument('name', nargs='?', default=None, help='Builtin reference, e.g. punishment-path(N=12,n=2,b=9/25)')
    p.add_argument('--notes', action='store_true', help='List published values that exact evaluation corrects')
    _add_common(p)
    return parser


def egcore(command, args):
    """
    Run one command.

    :param command: sub-command name
    :param args: dict of parsed command-line arguments ('section.option' keys override the ini file)
    :return: exit status
    """
    pars = create_parser(command_sections[command])
    if args.get('ini'):
        pars.read(args['ini'])
    for key, value in args.items():
        if '.' in key and value is not None:
            section, option = key.split('.', 1)
            pars.set(section, option, value)
    params = pars.as_dict()
    parse_parameters(params)

    if not params['output']['quiet']:
        print_header(file=sys.stderr)
        print_parameters(params)

    if command == 'catalog':
        report, status = egcore_catalog(params, args.get('name'), args.get('notes', False))
    else:
        report, status = globals()['egcore_' + command.replace('-', '_')](params)
    _write(params, report.render(params['output']['format']))
    return status


def main(argv=None):
    args = vars(build_argument_parser().parse_args(argv))
    command = args.pop('command')

    try:
        return egcore(command, args)
    except InfeasibleSynthesis as e:
        print(f"ERROR: infeasible: {e}", file=sys.stderr)
        print(f"  driver lower bound: {format_rational(e.driver_bound)}", file=sys.stderr)
        print(f"  police upper bound: {format_rational(e.police_bound)}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EgcoreError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_PARSE


def run():
    sys.exit(main())
