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
import sys
from fractions import Fraction

from .typed_parser import *
from .exceptions import ParseError
from .dynamics import AffineStep, GeometricStep, ENFORCE, DONT_ENFORCE
from .synthesis import AffineCost

all_sections = ['game', 'repeated', 'short_period', 'sweep', 'dynamics', 'output']

_STEP_RE = re.compile(r'^\s*(affine|geometric)\s*\(([^)]*)\)\s*$')


def create_parser(target_sections=None):
    """
    Create a parser for all program options of egcore
    """
    if target_sections is None:
        parser = TypedParser(all_sections)
    else:
        parser = TypedParser(target_sections)

    # [game]
    parser.add_option("game", "stage", str, "",
                      "Stage game: a .json/.toml file or a builtin such as short-period(N=12,alpha=20000,beta=10000). "
                      "Empty: the game of a builtin automaton, else elvik-stage")
    parser.add_option("game", "tree", str, "elvik-tree-police-first",
                      "Game tree: a .json/.toml file or a builtin")
    parser.add_option("game", "automaton", str, "elvik-automaton-i",
                      "Automaton: a .json/.toml file or a builtin such as punishment-path(N=12,n=2,b=9/25)")
    parser.add_option("game", "mixing_node", str, "",
                      "Node whose mixing probability is scanned by the off-path threshold (induct)")
    parser.add_option("game", "earlier_mover", str, "",
                      "Player whose choice above mixing_node the threshold decides (induct)")

    # [repeated]
    parser.add_option("repeated", "delta", Rational, "9/10", "Discount factor, 0 <= delta < 1")
    parser.add_option("repeated", "depth", int, 0,
                      "Length of the exhaustive deviation search run next to the one-shot test (0: skip)")

    # [short_period]
    parser.add_option("short_period", "N", int, 12, "Number of periods per year")
    parser.add_option("short_period", "n", int, 2, "Length of the punishment path, n < N (any n for N = 1)")
    parser.add_option("short_period", "delta", Rational, "19/20", "Per-period discount factor")
    parser.add_option("short_period", "b", Rational, "9/25", "Speeding probability of the drivers in the mixed state")
    parser.add_option("short_period", "alpha", Rational, 20000, "Police cost of unchecked speeding, alpha(b) = alpha + alpha1 * b")
    parser.add_option("short_period", "alpha1", Rational, 0, "Slope of alpha(b)")
    parser.add_option("short_period", "beta", Rational, 10000, "Police cost of enforcing, beta(b) = beta + beta1 * b")
    parser.add_option("short_period", "beta1", Rational, 0, "Slope of beta(b)")
    parser.add_option("short_period", "eps", Rational, 0, "Tolerance of the compliance test of the automaton")
    parser.add_option("short_period", "subsidy", bool, False,
                      "Add the smallest enforcement subsidy to the punishment states before verifying (synthesize)")

    # [sweep]
    parser.add_option("sweep", "n", IntTuple, "(1, 2, 3)", "Grid of punishment lengths")
    parser.add_option("sweep", "delta", RationalTuple, "(1/2, 9/10, 19/20, 99/100)", "Grid of discount factors")
    parser.add_option("sweep", "b", RationalTuple, "(9/25)", "Grid of speeding probabilities")
    parser.add_option("sweep", "np", int, 1, "Number of worker processes")

    # [dynamics]
    parser.add_option("dynamics", "spec", str, "", "AdaptationSpec document (.json/.toml); overrides the options below")
    parser.add_option("dynamics", "b0", Rational, "4/5", "Initial speeding frequency")
    parser.add_option("dynamics", "down_step", str, "affine(-1/10)",
                      "Update of b while the police enforces: affine(shift) or geometric(factor[,anchor])")
    parser.add_option("dynamics", "up_step", str, "affine(1/10)",
                      "Update of b while the police does not enforce")
    parser.add_option("dynamics", "switch_down", Rational, "1/2", "An enforcing police keeps enforcing iff b > switch_down")
    parser.add_option("dynamics", "switch_up", Rational, None,
                      "A non-enforcing police starts enforcing iff b > switch_up (default: switch_down)")
    parser.add_option("dynamics", "initial_action", str, "", "Police action in the first period, E or DE (default: by switch_up)")
    parser.add_option("dynamics", "horizon", int, 12, "Number of periods")
    parser.add_option("dynamics", "clamp", bool, True, "Clamp b to [0, 1] instead of failing")

    # [output]
    parser.add_option("output", "format", str, "text", "Report format: text, json or csv")
    parser.add_option("output", "output", str, "", "Output file (default: standard output)")
    parser.add_option("output", "expect", str, "",
                      "Expected verdict (SPE, NE_not_SPE or Not_NE); a mismatch gives exit status 1")
    parser.add_option("output", "quiet", bool, False, "Suppress progress messages")

    return parser


def parse_step(text, location='step'):
    """
    'affine(-1/10)' -> AffineStep, 'geometric(1/2)' or 'geometric(1/2,1)' -> GeometricStep
    """
    m = _STEP_RE.match(text)
    if m is None:
        raise ParseError(f"Cannot parse step rule {text!r}; use affine(shift) or geometric(factor[,anchor])", location)
    args = [Rational(x) for x in m.group(2).split(',') if x.strip()]
    if m.group(1) == 'affine':
        if len(args) != 1:
            raise ParseError("affine() takes exactly one argument", location)
        return AffineStep(args[0])
    if len(args) not in (1, 2):
        raise ParseError("geometric() takes one or two arguments", location)
    return GeometricStep(*args)


def cost_of(params, name):
    """ alpha or beta of [short_period] as a number or an AffineCost """
    slope = params['short_period'][name + '1']
    if slope == 0:
        return params['short_period'][name]
    return AffineCost(params['short_period'][name], slope)


def parse_parameters(params):
    """
    Check cross-option constraints and convert compound options.
    Raises ParseError on the first violation.
    """
    if 'repeated' in params:
        if not 0 <= params['repeated']['delta'] < 1:
            raise ParseError(f"[repeated] delta={params['repeated']['delta']} must satisfy 0 <= delta < 1.")
        if params['repeated']['depth'] < 0:
            raise ParseError(f"[repeated] depth={params['repeated']['depth']} must be non-negative.")

    if 'short_period' in params:
        sp = params['short_period']
        if sp['N'] < 1 or sp['n'] < 1:
            raise ParseError(f"N={sp['N']} and n={sp['n']} must be positive.")
        if sp['N'] >= 2 and sp['n'] >= sp['N']:
            raise ParseError(f"Punishment length n={sp['n']} must be smaller than N={sp['N']}.")
        if not 0 <= sp['delta'] < 1:
            raise ParseError(f"[short_period] delta={sp['delta']} must satisfy 0 <= delta < 1.")

    if 'sweep' in params:
        sw = params['sweep']
        for key in ['n', 'delta', 'b']:
            if len(sw[key]) == 0:
                raise ParseError(f"[sweep] {key} must not be empty.")
        if sw['np'] < 1:
            raise ParseError(f"[sweep] np={sw['np']} must be positive.")
        if 'short_period' in params and params['short_period']['N'] >= 2:
            N = params['short_period']['N']
            if max(sw['n'].to_tuple()) >= N:
                raise ParseError(f"[sweep] n={sw['n']} must stay below N={N}.")

    if 'dynamics' in params:
        dyn = params['dynamics']
        for key in ['down_step', 'up_step']:
            if isinstance(dyn[key], str):
                dyn[key] = parse_step(dyn[key], f"[dynamics] {key}")
        if dyn['initial_action'] not in ('', ENFORCE, DONT_ENFORCE):
            raise ParseError(f"[dynamics] initial_action={dyn['initial_action']!r} must be {ENFORCE} or {DONT_ENFORCE}.")
        if dyn['horizon'] <= 0:
            raise ParseError(f"[dynamics] horizon={dyn['horizon']} must be positive.")

    if 'output' in params:
        out = params['output']
        if out['format'] not in ('text', 'json', 'csv'):
            raise ParseError(f"Unknown format {out['format']!r}. Use text, json or csv.")
        if out['expect'] not in ('', 'SPE', 'NE_not_SPE', 'Not_NE'):
            raise ParseError(f"Unknown expected verdict {out['expect']!r}. Use SPE, NE_not_SPE or Not_NE.")


def _readable(v):
    if isinstance(v, Fraction):
        return str(v)
    return repr(v)


def print_parameters(p, file=None):
    """
    Print parameters
    """
    assert isinstance(p, dict)
    if file is None:
        file = sys.stderr

    print("\n==========================================================", file=file)
    print("Parameter summary\n", file=file)
    for block, params in p.items():
        print(f"  [{block}]", file=file)
        for k, v in params.items():
            print(f"    {k} = {_readable(v)}", file=file)
        print("", file=file)
    print("End of parameter summary", file=file)
    print("==========================================================", file=file)
