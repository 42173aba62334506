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

import pytest

from egcore.repeated_automaton import *
from egcore.game_core import ActionProfile, MixedStrategy, scale_game
from egcore.exceptions import InvalidAutomaton, InvalidParams, InvalidDiscount
from egcore.models import create_builtin, elvik_stage_game
from egcore.synthesis import (ShortPeriodParams, build_punishment_automaton, subsidy_lower_bound, apply_subsidy,
                              driver_threshold)
from egcore._testing import rng, random_instance, random_game, random_positive_rational


def _automaton_i():
    return create_builtin('elvik-automaton-i').create()


def _punishment(N=12, n=2, delta=Fraction(19, 20), b=Fraction(9, 25), alpha=20000, beta=10000):
    params = ShortPeriodParams(N, n, delta, b, alpha, beta)
    return params, build_punishment_automaton(params), params.game()


DELTA_GRID = [Fraction(k, 10) for k in range(10)] + [Fraction(99, 100)]


@pytest.mark.parametrize("delta", DELTA_GRID)
def test_automaton_i_is_not_nash(delta):
    verdict = verify(_automaton_i(), elvik_stage_game(), delta)
    assert verdict.classification == Classification.NOT_NE
    assert not verdict.is_nash
    first = verdict.witnesses[0]
    assert (first.player, first.state, first.action) == ('Drivers', 'DE,DS', 'S')
    assert first.on_path
    assert first.gain == (1 - delta) * 100
    assert ('Police', 'E,DS', 'DE') in verdict.witness_keys()


def test_one_shot_payoff():
    delta = Fraction(9, 10)
    game = elvik_stage_game()
    g = one_shot_payoff(_automaton_i(), 'DE,DS', ActionProfile('DE', 'S'), game, delta, 'Drivers')
    assert g == (1 - delta) * 50 + delta * (-50)


def test_state_values_punishment_path():
    _, automaton, game = _punishment(delta=Fraction(9, 10), b=Fraction(1, 5))
    values = solve_state_values(automaton, game, Fraction(9, 10))
    assert values.value('Drivers', 'p1') == Fraction(1, 12) * (Fraction(81, 5) - 50)
    assert values.value('Drivers', 'ms') == Fraction(-30, 12)
    assert values.value('Police', 'ms') == -4000


def test_drivers_deviation_annual_game():
    _, automaton, game = _punishment(N=1, n=2, delta=Fraction(9, 10), b=Fraction(2, 5))
    g = one_shot_payoff(automaton, 'ms', ActionProfile('DE', 'S'), game, Fraction(9, 10), 'Drivers')
    assert g == Fraction(-271, 25)


def test_punishment_path_nash_not_spe():
    _, automaton, game = _punishment()
    verdict = verify(automaton, game, Fraction(19, 20))
    assert verdict.classification == Classification.NE_NOT_SPE
    assert verdict.witness_keys() == {('Police', 'p1', 'DE'), ('Police', 'p2', 'DE')}
    assert all(not w.on_path for w in verdict.witnesses)
    assert all(g == 0 for g in verdict.deviation_gains.values())


def test_punishment_path_police_prefers_enforcing():
    _, automaton, game = _punishment(alpha=40000)
    verdict = verify(automaton, game, Fraction(19, 20))
    assert verdict.classification == Classification.NOT_NE
    assert ('Police', 'ms', 'E') in verdict.witness_keys()


def test_subsidy_makes_punishment_credible():
    params, automaton, game = _punishment()
    subsidy = subsidy_lower_bound(params)
    verdict = verify(apply_subsidy(automaton, params, subsidy.per_period), game, params.delta)
    assert verdict.is_spe
    assert verdict.witnesses == []


def test_automaton_ii_drivers_speed():
    model = create_builtin('elvik-automaton-ii(b=2/5)')
    verdict = verify(model.create(), model.game(), Fraction(9, 10))
    assert not verdict.is_nash
    assert ('Drivers', 'ms', 'S') in verdict.witness_keys()


def test_best_response_values_match_compliance_for_spe():
    params, automaton, game = _punishment()
    subsidized = apply_subsidy(automaton, params, subsidy_lower_bound(params).per_period)
    values = solve_state_values(subsidized, game, params.delta)
    for player in game.players:
        br, policy = best_response_values(subsidized, game, params.delta, player)
        for s in subsidized.states:
            assert br[s] == values.value(player, s)


def test_on_path_states():
    _, automaton, _ = _punishment()
    assert automaton.on_path_states() == ['ms']
    assert automaton.compliant_successor('p1') == 'p2'
    assert automaton.compliant_successor('p2') == 'ms'


def test_transition_lookup():
    _, automaton, _ = _punishment()
    police = automaton.signal_for('ms', {'Police': 'E', 'Drivers': automaton.prescription('ms', 'Drivers')})
    assert police.key == 'deviated:Police:E'
    assert automaton.next_state('ms', police) == 'ms'
    joint = automaton.signal_for('ms', {'Police': 'E', 'Drivers': 'S'})
    assert joint.tag == JOINT
    assert automaton.next_state('ms', joint) == 'p1'
    assert automaton.next_state('p1', ComplianceSignal.deviated('Drivers', 'S')) == 'p1'


def test_invalid_automata():
    output = {'a': {'Police': 'E', 'Drivers': 'S'}}
    with pytest.raises(InvalidAutomaton):
        Automaton(['a'], 'b', output, {'a': {ANY: 'a'}})
    with pytest.raises(InvalidAutomaton):
        Automaton(['a'], 'a', output, {'a': {ANY: 'c'}})
    with pytest.raises(InvalidAutomaton):
        Automaton(['a'], 'a', output, {'a': {'deviated:Police': 'a'}})
    with pytest.raises(InvalidAutomaton):
        Automaton(['a'], 'a', output, {'a': {'deviated:Police:*': 'a'}})
    with pytest.raises(InvalidAutomaton):
        Automaton(['a'], 'a', output, {'a': {ANY: 'a'}}, tolerance=-1)
    output2 = dict(output, b={'Police': 'E', 'Drivers': 'S'})
    with pytest.raises(InvalidAutomaton):
        Automaton(['a', 'b'], 'a', output2, {'a': {ANY: 'a'}, 'b': {ANY: 'a'}})


def test_validate_against_game():
    automaton = Automaton(['a'], 'a', {'a': {'Police': 'X', 'Drivers': 'S'}}, {'a': {ANY: 'a'}})
    with pytest.raises(InvalidAutomaton):
        automaton.validate(elvik_stage_game())
    with pytest.raises(InvalidAutomaton):
        solve_state_values(automaton, elvik_stage_game(), Fraction(1, 2))


def test_discount_must_be_exact_and_in_range():
    for delta in [0.9, Fraction(1), Fraction(-1, 2)]:
        with pytest.raises(InvalidDiscount):
            verify(_automaton_i(), elvik_stage_game(), delta)


def test_repeated_and_cyclic_payoffs():
    game = elvik_stage_game()
    delta = Fraction(1, 2)
    stream = [ActionProfile('E', 'DS'), ActionProfile('DE', 'DS')]
    assert repeated_payoff(stream, game, delta, 'Police', 1) == -5000
    assert repeated_payoff(stream, game, delta, 'Police', 3) == Fraction(1, 2) * (-10000 - 2500)
    assert cyclic_payoff(stream, game, delta, 'Police') == Fraction(-20000, 3)
    with pytest.raises(InvalidParams):
        repeated_payoff([], game, delta, 'Police', 2)


def test_absorbing_automaton():
    game = elvik_stage_game()
    automaton = absorbing_automaton(game, ('E', 'DS'))
    values = solve_state_values(automaton, game, Fraction(1, 2))
    assert values.value('Police', 's0') == -10000
    assert values.value('Drivers', 's0') == -50
    # (E, DS) is not a stage equilibrium
    assert not verify(automaton, game, Fraction(1, 2)).is_nash


def test_one_shot_principle_agrees_with_exhaustive_search():
    for seed in range(50):
        game, automaton, delta = random_instance(seed)
        verdict = verify(automaton, game, delta)
        plans = exhaustive_deviation_search(automaton, game, delta, depth=4)
        assert verdict.is_spe == (len(plans) == 0), seed


def test_verdict_invariant_under_affine_rescaling():
    for seed in range(20):
        game, automaton, delta = random_instance(seed)
        verdict = verify(automaton, game, delta)
        r = rng(1000 + seed)
        for factor, shift in [(random_positive_rational(r), 0), (random_positive_rational(r), Fraction(-2))]:
            scaled = scale_game(scale_game(game, 'P1', factor, shift), 'P2', random_positive_rational(r))
            other = verify(automaton, scaled, delta)
            assert other.classification == verdict.classification, seed
            assert other.witness_keys() == verdict.witness_keys(), seed


def test_scale_invariance_of_reference_verdicts():
    r = rng(7)
    cases = [(_automaton_i(), elvik_stage_game(), Fraction(9, 10)),
             (_punishment()[1], _punishment()[2], Fraction(19, 20))]
    for automaton, game, delta in cases:
        verdict = verify(automaton, game, delta)
        for _ in range(10):
            scaled = game
            for player in game.players:
                scaled = scale_game(scaled, player, random_positive_rational(r))
            other = verify(automaton, scaled, delta)
            assert other.classification == verdict.classification
            assert other.witness_keys() == verdict.witness_keys()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("delta", [Fraction(1, 2), Fraction(9, 10), Fraction(19, 20)])
def test_driver_witness_matches_closed_form(n, delta):
    threshold = driver_threshold(n, delta)
    for b in [threshold - Fraction(1, 1000), threshold, threshold + Fraction(1, 1000)]:
        _, automaton, game = _punishment(n=n, delta=delta, b=b)
        values = solve_state_values(automaton, game, delta)
        assert values.value('Drivers', 'ms') == (100 * b - 50) / 12
        assert values.value('Police', 'ms') == -20000 * b
        verdict = verify(automaton, game, delta)
        assert (('Drivers', 'ms', 'S') in verdict.witness_keys()) == (b < threshold), b


def test_compliant_one_shot_payoff_equals_state_value():
    for seed in range(20):
        game, automaton, delta = random_instance(seed)
        values = solve_state_values(automaton, game, delta)
        for s in automaton.states:
            profile = ActionProfile(*[automaton.prescription(s, p) for p in game.players])
            successor = automaton.compliant_successor(s)
            for player in game.players:
                g = one_shot_payoff(automaton, s, profile, game, delta, player, values)
                assert g == values.value(player, s), seed
                reward = stage_payoff(automaton, game, s, player, dict(zip(game.players, profile)))
                residual = values.value(player, s) - (1 - delta) * reward - delta * values.value(player, successor)
                assert residual == 0, seed


def test_truncation_bound():
    for seed in range(20):
        r = rng(seed)
        game = random_game(r)
        profiles = list(game.profiles())
        stream = [ActionProfile(*r.choice(profiles)) for _ in range(r.randint(1, 3))]
        delta = Fraction(r.randint(0, 9), 10)
        for player in game.players:
            bound = max(abs(game.payoff(a, player)) for a in stream)
            exact = cyclic_payoff(stream, game, delta, player)
            for horizon in range(1, 9):
                truncated = repeated_payoff(stream, game, delta, player, horizon)
                assert abs(exact - truncated) <= delta ** horizon * bound, seed


def test_absorbing_mixed_equilibrium_is_spe():
    game = elvik_stage_game()
    police = MixedStrategy('Police', {'E': Fraction(2, 7), 'DE': Fraction(5, 7)})
    drivers = MixedStrategy('Drivers', {'S': Fraction(1, 2), 'DS': Fraction(1, 2)})
    automaton = absorbing_automaton(game, (police, drivers))
    for delta in [Fraction(0), Fraction(1, 2), Fraction(99, 100)]:
        verdict = verify(automaton, game, delta)
        assert verdict.is_spe
        assert verdict.witnesses == []
        assert all(g == 0 for g in verdict.deviation_gains.values())
        assert verdict.values.value('Drivers', 's0') == -50
