"""Factorized posteriors, marginal likelihoods, model probabilities, Beta summaries."""

import math
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from scipy.special import betainc, xlogy

from src.graph.bidirected import BidirectedGraph
from src.graph.models import UnsupportedDimensionError, enumerate_models
from src.inference.marginal_likelihood import (
    factorized_log_dk,
    log_dk,
    log_marginal_likelihood,
    map_model,
    posterior_model_probs,
)
from src.inference.posterior import factorize, posterior_params, prior_params
from src.inference.summaries import beta_summary, posterior_summaries
from src.montecarlo.reconstruct import reconstruct_full_pi
from src.montecarlo.sampler import SamplerConfig, sample_pi_G
from src.priors.dirichlet import AlphaTable, PriorError, PriorSpec, make_prior
from src.table.contingency import (
    ContingencyTable,
    InvalidCellError,
    Variable,
    log_multinomial_coef,
    to_vec,
    unvec,
)
from tests.conftest import binary_table

PAIR_SATURATED = BidirectedGraph.from_pairs(("A", "B"), [("A", "B")])
PAIR_INDEPENDENT = BidirectedGraph.from_pairs(("A", "B"), [])


# Exact Γ at integers and half-integers as (rational, power of √π).
def _gamma(x: Fraction):
    if x.denominator == 1:
        return Fraction(math.factorial(int(x) - 1)), 0
    assert x.denominator == 2
    k = int(x - Fraction(1, 2))
    return Fraction(math.factorial(2 * k), 4**k * math.factorial(k)), 1


def _mul(*terms):
    value, power = Fraction(1), 0
    for frac, p in terms:
        value *= frac
        power += p
    return value, power


def _inv(term):
    return 1 / term[0], -term[1]


def _dk_ratio(alpha, counts):
    """DK(α) / DK(α + n) exactly."""
    total = sum(alpha)
    terms = [_gamma(total), _inv(_gamma(total + sum(counts)))]
    for a, n in zip(alpha, counts):
        terms += [_gamma(a + n), _inv(_gamma(a))]
    return _mul(*terms)


def _exact_log(term):
    value, power = term
    return math.log(value) + power * math.log(math.pi) / 2


def _multinomial(counts):
    coef = Fraction(math.factorial(sum(counts)))
    for n in counts:
        coef /= math.factorial(n)
    return coef, 0


# --- log DK ---


def test_log_dk_known_values():
    assert log_dk([1.0, 1.0]) == pytest.approx(0.0)
    assert log_dk([0.5, 0.5]) == pytest.approx(-math.log(math.pi))
    assert log_dk([1.0, 1.0, 1.0, 1.0]) == pytest.approx(math.log(6))


@pytest.mark.parametrize("alpha", [[], [1.0, 0.0], [1.0, -2.0], [np.inf, 1.0]])
def test_log_dk_rejects_bad_parameters(alpha):
    with pytest.raises(PriorError):
        log_dk(alpha)


# --- exact marginal likelihoods ---


def test_saturated_two_by_two_uniform_prior():
    table = binary_table([1, 2, 3, 4], names=("A", "B"))
    alpha = make_prior(PriorSpec(kind="unit_expected_cell"), table)
    assert log_marginal_likelihood(PAIR_SATURATED, alpha, table) == pytest.approx(-math.log(286))


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])
def test_two_by_two_marginal_likelihood_matches_exact_gamma(a):
    for counts in product(range(9), repeat=4):
        if sum(counts) > 8:
            continue
        table = binary_table(counts, names=("A", "B"))
        alpha = AlphaTable(table.variables, np.full(4, float(a)))
        coef = _multinomial(counts)

        saturated = _mul(coef, _dk_ratio([a] * 4, counts))
        got = log_marginal_likelihood(PAIR_SATURATED, alpha, table)
        assert got == pytest.approx(_exact_log(saturated), abs=1e-10), counts

        # independence: one Dirichlet per variable, α collapsed to 2a per level
        n_a = (counts[0] + counts[2], counts[1] + counts[3])
        n_b = (counts[0] + counts[1], counts[2] + counts[3])
        independent = _mul(coef, _dk_ratio([2 * a] * 2, n_a), _dk_ratio([2 * a] * 2, n_b))
        got = log_marginal_likelihood(PAIR_INDEPENDENT, alpha, table)
        assert got == pytest.approx(_exact_log(independent), abs=1e-10), counts


def test_empty_table_has_unit_marginal_likelihood(antitoxin_models):
    table = binary_table(np.zeros(8), names=("A", "S", "C"))
    alpha = make_prior(PriorSpec(kind="jeffreys"), table)
    for graph in antitoxin_models:
        assert log_marginal_likelihood(graph, alpha, table) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("index", [0, 3, 5])
def test_marginal_likelihood_matches_prior_monte_carlo(antitoxin_models, index):
    table = binary_table([1, 0, 2, 1, 0, 1, 1, 2], names=("A", "S", "C"))
    alpha = make_prior(PriorSpec(kind="unit_expected_cell"), table)
    graph = antitoxin_models[index]

    prior = prior_params(graph, alpha)
    config = SamplerConfig(draws=40_000, seed=7)
    pi = reconstruct_full_pi(prior, sample_pi_G(prior, config))
    pmf = np.exp(log_multinomial_coef(table) + xlogy(table.counts, pi).sum(axis=1))
    estimate = pmf.mean()
    se = pmf.std(ddof=1) / math.sqrt(len(pmf))

    exact = math.exp(log_marginal_likelihood(graph, alpha, table))
    assert abs(estimate - exact) < 3 * se


def _relabeled(table, order, flipped=()):
    """``table`` with its variables in ``order`` and the levels of ``flipped`` reversed."""
    arr = unvec(table.counts, table.dims)
    variables = list(table.variables)
    for axis in flipped:
        arr = np.flip(arr, axis)
        variables[axis] = Variable(variables[axis].name, variables[axis].levels[::-1])
    arr = arr.transpose(order)
    return ContingencyTable(tuple(variables[i] for i in order), to_vec(arr, 3), table.name)


@pytest.mark.parametrize("kind", ["jeffreys", "empirical_bayes", "perks_uip"])
@pytest.mark.parametrize("order", list(permutations(range(3))))
def test_log_ml_is_invariant_to_variable_and_level_relabeling(alcohol, kind, order):
    moved = _relabeled(alcohol, order, flipped=(1,))
    moved_models = enumerate_models(moved.names)
    alpha = make_prior(PriorSpec(kind=kind), alcohol)
    moved_alpha = make_prior(PriorSpec(kind=kind), moved)
    for graph in enumerate_models(alcohol.names):
        match = next(g for g in moved_models if g.edges == graph.edges)
        assert log_marginal_likelihood(match, moved_alpha, moved) == pytest.approx(
            log_marginal_likelihood(graph, alpha, alcohol), abs=1e-9
        )


# --- factorization ---


def test_factorization_components_per_kind(antitoxin, perks, antitoxin_models):
    labels = [
        [c.label for c in posterior_params(g, perks, antitoxin).components]
        for g in antitoxin_models
    ]
    assert labels[0] == ["π_A", "π_S", "π_C"]
    assert labels[3] == ["π_A", "π_SC"]
    assert labels[5] == ["π_S|AC", "π_A", "π_C"]
    assert labels[7] == ["π_ASC"]


def test_posterior_components_carry_all_information(antitoxin, perks, antitoxin_models):
    for graph in antitoxin_models:
        for comp in posterior_params(graph, perks, antitoxin).components:
            assert comp.params.sum() == pytest.approx(80.0)


def test_gamma_conditional_columns(antitoxin, perks, antitoxin_models):
    posterior = posterior_params(antitoxin_models[5], perks, antitoxin)
    cond = posterior.components[0]
    assert cond.params.shape == (2, 4)
    np.testing.assert_allclose(cond.params[:, 0], [15.125, 6.125])
    np.testing.assert_allclose(cond.params[:, 1], [22.125, 4.125])


def test_factorized_log_dk_is_additive(antitoxin, perks, antitoxin_models):
    prior = prior_params(antitoxin_models[3], perks)
    a, sc = prior.components
    assert factorized_log_dk(prior) == pytest.approx(log_dk(a.params) + log_dk(sc.params))


def test_factorize_needs_complete_components_beyond_three_variables():
    graph = BidirectedGraph.from_pairs("ABCD", [("A", "B"), ("B", "C")])
    with pytest.raises(UnsupportedDimensionError):
        factorize(graph, (2, 2, 2, 2), np.ones(16))


def test_prior_and_table_must_agree(antitoxin, alcohol, antitoxin_models):
    alpha = make_prior(PriorSpec(), alcohol)
    with pytest.raises(InvalidCellError):
        log_marginal_likelihood(antitoxin_models[0], alpha, antitoxin)


# --- model probabilities ---


def test_model_probabilities_sum_to_one(antitoxin, perks, antitoxin_models):
    results = posterior_model_probs(antitoxin_models, perks, antitoxin)
    assert sum(r.post_prob for r in results) == pytest.approx(1.0)
    best = map_model(results)
    assert best.label == "SC+A"
    assert best.log_bayes_factor_vs_map == 0.0
    assert all(r.log_bayes_factor_vs_map <= 0 for r in results)


def test_model_prior_weights_scale_posterior_odds(antitoxin, perks, antitoxin_models):
    uniform = posterior_model_probs(antitoxin_models, perks, antitoxin)
    weighted = posterior_model_probs(antitoxin_models, perks, antitoxin, [1.0] * 7 + [3.0])
    odds_uniform = uniform[7].post_prob / uniform[0].post_prob
    odds_weighted = weighted[7].post_prob / weighted[0].post_prob
    assert odds_weighted == pytest.approx(3 * odds_uniform)


@pytest.mark.parametrize("weights", [[1.0] * 7, [1.0] * 7 + [0.0], [1.0] * 7 + [np.nan]])
def test_model_prior_weights_validated(antitoxin, perks, antitoxin_models, weights):
    with pytest.raises(ValueError):
        posterior_model_probs(antitoxin_models, perks, antitoxin, weights)


def test_map_model_ties_go_to_earlier_model(antitoxin, antitoxin_models):
    table = binary_table(np.zeros(8), names=("A", "S", "C"))
    alpha = make_prior(PriorSpec(kind="jeffreys"), table)
    results = posterior_model_probs(antitoxin_models, alpha, table)
    assert map_model(results).label == "A+S+C"


# --- Beta summaries ---


def test_beta_summary_quantiles_invert_the_cdf():
    summary = beta_summary(37.25, 42.75, (0.025, 0.5, 0.975))
    for q, value in summary.quantiles.items():
        assert betainc(37.25, 42.75, value) == pytest.approx(q)
    assert summary.mean == pytest.approx(37.25 / 80)


def test_beta_summary_rejects_bad_input():
    with pytest.raises(ValueError):
        beta_summary(0.0, 1.0)
    with pytest.raises(ValueError, match="Quantile level"):
        beta_summary(1.0, 1.0, (1.0,))


def test_edge_model_cell_summaries(antitoxin, perks, antitoxin_models):
    rows = posterior_summaries(posterior_params(antitoxin_models[3], perks, antitoxin))
    by_name = {r.name: r.summary for r in rows}
    assert len(rows) == 2 + 4
    sc = by_name["π_SC(1,1)"]
    assert (sc.a, sc.b) == pytest.approx((37.25, 42.75))
    assert sc.mean == pytest.approx(0.47, abs=0.005)
    assert sc.sd == pytest.approx(0.055, abs=0.001)
    assert sc.quantiles[0.025] == pytest.approx(0.36, abs=0.01)
    assert sc.quantiles[0.975] == pytest.approx(0.57, abs=0.01)
    assert (by_name["π_A(1)"].a, by_name["π_A(1)"].b) == pytest.approx((41.5, 38.5))


def test_gamma_model_conditional_summaries(antitoxin, perks, antitoxin_models):
    rows = posterior_summaries(posterior_params(antitoxin_models[5], perks, antitoxin))
    by_name = {r.name: r for r in rows}
    first = by_name["π_S|AC(1|1,1)"]
    assert first.given_levels == (1, 1)
    assert (first.summary.a, first.summary.b) == pytest.approx((15.125, 6.125))
    assert first.summary.mean == pytest.approx(0.71, abs=0.005)
    assert first.summary.quantiles[0.025] == pytest.approx(0.51, abs=0.01)
    assert first.summary.quantiles[0.975] == pytest.approx(0.88, abs=0.01)
    second = by_name["π_S|AC(1|2,1)"].summary
    assert (second.a, second.b) == pytest.approx((22.125, 4.125))
