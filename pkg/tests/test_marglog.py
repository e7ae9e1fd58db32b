"""Marginal log-linear parameterization: ordering, allocation, C and M."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.graph.models import enumerate_models
from src.marglog.matrices import (
    build_C_matrix,
    build_M_matrix,
    contrast_block,
    saturated_design,
)
from src.marglog.parameters import LogDomainError, lambda_draws, lambda_from_pi
from src.marglog.scheme import (
    SchemeError,
    hierarchical_ordering,
    is_decomposable,
    is_ordered_decomposable,
    marginal_scheme,
)
from src.table.contingency import to_vec


def _joint(p_a, p_sc):
    """π(a,s,c) = π_A(a) π_SC(s,c) in vec order."""
    joint = np.asarray(p_a)[:, None, None] * np.asarray(p_sc)[None, :, :]
    return to_vec(joint, 3)


def _gamma_joint(p_a, p_c, p_s_given_ac):
    """π(a,s,c) = π_A(a) π_C(c) π_S|AC(s|a,c); ``p_s_given_ac`` indexed [a, s, c]."""
    joint = np.asarray(p_a)[:, None, None] * np.asarray(p_c)[None, None, :] * p_s_given_ac
    return to_vec(joint, 3)


# --- ordering and allocation ---


def test_hierarchical_ordering_appends_full_set():
    assert hierarchical_ordering([("S", "C"), ("A", "S")], "ASC") == [
        ("A", "S"),
        ("S", "C"),
        ("A", "S", "C"),
    ]


def test_hierarchical_ordering_rejects_duplicates():
    with pytest.raises(SchemeError, match="Duplicate"):
        hierarchical_ordering([("A", "S"), ("S", "A")], "ASC")
    with pytest.raises(SchemeError, match="Unknown"):
        hierarchical_ordering([("A", "Z")], "ASC")


def test_running_intersection():
    assert is_decomposable([("A", "B"), ("B", "C"), ("C", "D")])
    assert not is_decomposable([("A", "B"), ("B", "C"), ("C", "D"), ("A", "D")])


def test_three_way_pairs_are_decomposable():
    assert is_decomposable([("A", "S"), ("A", "C"), ("S", "C")])
    with pytest.raises(SchemeError, match="comparable"):
        is_decomposable([("A", "S"), ("A",)])


def test_ordered_decomposability_checks_every_prefix(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[3], (2, 2, 2))
    assert is_ordered_decomposable(scheme.ordered_marginals)
    cycle = [("A", "B"), ("B", "C"), ("C", "D"), ("A", "D"), ("A", "B", "C", "D")]
    assert not is_ordered_decomposable(cycle)


@pytest.mark.parametrize("index", range(8))
def test_every_three_way_scheme_is_ordered_decomposable(antitoxin_models, index):
    scheme = marginal_scheme(antitoxin_models[index], (2, 2, 2))
    assert is_ordered_decomposable(scheme.ordered_marginals)
    assert scheme.ordered_marginals[-1] == ("A", "S", "C")


def test_independence_scheme_orders_all_pairs(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[0], (2, 2, 2))
    assert scheme.ordered_marginals == [("A", "S"), ("A", "C"), ("S", "C"), ("A", "S", "C")]
    assert int(scheme.constrained_mask.sum()) == 4


def test_effect_allocation_edge_model(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[3], (2, 2, 2))
    assert scheme.ordered_marginals == [("A", "S"), ("A", "C"), ("A", "S", "C")]
    assert scheme.effects[("A", "S")] == [(), ("A",), ("S",), ("A", "S")]
    assert scheme.effects[("A", "C")] == [("C",), ("A", "C")]
    assert scheme.effects[("A", "S", "C")] == [("S", "C"), ("A", "S", "C")]
    assert scheme.zero_constrained == [
        (("A", "S"), ("A", "S")),
        (("A", "C"), ("A", "C")),
        (("A", "S", "C"), ("A", "S", "C")),
    ]


@pytest.mark.parametrize("index", range(8))
def test_parameterization_is_complete(antitoxin_models, alcohol, index):
    binary = marginal_scheme(antitoxin_models[index], (2, 2, 2))
    assert binary.n_parameters == 8
    assert binary.C_matrix.shape == (8, binary.M_matrix.shape[0])

    graph = enumerate_models(alcohol.names)[index]
    wide = marginal_scheme(graph, alcohol.dims)
    assert wide.n_parameters == 24


def test_row_labels_name_effect_and_marginal(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[3], (2, 2, 2))
    names = [(lab.name, lab.marginal_name) for lab in scheme.row_labels]
    assert names[0] == ("λ_∅", "M_AS")
    assert ("λ_SC(2,2)", "M_ASC") in names
    assert int(scheme.constrained_mask.sum()) == 3


# --- matrices ---


def test_contrast_block():
    np.testing.assert_array_equal(
        contrast_block(3), np.array([[1.0, -1.0, -1.0], [1.0, 1.0, 0.0], [1.0, 0.0, 1.0]])
    )


def test_marginalization_blocks_sum_to_one(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[0], (2, 2, 2))
    pi = np.full(8, 1 / 8)
    marginals = scheme.M_matrix @ pi
    # AS, AC, SC, ASC blocks
    assert marginals.shape == (4 + 4 + 4 + 8,)
    assert marginals[:4].sum() == pytest.approx(1.0)
    assert marginals[-8:].sum() == pytest.approx(1.0)


def test_builders_match_scheme_matrices(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[4], (2, 2, 2))
    M = build_M_matrix(scheme, (2, 2, 2))
    np.testing.assert_array_equal(M, scheme.M_matrix)
    np.testing.assert_array_equal(build_C_matrix(scheme, (2, 2, 2)), scheme.C_matrix)
    # each block partitions the joint cells
    assert set(np.unique(M)) == {0.0, 1.0}
    np.testing.assert_array_equal(M.sum(axis=0), len(scheme.ordered_marginals))


def test_saturated_lambda_reproduces_log_pi():
    rng = np.random.default_rng(3)
    pi = rng.dirichlet(np.ones(12))
    graph = enumerate_models("HAO")[7]
    scheme = marginal_scheme(graph, (2, 3, 2))
    lam = lambda_from_pi(scheme, pi)
    np.testing.assert_allclose(saturated_design((2, 3, 2)) @ lam.values, np.log(pi))


@pytest.mark.parametrize("index", range(8))
def test_binary_lambda_matches_signed_log_averages(antitoxin_models, index):
    """For binary variables λ_e(2,..,2) = mean over M of (±1 per variable in e) log π_M."""
    rng = np.random.default_rng(100 + index)
    joint = rng.dirichlet(np.ones(8)).reshape((2, 2, 2), order="F")
    scheme = marginal_scheme(antitoxin_models[index], (2, 2, 2))
    lam = lambda_from_pi(scheme, to_vec(joint, 3))
    for label, value in zip(lam.labels, lam.values):
        drop = tuple(i for i, v in enumerate("ASC") if v not in label.marginal)
        log_margin = np.log(joint.sum(axis=drop))
        signs = np.ones_like(log_margin)
        for axis, v in enumerate(label.marginal):
            if v in label.effect:
                shape = [1] * log_margin.ndim
                shape[axis] = 2
                signs = signs * np.array([-1.0, 1.0]).reshape(shape)
        expected = float(np.mean(signs * log_margin))
        assert value == pytest.approx(expected, abs=1e-9), label.name


# --- λ values ---


def test_single_variable_main_effect():
    graph = enumerate_models("ASC")[0]
    scheme = marginal_scheme(graph, (2, 2, 2))
    pi = _joint([0.25, 0.75], np.full((2, 2), 0.25))
    lam = lambda_from_pi(scheme, pi)
    assert lam.value(("A",), (2,)) == pytest.approx(np.log(3) / 2)


def test_edge_model_constraints_hold_on_factorized_pi(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[3], (2, 2, 2))
    pi = _joint([0.3, 0.7], [[0.1, 0.2], [0.3, 0.4]])
    lam = lambda_from_pi(scheme, pi)
    assert np.all(np.abs(lam.values[lam.constrained]) < 1e-9)
    # log odds ratio of the SC margin over four
    assert lam.value(("S", "C"), (2, 2)) == pytest.approx(np.log(0.1 * 0.4 / (0.2 * 0.3)) / 4)


@given(
    st.lists(st.floats(0.01, 1.0), min_size=2, max_size=2),
    st.lists(st.floats(0.01, 1.0), min_size=4, max_size=4),
)
def test_edge_constraints_hold_for_any_factorized_pi(p_a, p_sc):
    p_a = np.array(p_a) / sum(p_a)
    p_sc = np.array(p_sc).reshape(2, 2) / sum(p_sc)
    scheme = marginal_scheme(enumerate_models("ASC")[3], (2, 2, 2))
    lam = lambda_from_pi(scheme, _joint(p_a, p_sc))
    assert np.all(np.abs(lam.values[lam.constrained]) < 1e-9)


def test_gamma_model_constraint_holds(antitoxin_models):
    rng = np.random.default_rng(11)
    cond = rng.dirichlet([1.0, 1.0], size=(2, 2))  # [a, c, s]
    p_s = np.transpose(cond, (0, 2, 1))
    pi = _gamma_joint([0.4, 0.6], [0.35, 0.65], p_s)
    scheme = marginal_scheme(antitoxin_models[5], (2, 2, 2))
    lam = lambda_from_pi(scheme, pi)
    assert scheme.ordered_marginals == [("A", "C"), ("A", "S", "C")]
    assert abs(lam.value(("A", "C"), (2, 2))) < 1e-9


def test_lambda_draws_batches_rows(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[7], (2, 2, 2))
    pis = np.random.default_rng(5).dirichlet(np.ones(8), size=4)
    out = lambda_draws(scheme, pis)
    assert out.shape == (4, 8)
    np.testing.assert_allclose(out[2], lambda_from_pi(scheme, pis[2]).values)


def test_zero_probability_has_no_log_parameters(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[7], (2, 2, 2))
    pi = np.array([0.5, 0.5, 0, 0, 0, 0, 0, 0])
    with pytest.raises(LogDomainError):
        lambda_from_pi(scheme, pi)


def test_lambda_from_pi_requires_simplex(antitoxin_models):
    scheme = marginal_scheme(antitoxin_models[7], (2, 2, 2))
    with pytest.raises(ValueError, match="simplex"):
        lambda_from_pi(scheme, np.full(8, 0.2))
