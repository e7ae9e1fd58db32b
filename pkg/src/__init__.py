"""
bidirected-bayes: Bayesian analysis of marginal independence models

Model enumeration, conjugate Dirichlet inference, analytic marginal likelihoods,
posterior model probabilities, and Monte Carlo summaries of marginal log-linear
parameters for three-way contingency tables.
"""

__version__ = "1.0.0"
