"""Test suite for bidirected-bayes."""
