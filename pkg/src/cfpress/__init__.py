"""Counterfactual press: generate synthetic news from real headlines and compare the corpora."""

__version__ = "0.1.0"
