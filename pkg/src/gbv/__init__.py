"""Divergence operators, odd Poisson brackets and their BV generators."""
