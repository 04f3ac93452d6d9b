"""Exact kernels: relations, posets, posets with equivalence, dyadic sets, graphs, quivers."""
