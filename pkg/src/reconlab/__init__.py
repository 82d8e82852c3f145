"""Reconstruction-conjecture laboratory for small graphs and digraphs."""
