"""Exact certification toolkit for graded finite-dimensional algebras."""
