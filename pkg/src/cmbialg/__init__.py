"""Exact computations with Connes-Moscovici bialgebroids of anchored Lie algebras."""
