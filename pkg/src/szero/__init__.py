"""Symbolic and geometric verification of semiorthogonal decompositions."""
