"""Unary Turing machines encoded in truncations of the group von Neumann
algebra of the tower C_2 < C_4 < C_8 < ..."""

__version__ = "0.1.0"
