"""Exact computations around Lie bialgebras, Drinfel'd twists and twist star products."""

__version__ = "0.1.0"
