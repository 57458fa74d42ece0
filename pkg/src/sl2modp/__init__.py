"""Exact finite-truncation toolkit for mod p representations of GL2(Q_p) and SL2(Q_p)."""

__version__ = "0.1.0"
