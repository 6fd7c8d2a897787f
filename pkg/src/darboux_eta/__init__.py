"""Darboux integrability certificates from eta invariants of curve configurations."""

__version__ = "0.1.0"
