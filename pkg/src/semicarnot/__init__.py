"""Exact tools for deciding semigeneration of Carnot (stratified nilpotent) Lie algebras."""

__version__ = "0.1.0"
