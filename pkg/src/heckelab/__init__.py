"""Hecke eigensystems from supersingular isogeny graphs, with verifiers for
the spectral statistics built on them."""

__version__ = "0.1.0"
