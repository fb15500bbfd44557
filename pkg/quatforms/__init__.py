"""Quaternionic automorphic forms on the Hurwitz order: class sets, Hecke operators and p-adic spectra."""

__version__ = "0.1.0"
