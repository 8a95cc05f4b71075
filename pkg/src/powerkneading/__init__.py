"""Numerical laboratory for the power-law unimodal family x -> -|x|**alpha + a."""

__version__ = "0.1.0"
