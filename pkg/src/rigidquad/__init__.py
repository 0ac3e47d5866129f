"""Bijections, generating functions and samplers for rigid quadrangulations."""

__version__ = "0.1.0"
