"""Exact-arithmetic workbench for elliptic formal group laws and their genera."""

__version__ = "0.1.0"
