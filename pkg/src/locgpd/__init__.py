"""Computational workbench for finite local groupoids."""

__version__ = "0.1.0"
