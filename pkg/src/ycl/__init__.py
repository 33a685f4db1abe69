"""Exact computations with the double Yangian of gl_N and its vacuum module."""

__version__ = "0.1.0"
