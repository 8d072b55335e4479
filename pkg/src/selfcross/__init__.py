"""Forbidden self-crossing patterns of closed geodesics on convex surfaces."""

__version__ = "0.1.0"
