"""Python interface to the constrained-transport MHD solver."""

from ._native import __version__, advect_hat, eoc, run2, wave_errors

__all__ = ["__version__", "advect_hat", "eoc", "run2", "wave_errors"]
