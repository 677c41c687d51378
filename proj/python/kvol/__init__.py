"""Exact and floating-point k-dimensional content, compound matrices, and
Gram-determinant identities."""

try:
    from ._kvol import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # in-tree build: extension sits on PYTHONPATH
    from _kvol import *  # noqa: F401,F403

__version__ = "0.1.0"
