"""
mackey_e2: exact Mackey-module algebra over the representation Green functor,
exposing the command-line entry point.
"""

from .cli import main

__all__ = ["main"]
