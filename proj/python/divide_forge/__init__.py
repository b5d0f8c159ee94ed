"""Divides of plane curve singularities: synthesis, vanishing cycles, monodromy."""

import json as _json

from . import _core
from ._core import DivideForgeError, cheb_crossings, render, synth

__all__ = ["DivideForgeError", "analyze", "cable_data", "cheb_crossings", "render", "synth", "verify"]


def cable_data(pairs):
    """Linking numbers, double points and cable exponents of a Puiseux pair sequence."""
    return _json.loads(_core.cable_data([tuple(p) for p in pairs]))


def analyze(divide, bound=10000, matrices=True):
    """Report for a divide given as file text."""
    return _json.loads(_core.analyze(divide, bound, matrices))


def verify(divide, lhs, rhs="", classes="", compose="right"):
    """Compare two twist words on homology; `classes` is optional fixture text."""
    return _json.loads(_core.verify(divide, lhs, rhs, classes, compose))
