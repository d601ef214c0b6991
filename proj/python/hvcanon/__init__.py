"""Exact toolkit for hidden-variable models of bipartite experiments.

The extension module speaks JSON text so probabilities stay exact
("num/den" strings); the wrappers here convert to and from plain dicts.
"""

import json
from fractions import Fraction

from ._hvcanon import property_names  # noqa: F401
from . import _hvcanon

__all__ = [
    "check",
    "realizes",
    "realized_empirical",
    "canonicalize",
    "restrict",
    "solve_local",
    "chsh",
    "random_model",
    "scenario",
    "property_names",
    "as_fraction",
]


def _text(model):
    return model if isinstance(model, str) else json.dumps(model)


def as_fraction(value):
    """Parse a "num/den" probability string into a Fraction."""
    return Fraction(value)


def check(model, property=None):
    """Property reports for a hidden-variable or interval model."""
    return json.loads(_hvcanon.check(_text(model), property or ""))


def realizes(model, empirical):
    """Whether the model's observable marginal equals the empirical model."""
    return _hvcanon.realizes(_text(model), _text(empirical))


def realized_empirical(model):
    """Observable marginal of a hidden-variable model."""
    return json.loads(_hvcanon.realized_empirical(_text(model)))


def canonicalize(model):
    """Unit-interval form of a model plus the block-to-interval map."""
    return json.loads(_hvcanon.canonicalize(_text(model)))


def restrict(model, blocks_a=None, blocks_b=None):
    """Blockwise coarsening of the outcome spaces.

    Blocks are lists of label lists, e.g. ``[["x0", "x1"], ["x2"]]``;
    ``None`` leaves that side untouched.
    """
    return json.loads(
        _hvcanon.restrict(_text(model), blocks_a or [], blocks_b or [])
    )


def solve_local(empirical):
    """Exact membership test for the local polytope, with certificate."""
    return json.loads(_hvcanon.solve_local(_text(empirical)))


def chsh(empirical):
    """Four-correlator functional and its symmetrized maximum."""
    return json.loads(_hvcanon.chsh(_text(empirical)))


def random_model(seed, dims=(2, 2, 2, 2, 2), constraint=None):
    """Seeded random model, optionally constrained to satisfy a property."""
    return json.loads(_hvcanon.random_model(seed, list(dims), constraint or ""))


def scenario(name):
    """Built-in model: det, coin, signal, ldep, or pr-box."""
    return json.loads(_hvcanon.scenario(name))
