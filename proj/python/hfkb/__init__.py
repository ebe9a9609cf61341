"""Knot Floer homology of two-bridge and grid diagrams and of their branched double covers."""

import json

from . import _core
from ._core import (
    ParseError,
    ValidationError,
    check_i1_surjectivity,
    lifted_diagram,
    sigma_doubling,
    sym_wedge_betti,
    two_bridge_diagram,
    validate_diagram,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "check_i1_surjectivity",
    "checks",
    "compute",
    "lifted_diagram",
    "sigma_doubling",
    "sym_wedge_betti",
    "two_bridge_diagram",
    "validate_diagram",
]


def compute(two_bridge=None, grid=None, diagram=None, lift=None, max_domain_coeff=0, timing=False):
    """Run the pipeline on exactly one input and return the report as a dict."""
    given = [x is not None for x in (two_bridge, grid, diagram)]
    if sum(given) != 1:
        raise TypeError("pass exactly one of two_bridge, grid, diagram")
    if two_bridge is not None:
        p, q = two_bridge
        text = _core.two_bridge_report(p, q, lift, max_domain_coeff, timing)
    elif grid is not None:
        text = _core.grid_report(str(grid), lift, max_domain_coeff, timing)
    else:
        text = _core.diagram_report(str(diagram), lift, max_domain_coeff, timing)
    return json.loads(text)


def checks(max_n=5, fixture=None):
    return json.loads(_core.checks_report(max_n, None if fixture is None else str(fixture)))
