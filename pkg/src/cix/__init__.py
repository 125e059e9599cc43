"""Commuting involution graphs in the affine Weyl group of type C~n."""

from cix.algebra import (
    ClassSpec,
    GroupElement,
    LabelledCycle,
    LabelledCycleType,
    canonical_rep,
    conjugate,
    inverse,
    is_involution,
    labelled_cycle_type,
    multiply,
    parse_element,
    render_element,
)

__version__ = "0.1.0"

__all__ = [
    "ClassSpec",
    "GroupElement",
    "LabelledCycle",
    "LabelledCycleType",
    "canonical_rep",
    "conjugate",
    "inverse",
    "is_involution",
    "labelled_cycle_type",
    "multiply",
    "parse_element",
    "render_element",
]
