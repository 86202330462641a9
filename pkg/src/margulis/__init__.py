"""Numerics for proper affine actions of free groups on Minkowski 3-space.

Minkowski algebra, SO0(2,1) frames and flows, Schottky groups, Margulis
invariants and invariant axes, stable/unstable leaves with their charts and
contraction checks, and the null-plane flag correspondence.
"""
from .errors import MargulisError
from .isometry import AffineIsometry, PhasePoint, a, u_minus, u_plus
from .schottky import SchottkyGroup, axis, evaluate

__all__ = ["MargulisError", "AffineIsometry", "PhasePoint", "a", "u_plus", "u_minus",
           "SchottkyGroup", "axis", "evaluate"]
