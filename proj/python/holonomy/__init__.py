"""Holonomy groups of flat connections on the torus: classification, certificates, orbits."""

import json as _json

from ._holonomy import (
    HolonomyError,
    angle_radians,
    approximate_element,
    b_theta,
    ball_so3,
    ball_su2,
    c_theta,
    gens_from_config,
    lift_so3_pair,
    minpoly_product,
    orbit,
    phi_cover,
    so4_to_so3_pair,
    transport_so4,
    transport_u2,
    v_phi_gamma,
)
from . import _holonomy


def classify(theta1, theta2, phi="pi*1/2", gamma="0", derive="", max_size=100000):
    """Classification of the group generated by C_1, C_2 as a dict."""
    return _json.loads(_holonomy._classify(theta1, theta2, phi, gamma, derive, max_size))


def check_abc(theta1, theta2, phi="pi*1/2", gamma="0", derive=""):
    """Certificates condA, condB, condC, thm_main, thm_main2 for a configuration."""
    return _json.loads(_holonomy._check_abc(theta1, theta2, phi, gamma, derive))


def check_abc_matrices(c1, c2):
    """Certificates for two rotation matrices (numeric path)."""
    return _json.loads(_holonomy._check_abc_matrices(c1, c2))


def check_main3(plus, minus):
    """Certificate for the paired SO(4) hypotheses; plus/minus are (theta1, theta2, phi, gamma)."""
    return _json.loads(_holonomy._check_main3(list(plus), list(minus)))


__all__ = [
    "HolonomyError",
    "angle_radians",
    "approximate_element",
    "b_theta",
    "ball_so3",
    "ball_su2",
    "c_theta",
    "check_abc",
    "check_abc_matrices",
    "check_main3",
    "classify",
    "gens_from_config",
    "lift_so3_pair",
    "minpoly_product",
    "orbit",
    "phi_cover",
    "so4_to_so3_pair",
    "transport_so4",
    "transport_u2",
    "v_phi_gamma",
]
