"""Mutual-visibility sets in hypercubes.

Construction, verification, ILP/SAT encoding and exact search for mutual,
total, outer and dual visibility sets of Q_h.
"""

from cubevis._kernels import BACKEND as KERNEL_BACKEND
from cubevis.cube import (
    VertexSet,
    antipode,
    enumerate_shortest_paths,
    halved_cube,
    hamming_distance,
    interval,
    layer,
    raised_subcube,
    vertex_from_text,
    vertex_to_text,
    weight,
)
from cubevis.visibility import Variant, Verdict, pair_visible, verify

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Variant",
    "Verdict",
    "VertexSet",
    "antipode",
    "enumerate_shortest_paths",
    "halved_cube",
    "hamming_distance",
    "interval",
    "layer",
    "pair_visible",
    "raised_subcube",
    "verify",
    "vertex_from_text",
    "vertex_to_text",
    "weight",
]
