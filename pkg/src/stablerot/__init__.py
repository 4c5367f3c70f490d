"""Stable matchings with choice-function firms: rotations and their poset."""

from .affine import build_affine
from .instance import Instance, InstanceError, SModelInstance, load_instance, load_smodel
from .mincost import min_cost_stable
from .optimal import compute_xmax, compute_xmin
from .poset import build_poset, enumerate_stable, matching_of, meet_join, omega
from .rotations import Rotation, rotations_at
from .sequential import replicate, smodel_stable_set
from .stability import is_stable

__all__ = [
    "Instance",
    "InstanceError",
    "Rotation",
    "SModelInstance",
    "build_affine",
    "build_poset",
    "compute_xmax",
    "compute_xmin",
    "enumerate_stable",
    "is_stable",
    "load_instance",
    "load_smodel",
    "matching_of",
    "meet_join",
    "min_cost_stable",
    "omega",
    "replicate",
    "rotations_at",
    "smodel_stable_set",
]
