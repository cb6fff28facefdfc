"""Automorphism and affine-map dynamics of finite groups."""

from .constructions import build_family, build_gc, default_catalog, gc_automorphisms, gc_gap
from .dynamics import FDS, CycleStructure, cycle_structure, fds_product
from .groups import FiniteGroup, load_group, save_group, solvable_radical
from .morphisms import AffineMap, Automorphism, automorphism_group, maffo, mao

__version__ = "0.1.0"
