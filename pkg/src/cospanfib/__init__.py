"""Finite cospan categories, the reduction functor and simplicial fibration checks."""

from .cospan import Cospan, HClass, canonical_class, compose, find_isomorphism, parse_cospan, reduce
from .cospan_cats import RedMorphism, compose_red, functor_R, is_locally_R_cartesian
from .errors import CapError, InputError
from .finset import Partition, UnionFind

__version__ = "0.1.0"
