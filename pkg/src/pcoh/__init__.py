"""Exact arithmetic for discrete kernels, the exponential comonad on them,
orthogonality and polars, double glueing, and probabilistic coherence spaces.
"""
from .errors import (
    DegreeOverflowError, InfiniteEntryError, ModeError, ParseError, PcohError,
    ResourceError, ShapeError,
)
from .scalar import INF, ONE, ZERO, format_scalar, parse_scalar, scalar, star
from .space import EMPTY, UNIT, ExpWeb, Multiset, Web, coproduct_web, exp_web, flatten, product_web, web
from .kernel import (
    Kernel, compose, dagger, identity, kleene_star, pull, push, tensor, trace, zero,
)
from .bang import (
    contraction, dereliction, k_transform, mon, mon_unit, natural_kernel, storage, weakening,
)
from .lp import LpSolution, solve
from .duality import GenSet, bipolar_member, inner, is_orthogonal, polar_member, polar_vertices
from .glueing import GlueObject, PcohObject, pcoh_bang, pcoh_is_morphism, validate_pcoh

__version__ = "0.1.0"
