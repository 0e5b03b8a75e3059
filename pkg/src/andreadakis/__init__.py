"""Exact computations in free groups, free Lie rings and the Andreadakis
filtration of Aut(F_n) and Out(F_n)."""

from .errors import AndreadakisError
from .filtration import (
    AutDepthReport, JohnsonImage, OuterClass, ZFunctional, ad_matrix, aut_depth,
    is_inner_mod_next, johnson, map_to_Z, outer_depth, subgroup_depth, suffixes,
)
from .intlat import (
    IntMatrix, SNFResult, annihilating_functionals, member, saturation, snf,
)
from .lie import (
    GradedBasis, LieElement, LyndonTree, bracket, center_kernel_rank, dsw_project,
    leading_lie_part, lift_lie_to_word, lyndon_basis, witt_rank,
)
from .magnus import DepthReport, Series, gamma_depth, magnus_expand, series_inverse, series_mul
from .syntax import format_automorphism, format_word, parse_automorphism, parse_spec, parse_word
from .words import (
    Automorphism, Endomorphism, Letter, Word, ad, apply, commutator, compose, conj, identity_automorphism,
    inv, invert, make_automorphism, mul_r, multiply, reduce, swap, transvection,
)

__version__ = "0.1.0"
