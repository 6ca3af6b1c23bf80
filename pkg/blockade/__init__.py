"""Blockade - exact Ext^1 and block computations for twisted current algebras."""

from .errors import BlockadeError
from .rootsys import RootSystem, Weight, build_root_system, fundamental_group_coset
from .repthy import prv_adjoint_multiplicity, tensor_decompose, weyl_dimension
from .twistblocks import (
    EvalModuleDescriptor,
    OrbitSpace,
    ext_dim,
    linkage_chain,
    same_block,
    spectral_character,
)
from .margaux import margaux_block, margaux_canonical_point

__all__ = [
    'BlockadeError',
    'RootSystem',
    'Weight',
    'build_root_system',
    'fundamental_group_coset',
    'prv_adjoint_multiplicity',
    'tensor_decompose',
    'weyl_dimension',
    'EvalModuleDescriptor',
    'OrbitSpace',
    'ext_dim',
    'linkage_chain',
    'same_block',
    'spectral_character',
    'margaux_block',
    'margaux_canonical_point',
]
