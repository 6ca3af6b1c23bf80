"""Rule engine for Ext^1 between simple modules of small Lie algebras.

Covers abelian algebras, reductive algebras Z + S (Ext over S vanishes
by Weyl's theorem), direct sums, the trivial-module column, and the
separation of non-evaluation characters for general twisted current
algebras. Central characters and non-evaluation characters are opaque
labels compared only for equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .errors import InconsistentExtDataError, NotDominantError
from .rootsys import RootSystem, Weight
from .twistblocks import (
    EvalModuleDescriptor,
    OrbitSpace,
    SpectralCharacter,
    ext_dim,
    spectral_character,
)

INFINITE = "infinite"

Dimension = Union[int, str]


def _check_dimension(value: Dimension, allow_infinite: bool) -> None:
    if value == INFINITE:
        if allow_infinite:
            return
        raise ValueError("An infinite dimension is only accepted by ext_onedim_abelian")
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"Dimension must be a nonnegative integer, got {value!r}")


@dataclass(frozen=True)
class ReductiveSimpleDescriptor:
    """Simple module k_lambda (x) V_S of a reductive Lie algebra Z + S.

    ``semisimple_part`` is None for the trivial S-module.
    """
    central_char: Hashable
    semisimple_part: Optional[Tuple[RootSystem, Weight]] = None

    def __post_init__(self):
        if self.semisimple_part is not None:
            rs, w = self.semisimple_part
            rs.check_weight(w)
            if not w.is_dominant():
                raise NotDominantError(f"Weight {w} of the semisimple part is not dominant")
            if w.is_zero():
                object.__setattr__(self, "semisimple_part", None)

    @property
    def is_trivial_on_semisimple(self) -> bool:
        return self.semisimple_part is None


@dataclass(frozen=True)
class GeneralSimpleDescriptor:
    """Simple module of a twisted current algebra: (non-evaluation label, evaluation part)."""
    nonev_label: Hashable
    ev_part: EvalModuleDescriptor


def ext_onedim_abelian(dim_z: Dimension, lam_label: Hashable, mu_label: Hashable) -> Dimension:
    """dim Ext^1(k_lam, k_mu) over an abelian Lie algebra Z: dim Z* if lam = mu, else 0."""
    _check_dimension(dim_z, allow_infinite=True)
    return dim_z if lam_label == mu_label else 0


def ext_direct_sum(iso_1: bool, iso_2: bool, ext_1: int, ext_2: int) -> int:
    """Ext^1 over L1 + L2 between V1 (x) V2 and W1 (x) W2.

    Args:
        iso_1: whether V1 and W1 are isomorphic.
        iso_2: whether V2 and W2 are isomorphic.
        ext_1: dim Ext^1 over L1 of (V1, W1).
        ext_2: dim Ext^1 over L2 of (V2, W2).
    """
    _check_dimension(ext_1, allow_infinite=False)
    _check_dimension(ext_2, allow_infinite=False)
    if iso_1 and iso_2:
        return ext_1 + ext_2
    if iso_1:
        return ext_2
    if iso_2:
        return ext_1
    return 0


def ext_reductive_simple(dim_z: int, rs: Optional[RootSystem],
                         A: ReductiveSimpleDescriptor, B: ReductiveSimpleDescriptor) -> int:
    """Ext^1 over Z + S between simple modules.

    The direct-sum table with the S column zeroed by Weyl's theorem:
    dim Z when A = B, 0 otherwise.
    """
    _check_dimension(dim_z, allow_infinite=False)
    for desc in (A, B):
        if desc.semisimple_part is not None and rs is not None and desc.semisimple_part[0] != rs:
            raise ValueError(f"Semisimple part of {desc} is not over {rs.name}")
    same_center = A.central_char == B.central_char
    same_semisimple = A.semisimple_part == B.semisimple_part
    center_ext = ext_onedim_abelian(dim_z, A.central_char, B.central_char)
    return ext_direct_sum(same_center, same_semisimple, center_ext, 0)


def ext_trivial_vs_simple(dim_z: int, V_nontrivial: bool) -> int:
    """Ext^1(k, V) for the trivial module k and a simple V: 0 unless V is trivial on g."""
    _check_dimension(dim_z, allow_infinite=False)
    return 0 if V_nontrivial else dim_z


def ext_general_simple(rs: RootSystem, ospace: OrbitSpace,
                       A: GeneralSimpleDescriptor, B: GeneralSimpleDescriptor) -> int:
    """Ext^1 vanishes unless the non-evaluation labels agree; then it is the evaluation Ext."""
    if A.nonev_label != B.nonev_label:
        return 0
    return ext_dim(rs, ospace, A.ev_part, B.ev_part)


def keythmext_case3_general(ext_dims: Sequence[int], r: int, dim_quot: int) -> int:
    """Ext^1(E, F) from the factorwise Ext^1(E_i, F_i) when E and F agree at every factor.

    sum(ext_dims) = dim Ext^1(E, F) + (r - 1) * dim (L/L')*.

    Raises:
        InconsistentExtDataError: if the lengths disagree or the sum is too small.
    """
    if not isinstance(r, int) or r < 1:
        raise InconsistentExtDataError(f"Number of factors must be positive, got {r!r}")
    _check_dimension(dim_quot, allow_infinite=False)
    dims = list(ext_dims)
    for d in dims:
        _check_dimension(d, allow_infinite=False)
    if len(dims) != r:
        raise InconsistentExtDataError(f"Expected {r} Ext dimensions, got {len(dims)}")
    total = sum(dims)
    correction = (r - 1) * dim_quot
    if total < correction:
        raise InconsistentExtDataError(
            f"Factor Ext dimensions sum to {total}, below the correction {correction}")
    return total - correction


def general_block_key(rs: RootSystem, A: GeneralSimpleDescriptor,
                      ospace: Optional[OrbitSpace] = None) -> Tuple[SpectralCharacter, Hashable]:
    """Block of a simple module of the full category: (spectral character, non-evaluation label)."""
    return spectral_character(rs, A.ev_part, ospace), A.nonev_label


def general_blocks(rs: RootSystem, ospace: OrbitSpace,
                   modules: Sequence[GeneralSimpleDescriptor]) -> List[Tuple[Tuple[SpectralCharacter, Hashable], List[int]]]:
    """Group module indices by block key, in order of first appearance."""
    groups: Dict[Tuple[SpectralCharacter, Hashable], List[int]] = {}
    for index, desc in enumerate(modules):
        groups.setdefault(general_block_key(rs, desc, ospace), []).append(index)
    return list(groups.items())
