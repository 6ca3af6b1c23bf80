"""Representation-theoretic quantities for simple Lie algebras.

Everything here is exact. Inner products are carried as integers by
scaling (alpha_k, alpha_k)/2 with the least common denominator, which
cancels in every ratio that is taken.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterator, Optional

from .errors import DimensionCheckError, NotDominantError
from .rootsys import (
    RootSystem,
    Vector,
    Weight,
    is_integral,
    rho_shifted_conjugate,
    root_string_upper_bound,
    root_to_weight,
    to_dominant_chamber,
    weight_in_root_coords,
)
from .settings import get_settings
from .weight_cache import WeightDiagramCache

logger = logging.getLogger(__name__)


@dataclass
class WeightMultiset:
    """Finite map from weights to strictly positive multiplicities."""
    entries: Dict[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        for w, m in self.entries.items():
            if m <= 0:
                raise ValueError(f"Multiplicity of {w} must be positive, got {m}")

    def multiplicity(self, w: Weight) -> int:
        return self.entries.get(w, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def dimension(self, rs: RootSystem) -> int:
        """Sum of mult(nu) * dim L(nu), for a multiset of dominant weights."""
        return sum(m * weyl_dimension(rs, w) for w, m in self.entries.items())

    def sorted_items(self) -> list[tuple[Weight, int]]:
        return sorted(self.entries.items(), key=lambda item: item[0].coords, reverse=True)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.entries)


_cache: Optional[WeightDiagramCache[Dict[Vector, int]]] = None
_cache_lock = threading.Lock()


def diagram_cache() -> WeightDiagramCache[Dict[Vector, int]]:
    """The shared weight-diagram cache, sized from the settings on first use."""
    global _cache
    with _cache_lock:
        if _cache is None:
            _cache = WeightDiagramCache(get_settings().cache_limit)
        return _cache


def configure_cache(max_entries: int) -> None:
    """Resize the shared cache (0 disables it)."""
    diagram_cache().resize(max_entries)


def _require_dominant(rs: RootSystem, w: Weight, what: str = "weight") -> None:
    rs.check_weight(w)
    if not w.is_dominant():
        raise NotDominantError(f"{what} {w} is not dominant for {rs.name}")


def _scaled_norms(rs: RootSystem) -> Vector:
    scale = lcm(*(d.denominator for d in rs.half_norms))
    return tuple(int(d * scale) for d in rs.half_norms)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Dimension of L(lam) by the Weyl dimension formula."""
    _require_dominant(rs, lam)
    e = _scaled_norms(rs)
    dim = Fraction(1)
    for beta in rs.positive_roots:
        top = sum(c * (l + 1) * ek for c, l, ek in zip(beta, lam.coords, e))
        bottom = sum(c * ek for c, ek in zip(beta, e))
        dim *= Fraction(top, bottom)
    if dim.denominator != 1:
        raise DimensionCheckError(f"Weyl dimension of {lam} for {rs.name} is not integral: {dim}")
    return int(dim)


def _freudenthal(rs: RootSystem, lam: Vector) -> Dict[Vector, int]:
    rank = rs.rank
    cartan = rs.cartan
    e = _scaled_norms(rs)
    simple_w = [tuple(cartan[k][i] for k in range(rank)) for i in range(rank)]
    roots = []
    for beta in rs.positive_roots:
        bw = tuple(sum(cartan[k][j] * beta[j] for j in range(rank)) for k in range(rank))
        g = tuple(c * ek for c, ek in zip(beta, e))
        roots.append((bw, sum(beta), g))

    mult: Dict[Vector, int] = {lam: 1}
    level: list[tuple[Vector, Vector]] = [(lam, (0,) * rank)]
    depth = 0
    while level:
        depth += 1
        candidates: Dict[Vector, Vector] = {}
        for mu0, n0 in level:
            for i in range(rank):
                mu = tuple(a - b for a, b in zip(mu0, simple_w[i]))
                if mu in candidates:
                    continue
                n = list(n0)
                n[i] += 1
                candidates[mu] = tuple(n)

        following = []
        for mu, n in sorted(candidates.items(), reverse=True):
            num = 0
            for bw, height, g in roots:
                k = 1
                while k * height <= depth:
                    nu = tuple(a + k * b for a, b in zip(mu, bw))
                    m = mult.get(nu)
                    if m:
                        num += m * sum(x * y for x, y in zip(nu, g))
                    k += 1
            if num == 0:
                continue
            den = sum(nk * ek * (lk + mk + 2) for nk, ek, lk, mk in zip(n, e, lam, mu))
            m, rem = divmod(2 * num, den)
            if rem or m <= 0:
                raise DimensionCheckError(
                    f"Freudenthal recursion gave non-integral multiplicity {2 * num}/{den} at {mu}"
                )
            mult[mu] = m
            following.append((mu, n))
        level = following
    return mult


def _diagram(rs: RootSystem, lam: Weight) -> Dict[Vector, int]:
    key = (rs.type_letter, rs.rank, lam.coords)

    def compute() -> Dict[Vector, int]:
        diagram = _freudenthal(rs, lam.coords)
        total = sum(diagram.values())
        expected = weyl_dimension(rs, lam)
        if total != expected:
            raise DimensionCheckError(
                f"Weight diagram of {lam} for {rs.name} has total multiplicity {total}, "
                f"Weyl dimension is {expected}"
            )
        logger.debug(f"Weight diagram of {lam} for {rs.name}: {len(diagram)} weights, dim {total}")
        return diagram

    return diagram_cache().get_or_compute(key, compute)


def freudenthal_multiplicities(rs: RootSystem, lam: Weight) -> WeightMultiset:
    """Full weight diagram of L(lam) with multiplicities.

    Raises:
        NotDominantError: if lam is not dominant.
    """
    _require_dominant(rs, lam)
    return WeightMultiset({Weight(w): m for w, m in _diagram(rs, lam).items()})


def tensor_decompose(rs: RootSystem, lam: Weight, mu: Weight) -> WeightMultiset:
    """Decompose L(lam) (x) L(mu) into irreducibles by Klimyk's formula.

    The weight diagram of the smaller factor is folded onto the highest
    weight of the other one.
    """
    _require_dominant(rs, lam, "lam")
    _require_dominant(rs, mu, "mu")
    dim_lam = weyl_dimension(rs, lam)
    dim_mu = weyl_dimension(rs, mu)
    small, big = (lam, mu) if dim_lam <= dim_mu else (mu, lam)

    acc: Dict[Vector, int] = {}
    base = big.coords
    for w, m in _diagram(rs, small).items():
        folded = rho_shifted_conjugate(rs, tuple(a + b for a, b in zip(base, w)))
        if folded is None:
            continue
        nu, parity = folded
        acc[nu] = acc.get(nu, 0) + parity * m

    result: Dict[Weight, int] = {}
    for nu, m in acc.items():
        if m < 0:
            raise DimensionCheckError(f"Negative multiplicity {m} for {nu} in {lam} (x) {mu}")
        if m:
            result[Weight(nu)] = m
    decomposition = WeightMultiset(result)
    total = decomposition.dimension(rs)
    if total != dim_lam * dim_mu:
        raise DimensionCheckError(
            f"{lam} (x) {mu} for {rs.name}: constituents have dimension {total}, "
            f"expected {dim_lam} * {dim_mu}"
        )
    return decomposition


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """Highest weight -w0(lam) of the dual module."""
    _require_dominant(rs, lam)
    coords, _ = to_dominant_chamber(rs, tuple(-c for c in lam.coords))
    return Weight(coords)


def adjoint_weight(rs: RootSystem) -> Weight:
    """Highest weight of the adjoint module (the highest root)."""
    return root_to_weight(rs, rs.highest_root)


def prv_adjoint_multiplicity(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """Multiplicity c(lam, mu) of the adjoint module in L(lam)* (x) L(mu).

    By the PRV formula this is the dimension of the space of v in the
    (mu - lam)-weight space of the adjoint module killed by every
    e_i^(lam_i + 1). Root vectors are handled through root strings:
    ad(e_i)^k e_beta vanishes exactly when k exceeds the upper bound of
    the alpha_i-string through beta.
    """
    _require_dominant(rs, lam, "lam")
    _require_dominant(rs, mu, "mu")
    delta = weight_in_root_coords(rs, mu - lam)
    if not is_integral(delta):
        return 0
    beta = tuple(int(c) for c in delta)
    if not any(beta):
        # Cartan part: h with alpha_i(h) = 0 whenever lam_i = 0
        return sum(1 for c in lam.coords if c > 0)
    if not rs.is_root(beta):
        return 0
    for i, li in enumerate(lam.coords):
        if li + 1 <= root_string_upper_bound(rs, beta, i):
            return 0
    return 1


def adjoint_multiplicity_oracle(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """c(lam, mu) read off the full decomposition of L(lam)* (x) L(mu)."""
    decomposition = tensor_decompose(rs, dual_weight(rs, lam), mu)
    return decomposition.multiplicity(adjoint_weight(rs))
