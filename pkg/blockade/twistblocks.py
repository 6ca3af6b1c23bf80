"""Extensions and blocks for finite-dimensional modules of twisted forms.

A simple evaluation module is given by a finitely supported, Gamma-invariant
assignment of dominant weights to points of Max S. Only the finite window
of points a computation touches is ever presented, together with the
action of Gamma on it (``OrbitSpace``). Weights live on orbits; any point
of an orbit may be used to name it, and ``OrbitSpace.canonicalize``
replaces it by the least point identifier of its orbit.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DescriptorError, NotDominantError, OrbitSpaceError, SearchBoundError
from .repthy import prv_adjoint_multiplicity
from .rootsys import (
    FundamentalGroupElement,
    RootSystem,
    Vector,
    Weight,
    fundamental_group_coset,
    root_to_weight,
)

logger = logging.getLogger(__name__)

PointMap = Mapping[str, str]


class OrbitSpace:
    """Finite window of Max S with a Gamma-action and cotangent dimensions.

    Args:
        points: point identifiers.
        generators: permutations generating Gamma on the window; points a
            generator does not mention are fixed by it.
        cotangent: cotangent dimension d_M, keyed by exactly one point of
            each orbit.

    Raises:
        OrbitSpaceError: if a generator is not a bijection of the points,
            or cotangent data is missing, duplicated or not positive.
    """

    def __init__(self, points: Iterable[str], generators: Iterable[PointMap] = (),
                 cotangent: Optional[Mapping[str, int]] = None):
        pts = [str(p) for p in points]
        if len(set(pts)) != len(pts):
            raise OrbitSpaceError("Duplicate point identifiers in orbit space")
        self._points: Tuple[str, ...] = tuple(sorted(pts))
        point_set = set(self._points)

        gens = []
        for index, gen in enumerate(generators):
            full = {p: p for p in self._points}
            for src, dst in gen.items():
                if src not in point_set or dst not in point_set:
                    raise OrbitSpaceError(
                        f"Generator {index} maps {src!r} to {dst!r}, outside the point set")
                full[src] = dst
            if len(set(full.values())) != len(full):
                raise OrbitSpaceError(f"Generator {index} is not a bijection of the points")
            gens.append(full)
        self._generators: Tuple[Dict[str, str], ...] = tuple(gens)

        parent = {p: p for p in self._points}

        def find(p: str) -> str:
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for gen in self._generators:
            for src, dst in gen.items():
                a, b = find(src), find(dst)
                if a != b:
                    parent[max(a, b)] = min(a, b)

        self._rep_of: Dict[str, str] = {}
        orbits: Dict[str, List[str]] = {}
        for p in self._points:
            orbits.setdefault(find(p), []).append(p)
        for members in orbits.values():
            rep = min(members)
            for p in members:
                self._rep_of[p] = rep
        self._orbits: Dict[str, Tuple[str, ...]] = {
            min(members): tuple(sorted(members)) for members in orbits.values()
        }

        self._cotangent: Dict[str, int] = {}
        for point, d in (cotangent or {}).items():
            if point not in point_set:
                raise OrbitSpaceError(f"Cotangent dimension given for unknown point {point!r}")
            if not isinstance(d, int) or isinstance(d, bool) or d <= 0:
                raise OrbitSpaceError(f"Cotangent dimension at {point!r} must be a positive integer, got {d!r}")
            rep = self._rep_of[point]
            if rep in self._cotangent:
                raise OrbitSpaceError(f"Cotangent dimension given twice for the orbit of {rep!r}")
            self._cotangent[rep] = d
        missing = [rep for rep in self._orbits if rep not in self._cotangent]
        if missing:
            raise OrbitSpaceError(f"No cotangent dimension for the orbit(s) of {', '.join(sorted(missing))}")

    @classmethod
    def free_orbit(cls, size: int, cotangent: int = 1, prefix: str = "M") -> "OrbitSpace":
        """One orbit on which a cyclic group of order ``size`` acts freely."""
        points = [f"{prefix}{k}" for k in range(size)]
        shift = {points[k]: points[(k + 1) % size] for k in range(size)}
        return cls(points, [shift], {points[0]: cotangent})

    @classmethod
    def torus_points(cls, count: int, n: int, group_order: int = 1, prefix: str = "z") -> "OrbitSpace":
        """``count`` orbits of smooth points on an n-dimensional torus (d_M = n).

        Each orbit has ``group_order`` points, permuted cyclically.
        """
        points = []
        shift: Dict[str, str] = {}
        cotangent: Dict[str, int] = {}
        for k in range(count):
            orbit = [f"{prefix}{k}.{j}" for j in range(group_order)]
            points.extend(orbit)
            cotangent[orbit[0]] = n
            for j in range(group_order):
                shift[orbit[j]] = orbit[(j + 1) % group_order]
        generators = [shift] if group_order > 1 else []
        return cls(points, generators, cotangent)

    @classmethod
    def loop_points(cls, count: int, twist: int = 1, prefix: str = "z") -> "OrbitSpace":
        """Points of C^x for a (possibly twisted) loop algebra; d_M is always 1."""
        return cls.torus_points(count, 1, group_order=twist, prefix=prefix)

    @property
    def points(self) -> Tuple[str, ...]:
        return self._points

    @property
    def generators(self) -> Tuple[Dict[str, str], ...]:
        return self._generators

    def orbits(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(self._orbits[rep] for rep in sorted(self._orbits))

    def __contains__(self, point: object) -> bool:
        return point in self._rep_of

    def representative(self, point: str) -> str:
        try:
            return self._rep_of[point]
        except KeyError:
            raise DescriptorError(f"Unknown point {point!r}") from None

    def cotangent(self, point: str) -> int:
        return self._cotangent[self.representative(point)]

    def apply(self, generator: int, point: str) -> str:
        return self._generators[generator][point]

    def canonicalize(self, desc: "EvalModuleDescriptor",
                     rs: Optional[RootSystem] = None) -> "EvalModuleDescriptor":
        """Re-key a descriptor by orbit representatives.

        Raises:
            DescriptorError: unknown point, or two entries in one orbit.
            WeightRankError: if ``rs`` is given and a weight has the wrong rank.
        """
        out: Dict[str, Weight] = {}
        named: Dict[str, str] = {}
        for point, w in desc.assignments:
            rep = self.representative(point)
            if rep in out:
                raise DescriptorError(
                    f"Points {named[rep]!r} and {point!r} lie in the same orbit", path=point)
            if rs is not None:
                rs.check_weight(w)
            out[rep] = w
            named[rep] = point
        return EvalModuleDescriptor(out)

    def to_dict(self) -> dict:
        generators = []
        for gen in self._generators:
            generators.append({p: q for p, q in gen.items() if p != q})
        return {
            "points": list(self._points),
            "generators": generators,
            "cotangent": dict(sorted(self._cotangent.items())),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrbitSpace):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"OrbitSpace({len(self._points)} points, {len(self._orbits)} orbits)"


@dataclass(frozen=True)
class EvalModuleDescriptor:
    """Finitely supported assignment point -> dominant weight.

    Zero weights are dropped, so the stored keys are the support.
    """
    assignments: Tuple[Tuple[str, Weight], ...]

    def __init__(self, assignments: Union[Mapping[str, Weight], Iterable[Tuple[str, Weight]]] = ()):
        items = assignments.items() if isinstance(assignments, Mapping) else assignments
        seen: Dict[str, Weight] = {}
        for point, w in items:
            point = str(point)
            if not isinstance(w, Weight):
                w = Weight(tuple(w))
            if point in seen:
                raise DescriptorError(f"Point {point!r} assigned twice", path=point)
            if not w.is_dominant():
                raise NotDominantError(f"Weight {w} at {point!r} is not dominant")
            seen[point] = w
        stored = tuple(sorted((p, w) for p, w in seen.items() if not w.is_zero()))
        object.__setattr__(self, "assignments", stored)

    def support(self) -> Tuple[str, ...]:
        return tuple(p for p, _ in self.assignments)

    def weight_at(self, point: str, rank: int) -> Weight:
        for p, w in self.assignments:
            if p == point:
                return w
        return Weight.zero(rank)

    def as_dict(self) -> Dict[str, Weight]:
        return dict(self.assignments)

    def __len__(self) -> int:
        return len(self.assignments)

    def __str__(self) -> str:
        if not self.assignments:
            return "{}"
        return "{" + ", ".join(f"{p}: {w}" for p, w in self.assignments) + "}"


@dataclass(frozen=True)
class SpectralCharacter:
    """Finitely supported map from orbit representatives to nontrivial P/Q cosets."""
    assignments: Tuple[Tuple[str, FundamentalGroupElement], ...]

    def __post_init__(self):
        if any(g.is_identity for _, g in self.assignments):
            raise ValueError("Spectral characters never store identity cosets")

    def support(self) -> Tuple[str, ...]:
        return tuple(p for p, _ in self.assignments)

    def as_dict(self) -> Dict[str, Vector]:
        return {p: g.canonical_rep for p, g in self.assignments}

    def __str__(self) -> str:
        if not self.assignments:
            return "{}"
        return "{" + ", ".join(f"{p}: {g}" for p, g in self.assignments) + "}"


def _prepare(rs: RootSystem, ospace: Optional[OrbitSpace],
             desc: EvalModuleDescriptor) -> EvalModuleDescriptor:
    if ospace is None:
        for _, w in desc.assignments:
            rs.check_weight(w)
        return desc
    return ospace.canonicalize(desc, rs)


def spectral_character(rs: RootSystem, desc: EvalModuleDescriptor,
                       ospace: Optional[OrbitSpace] = None) -> SpectralCharacter:
    """Per-orbit P/Q class of the assigned weights, identity classes dropped.

    Without an orbit space the descriptor's points are taken to be orbit
    representatives already.
    """
    desc = _prepare(rs, ospace, desc)
    entries = []
    for point, w in desc.assignments:
        coset = fundamental_group_coset(rs, w)
        if not coset.is_identity:
            entries.append((point, coset))
    return SpectralCharacter(tuple(entries))


def local_ext_dim(rs: RootSystem, lam: Weight, mu: Weight, cotangent: int) -> int:
    """dim Ext^1(L(lam, M), L(mu, M)) = c(lam, mu) * d_M at a single orbit."""
    return prv_adjoint_multiplicity(rs, lam, mu) * cotangent


def ext_dim(rs: RootSystem, ospace: OrbitSpace,
            E: EvalModuleDescriptor, F: EvalModuleDescriptor) -> int:
    """dim Ext^1(E, F) for simple evaluation modules of a twisted form.

    - sections differing on two or more orbits: 0;
    - differing on exactly one orbit M: c(lam_M, mu_M) * d_M;
    - equal sections: sum over the support of c(lam_M, lam_M) * d_M
      (twisted forms are perfect, so no abelianization correction).

    Raises:
        DescriptorError: if a descriptor names an unknown point.
    """
    E = ospace.canonicalize(E, rs)
    F = ospace.canonicalize(F, rs)
    e_map = E.as_dict()
    f_map = F.as_dict()
    zero = Weight.zero(rs.rank)
    support = sorted(set(e_map) | set(f_map))
    differing = [M for M in support if e_map.get(M, zero) != f_map.get(M, zero)]
    if len(differing) >= 2:
        return 0
    if len(differing) == 1:
        M = differing[0]
        return local_ext_dim(rs, e_map.get(M, zero), f_map.get(M, zero), ospace.cotangent(M))
    return sum(local_ext_dim(rs, lam, lam, ospace.cotangent(M)) for M, lam in e_map.items())


def same_block(rs: RootSystem, ospace: OrbitSpace,
               E: EvalModuleDescriptor, F: EvalModuleDescriptor) -> bool:
    """True iff E and F have the same spectral character."""
    return spectral_character(rs, E, ospace) == spectral_character(rs, F, ospace)


def linkage_chain(rs: RootSystem, ospace: OrbitSpace, E: EvalModuleDescriptor,
                  F: EvalModuleDescriptor, weight_bound: int) -> Optional[List[EvalModuleDescriptor]]:
    """Shortest chain E = T0, ..., TN = F of nonvanishing Ext^1 steps.

    The search is breadth-first over descriptors supported on
    supp(E) | supp(F) whose coordinates lie in [0, weight_bound]. A step
    never changes more than one orbit, since Ext^1 vanishes between
    sections that differ on two or more orbits.

    Returns:
        The chain as canonical descriptors, or None if none exists inside
        the window.

    Raises:
        SearchBoundError: if weight_bound is below a coordinate of E or F.
    """
    E = ospace.canonicalize(E, rs)
    F = ospace.canonicalize(F, rs)
    if weight_bound < 1:
        raise SearchBoundError(f"Weight bound must be positive, got {weight_bound}")
    largest = max((c for d in (E, F) for _, w in d.assignments for c in w.coords), default=0)
    if weight_bound < largest:
        raise SearchBoundError(
            f"Weight bound {weight_bound} is below the largest coordinate {largest} of the endpoints")
    if E == F:
        return [E]

    orbits = sorted(set(E.support()) | set(F.support()))
    rank = rs.rank
    zero = (0,) * rank
    d = [ospace.cotangent(M) for M in orbits]
    root_shifts = [root_to_weight(rs, r).coords for r in rs.all_roots()]

    def state_of(desc: EvalModuleDescriptor) -> Tuple[Vector, ...]:
        m = desc.as_dict()
        return tuple(m[M].coords if M in m else zero for M in orbits)

    def linked(lam: Vector, mu: Vector, cot: int) -> bool:
        a, b = Weight(lam), Weight(mu)
        return local_ext_dim(rs, a, b, cot) > 0 or local_ext_dim(rs, b, a, cot) > 0

    start, goal = state_of(E), state_of(F)
    previous: Dict[Tuple[Vector, ...], Optional[Tuple[Vector, ...]]] = {start: None}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        for k, lam in enumerate(state):
            for shift in root_shifts:
                mu = tuple(a + b for a, b in zip(lam, shift))
                if any(c < 0 or c > weight_bound for c in mu):
                    continue
                nxt = state[:k] + (mu,) + state[k + 1:]
                if nxt in previous or not linked(lam, mu, d[k]):
                    continue
                previous[nxt] = state
                if nxt == goal:
                    return _unwind(previous, goal, orbits)
                frontier.append(nxt)
    logger.debug(f"Linkage search exhausted {len(previous)} descriptors without reaching {F}")
    return None


def _unwind(previous: Mapping, goal: Tuple[Vector, ...], orbits: Sequence[str]) -> List[EvalModuleDescriptor]:
    path = []
    state: Optional[Tuple[Vector, ...]] = goal
    while state is not None:
        path.append(EvalModuleDescriptor({M: Weight(w) for M, w in zip(orbits, state)}))
        state = previous[state]
    path.reverse()
    return path


def ext_matrix(rs: RootSystem, ospace: OrbitSpace,
               modules: Sequence[EvalModuleDescriptor]) -> List[List[int]]:
    """Matrix of dim Ext^1(modules[i], modules[j])."""
    return [[ext_dim(rs, ospace, E, F) for F in modules] for E in modules]


def block_partition(rs: RootSystem, ospace: OrbitSpace, modules: Sequence[EvalModuleDescriptor],
                    map_fn: Callable = map) -> List[Tuple[SpectralCharacter, List[int]]]:
    """Group module indices by spectral character, in order of first appearance.

    ``map_fn`` must preserve order; ``Executor.map`` qualifies.
    """
    characters = map_fn(lambda desc: spectral_character(rs, desc, ospace), modules)
    groups: Dict[SpectralCharacter, List[int]] = {}
    for index, character in enumerate(characters):
        groups.setdefault(character, []).append(index)
    return list(groups.items())
