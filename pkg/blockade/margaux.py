"""Blocks of the Margaux algebra.

The Margaux algebra is the twisted form of sl_2 over the Laurent
polynomials in two variables whose Gamma = Z/2 x Z/2 acts by the sign
flips (a, b) -> (-a, b) and (a, b) -> (a, -b). A point of the 2-torus is
a pair of nonzero complex numbers; here those are Gaussian rationals so
that the choice of orbit representative in C+ x C+ is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import DescriptorError, MargauxOrbitCollisionError, NotDominantError
from .rootsys import Weight, build_root_system, fundamental_group_coset
from .twistblocks import EvalModuleDescriptor, OrbitSpace

logger = logging.getLogger(__name__)

# cotangent dimension at a smooth point of the 2-torus
MARGAUX_COTANGENT_DIM = 2

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts."""
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def from_json(cls, data: Mapping) -> "GaussianRational":
        """Build from ``{"re": [num, den], "im": [num, den]}``.

        A part may also be given as a bare integer; a missing ``im`` is 0.
        """
        return cls(_parse_part(data.get("re", 0), "re"), _parse_part(data.get("im", 0), "im"))

    def to_json(self) -> dict:
        return {
            "re": [self.re.numerator, self.re.denominator],
            "im": [self.im.numerator, self.im.denominator],
        }

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def in_upper(self) -> bool:
        """True in C+: positive imaginary part, or real and positive."""
        return self.im > 0 or (self.im == 0 and self.re > 0)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _parse_part(value, name: str) -> Fraction:
    if isinstance(value, bool):
        raise DescriptorError(f"Complex part {name!r} must be a number pair, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(x, int) and not isinstance(x, bool) for x in value):
        if value[1] == 0:
            raise DescriptorError(f"Complex part {name!r} has zero denominator")
        return Fraction(value[0], value[1])
    raise DescriptorError(f"Complex part {name!r} must be [num, den], got {value!r}")


def gaussian(re: Rational, im: Rational = 0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


@dataclass(frozen=True, order=True)
class MargauxPoint:
    """A point (a, b) of the complex 2-torus."""
    a: GaussianRational
    b: GaussianRational

    def __post_init__(self):
        if self.a.is_zero() or self.b.is_zero():
            raise DescriptorError(f"{self} is not a point of the torus: coordinates must be nonzero")

    def is_canonical(self) -> bool:
        return self.a.in_upper() and self.b.in_upper()

    def orbit(self) -> Tuple["MargauxPoint", ...]:
        """The four sign flips of this point."""
        return tuple(MargauxPoint(sa, sb) for sa in (self.a, -self.a) for sb in (self.b, -self.b))

    def label(self) -> str:
        return f"({self.a},{self.b})"

    def to_json(self) -> list:
        return [self.a.to_json(), self.b.to_json()]

    def __str__(self) -> str:
        return self.label()


def point(a: Union[GaussianRational, Rational], b: Union[GaussianRational, Rational]) -> MargauxPoint:
    """Shorthand: real coordinates may be passed as plain numbers."""
    a = a if isinstance(a, GaussianRational) else gaussian(a)
    b = b if isinstance(b, GaussianRational) else gaussian(b)
    return MargauxPoint(a, b)


def margaux_canonical_point(p: MargauxPoint) -> MargauxPoint:
    """Flip the sign of each coordinate independently so both lie in C+."""
    a = p.a if p.a.in_upper() else -p.a
    b = p.b if p.b.in_upper() else -p.b
    return MargauxPoint(a, b)


@dataclass(frozen=True)
class MargauxBlockDescriptor:
    """Finite set of (canonical point, m) with m in {0, 1}, sorted by point."""
    entries: Tuple[Tuple[MargauxPoint, int], ...] = ()

    def __post_init__(self):
        entries = tuple(sorted(self.entries))
        seen = set()
        for p, m in entries:
            if not p.is_canonical():
                raise DescriptorError(f"Block descriptor point {p} is not in C+ x C+")
            if m not in (0, 1):
                raise DescriptorError(f"Block descriptor parity at {p} must be 0 or 1, got {m}")
            if p in seen:
                raise DescriptorError(f"Block descriptor lists {p} twice")
            seen.add(p)
        object.__setattr__(self, "entries", entries)

    def points(self) -> Tuple[MargauxPoint, ...]:
        return tuple(p for p, _ in self.entries)

    def to_json(self) -> list:
        return [{"point": p.to_json(), "label": p.label(), "m": m} for p, m in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


MargauxModules = Sequence[Tuple[MargauxPoint, int]]


def _check_distinct_orbits(modules: MargauxModules) -> List[Tuple[MargauxPoint, int]]:
    canonical: List[Tuple[MargauxPoint, int]] = []
    owner = {}
    for p, m in modules:
        if m < 0:
            raise NotDominantError(f"Weight {m} at {p} is not dominant")
        c = margaux_canonical_point(p)
        if c in owner:
            first = owner[c]
            raise MargauxOrbitCollisionError(
                f"Points {first} and {p} lie in the same sign-flip orbit {c}", first, p)
        owner[c] = p
        canonical.append((c, m))
    return canonical


def margaux_block(modules: MargauxModules) -> MargauxBlockDescriptor:
    """Block of the simple module with weight m at each listed point.

    Each weight is reduced to its class in P/Q = Z/2 for sl_2; entries in
    the trivial class drop out.

    Raises:
        MargauxOrbitCollisionError: if two inputs share a sign-flip orbit.
    """
    rs = build_root_system("A", 1)
    entries = []
    for c, m in _check_distinct_orbits(modules):
        coset = fundamental_group_coset(rs, Weight.of(m))
        if not coset.is_identity:
            entries.append((c, coset.canonical_rep[0]))
    return MargauxBlockDescriptor(tuple(entries))


def margaux_same_block(first: MargauxModules, second: MargauxModules) -> bool:
    return margaux_block(first) == margaux_block(second)


def margaux_orbit_space(points: Iterable[MargauxPoint]) -> OrbitSpace:
    """Sign-flip orbits of the given points as an OrbitSpace with d_M = 2.

    Points are identified by their labels; orbits sharing a canonical
    point are listed once.
    """
    canonical = sorted({margaux_canonical_point(p) for p in points})
    labels: List[str] = []
    flip_a = {}
    flip_b = {}
    cotangent = {}
    for c in canonical:
        for p in c.orbit():
            labels.append(p.label())
            flip_a[p.label()] = MargauxPoint(-p.a, p.b).label()
            flip_b[p.label()] = MargauxPoint(p.a, -p.b).label()
        cotangent[c.label()] = MARGAUX_COTANGENT_DIM
    logger.debug(f"Margaux orbit space with {len(canonical)} orbits")
    return OrbitSpace(labels, [flip_a, flip_b], cotangent)


def margaux_modules(modules: MargauxModules) -> Tuple[OrbitSpace, EvalModuleDescriptor]:
    """Present Margaux modules as an evaluation descriptor over their orbit space."""
    _check_distinct_orbits(modules)
    ospace = margaux_orbit_space(p for p, _ in modules)
    desc = EvalModuleDescriptor({p.label(): Weight.of(m) for p, m in modules})
    return ospace, desc
