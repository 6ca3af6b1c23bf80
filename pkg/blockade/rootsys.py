"""Exact root systems of finite type.

Conventions (fixed for the whole package):

- Bourbaki node numbering; Dynkin node ``i`` is index ``i - 1`` here.
- ``cartan[i][j] = <alpha_j, alpha_i^vee>``: rows are indexed by coroots,
  so column ``j`` is the simple root ``alpha_j`` in fundamental-weight
  coordinates.
- Weights are integer vectors in the fundamental-weight basis; roots are
  integer vectors in the simple-root basis.
- Long roots have squared length 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .constants import BlockadeConstants
from .errors import InvalidRootSystemError, NotARootError, WeightRankError
from .lattice import determinant, int_matrix, mat_vec, rational_inverse, smith_normal_form

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]

TYPE_LETTERS = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class Weight:
    """Integral weight in fundamental-weight coordinates."""
    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse the CLI syntax ``"1,0,2"``."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(p == "" for p in parts):
            raise ValueError(f"Malformed weight: {text!r}")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"Malformed weight: {text!r}") from None

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check_same_rank(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise WeightRankError(f"Cannot combine weight {self} of rank {self.rank} with {other} of rank {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_same_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_same_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class FundamentalGroupElement:
    """Canonical coset of a weight in P/Q.

    ``group_shape`` lists the nontrivial cyclic factors of P/Q (from the
    Smith normal form of the Cartan matrix); ``canonical_rep`` holds one
    residue per factor.
    """
    canonical_rep: Vector
    group_shape: Vector

    def __post_init__(self):
        if len(self.canonical_rep) != len(self.group_shape):
            raise ValueError("Residue vector and group shape differ in length")
        for r, d in zip(self.canonical_rep, self.group_shape):
            if not 0 <= r < d:
                raise ValueError(f"Residue {r} out of range for factor Z/{d}")

    @property
    def is_identity(self) -> bool:
        return not any(self.canonical_rep)

    @property
    def group_order(self) -> int:
        order = 1
        for d in self.group_shape:
            order *= d
        return order

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.canonical_rep) + ")"


@dataclass(frozen=True)
class RootSystem:
    """Immutable finite-type root datum.

    Attributes:
        type_letter: Cartan type, one of A-G.
        rank: number of simple roots.
        cartan: Cartan matrix, ``cartan[i][j] = <alpha_j, alpha_i^vee>``.
        positive_roots: positive roots in simple-root coordinates, ordered
            by height; simple roots come first in node order.
        fundamental_weights_in_root_coords: inverse Cartan matrix; column
            ``j`` expresses omega_j in the simple-root basis.
        highest_root: the highest root in simple-root coordinates.
        half_norms: (alpha_i, alpha_i) / 2 for each simple root.
    """
    type_letter: str
    rank: int
    cartan: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    fundamental_weights_in_root_coords: tuple[tuple[Fraction, ...], ...]
    highest_root: Vector
    half_norms: tuple[Fraction, ...]
    coset_rows: tuple[Vector, ...] = field(repr=False)
    coset_shape: Vector = field(repr=False)
    _root_set: frozenset = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def all_roots(self) -> tuple[Vector, ...]:
        negatives = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + negatives

    def is_root(self, vec: Sequence[int]) -> bool:
        return tuple(vec) in self._root_set

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def check_weight(self, w: Weight) -> None:
        if w.rank != self.rank:
            raise WeightRankError(
                f"Weight {w} has {w.rank} coordinates; {self.name} needs {self.rank}"
            )


def _chain(rank: int, length: int) -> list[list[int]]:
    A = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        A[i][i] = 2
    for i in range(length - 1):
        A[i][i + 1] = -1
        A[i + 1][i] = -1
    return A


def _cartan_rows(type_letter: str, rank: int) -> list[list[int]]:
    # Bourbaki numbering, 0-indexed
    if type_letter == "A":
        return _chain(rank, rank)
    if type_letter == "B":
        A = _chain(rank, rank)
        A[rank - 1][rank - 2] = -2  # alpha_n short
        return A
    if type_letter == "C":
        A = _chain(rank, rank)
        A[rank - 2][rank - 1] = -2  # alpha_n long
        return A
    if type_letter == "D":
        A = _chain(rank, rank - 2)
        for tail in (rank - 2, rank - 1):
            A[rank - 3][tail] = -1
            A[tail][rank - 3] = -1
        return A
    if type_letter == "E":
        A = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            A[i][i] = 2
        edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, rank - 1)]
        for i, j in edges:
            A[i][j] = -1
            A[j][i] = -1
        return A
    if type_letter == "F":
        A = _chain(4, 4)
        A[2][1] = -2  # alpha_3, alpha_4 short
        return A
    if type_letter == "G":
        return [[2, -3], [-1, 2]]  # alpha_1 short
    raise InvalidRootSystemError(f"Unknown Cartan type {type_letter!r}")


def validate_type(type_letter: str, rank: int) -> None:
    """Raise InvalidRootSystemError unless (type_letter, rank) is a finite type."""
    if type_letter not in TYPE_LETTERS:
        raise InvalidRootSystemError(
            f"Unknown Cartan type {type_letter!r}; expected one of {', '.join(TYPE_LETTERS)}"
        )
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InvalidRootSystemError(f"Rank must be an integer, got {rank!r}")
    low = BlockadeConstants.MIN_RANK[type_letter]
    high = BlockadeConstants.MAX_RANK.get(type_letter)
    if rank < low or (high is not None and rank > high):
        allowed = f"rank >= {low}" if high is None else (
            f"rank {low}" if low == high else f"rank {low}..{high}")
        raise InvalidRootSystemError(
            f"{type_letter}{rank} is not a finite root system ({type_letter} needs {allowed})"
        )


def classical_positive_root_count(type_letter: str, rank: int) -> int:
    """Number of positive roots by the classical formulas."""
    if type_letter == "A":
        return rank * (rank + 1) // 2
    if type_letter in ("B", "C"):
        return rank * rank
    if type_letter == "D":
        return rank * (rank - 1)
    return BlockadeConstants.POSITIVE_ROOT_COUNTS[type_letter][rank]


def _half_norms(cartan: list[list[int]]) -> tuple[Fraction, ...]:
    # |alpha_j|^2 / |alpha_i|^2 = a_ij / a_ji along each edge
    rank = len(cartan)
    norms: list[Optional[Fraction]] = [None] * rank
    norms[0] = Fraction(1)
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(rank):
            if j != i and cartan[i][j] != 0 and norms[j] is None:
                norms[j] = norms[i] * Fraction(cartan[i][j], cartan[j][i])
                frontier.append(j)
    longest = max(n for n in norms if n is not None)
    return tuple(n / longest for n in norms if n is not None)


def _pairing_with_simple_coroot(cartan: Sequence[Sequence[int]], root: Vector, i: int) -> int:
    # <beta, alpha_i^vee> for beta in simple-root coordinates
    return sum(c * a for c, a in zip(root, cartan[i]))


def _close_positive_roots(cartan: list[list[int]]) -> list[Vector]:
    rank = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    known = set(simple)
    roots = list(simple)
    level = list(simple)
    while level:
        following: list[Vector] = []
        for beta in level:
            for i in range(rank):
                # p: how many times alpha_i can be subtracted from beta
                p = 0
                candidate = list(beta)
                while True:
                    candidate[i] -= 1
                    if tuple(candidate) in known:
                        p += 1
                    else:
                        break
                q = p - _pairing_with_simple_coroot(cartan, beta, i)
                if q > 0:
                    raised = list(beta)
                    raised[i] += 1
                    raised_t = tuple(raised)
                    if raised_t not in known:
                        known.add(raised_t)
                        following.append(raised_t)
        following.sort()
        roots.extend(following)
        level = following
    return roots


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Construct the root system of type ``type_letter`` and ``rank``.

    Positive roots are produced by closure from the simple roots using
    the string identity p - q = <beta, alpha_i^vee>.

    Raises:
        InvalidRootSystemError: if (type_letter, rank) is not a finite type.
    """
    type_letter = type_letter.upper() if isinstance(type_letter, str) else type_letter
    validate_type(type_letter, rank)
    rows = _cartan_rows(type_letter, rank)
    cartan = tuple(tuple(r) for r in rows)

    positive = _close_positive_roots(rows)
    expected = classical_positive_root_count(type_letter, rank)
    if len(positive) != expected:
        raise InvalidRootSystemError(
            f"Closure produced {len(positive)} positive roots for {type_letter}{rank}, expected {expected}"
        )
    highest = max(positive, key=lambda r: (sum(r), r))
    for i in range(rank):
        raised = list(highest)
        raised[i] += 1
        if tuple(raised) in positive:
            raise InvalidRootSystemError(f"Highest root of {type_letter}{rank} is not maximal")

    A = int_matrix(rows)
    snf = smith_normal_form(A)
    coset_rows = []
    coset_shape = []
    for k, d in enumerate(snf.diagonal):
        if d > 1:
            coset_rows.append(tuple(int(x) for x in snf.U[k]))
            coset_shape.append(d)

    all_roots = set(positive)
    all_roots.update(tuple(-c for c in r) for r in positive)

    rs = RootSystem(
        type_letter=type_letter,
        rank=rank,
        cartan=cartan,
        positive_roots=tuple(positive),
        fundamental_weights_in_root_coords=rational_inverse(A),
        highest_root=highest,
        half_norms=_half_norms(rows),
        coset_rows=tuple(coset_rows),
        coset_shape=tuple(coset_shape),
        _root_set=frozenset(all_roots),
    )
    logger.debug(
        f"Built {rs.name}: {len(positive)} positive roots, highest {highest}, P/Q shape {rs.coset_shape}"
    )
    return rs


def positive_roots(rs: RootSystem) -> tuple[Vector, ...]:
    return rs.positive_roots


def highest_root(rs: RootSystem) -> Vector:
    return rs.highest_root


def root_to_weight(rs: RootSystem, root: Sequence[int]) -> Weight:
    """Express a vector in simple-root coordinates in the fundamental-weight basis."""
    return Weight(mat_vec(rs.cartan, tuple(root)))


def weight_in_root_coords(rs: RootSystem, w: Weight) -> tuple[Fraction, ...]:
    """Unique rational c with w = sum c_i alpha_i; integral iff w is in Q."""
    rs.check_weight(w)
    return mat_vec(rs.fundamental_weights_in_root_coords, [Fraction(c) for c in w.coords])


def is_integral(vec: Iterable[Fraction]) -> bool:
    return all(Fraction(c).denominator == 1 for c in vec)


def in_root_lattice(rs: RootSystem, w: Weight) -> bool:
    return is_integral(weight_in_root_coords(rs, w))


def fundamental_group(rs: RootSystem) -> Vector:
    """Orders of the nontrivial cyclic factors of P/Q."""
    return rs.coset_shape


def fundamental_group_order(rs: RootSystem) -> int:
    order = 1
    for d in rs.coset_shape:
        order *= d
    return order


def cartan_determinant(rs: RootSystem) -> int:
    return determinant(int_matrix(rs.cartan))


def fundamental_group_coset(rs: RootSystem, w: Weight) -> FundamentalGroupElement:
    """Canonical class of ``w`` in P/Q.

    With U @ cartan @ V = diag(d), the root lattice in weight coordinates
    is cartan @ Z^n, so the class of w is read off as (U w) mod d.
    """
    rs.check_weight(w)
    residues = tuple(
        sum(u * c for u, c in zip(row, w.coords)) % d
        for row, d in zip(rs.coset_rows, rs.coset_shape)
    )
    return FundamentalGroupElement(canonical_rep=residues, group_shape=rs.coset_shape)


def _check_simple_index(rs: RootSystem, i: int) -> None:
    if not 0 <= i < rs.rank:
        raise IndexError(f"Simple root index {i} out of range for {rs.name}")


def _string_bound(rs: RootSystem, beta: Vector, i: int, step: int) -> int:
    passes_zero = beta == tuple(step * -c for c in rs.simple_root(i))
    k = 0
    candidate = list(beta)
    while True:
        candidate[i] += step
        t = tuple(candidate)
        if rs.is_root(t) or (passes_zero and not any(t)):
            k += 1
        else:
            return k


def root_string_upper_bound(rs: RootSystem, beta: Sequence[int], i: int) -> int:
    """Largest q >= 0 with beta + q alpha_i a root (0 counted when beta = -alpha_i).

    ad(e_i)^k e_beta is nonzero exactly for k <= q.

    Raises:
        NotARootError: if beta is not a root.
    """
    beta_t = tuple(int(c) for c in beta)
    _check_simple_index(rs, i)
    if len(beta_t) != rs.rank or not rs.is_root(beta_t):
        raise NotARootError(f"{beta_t} is not a root of {rs.name}")
    return _string_bound(rs, beta_t, i, +1)


def root_string_lower_bound(rs: RootSystem, beta: Sequence[int], i: int) -> int:
    """Largest p >= 0 with beta - p alpha_i a root (0 counted when beta = alpha_i)."""
    beta_t = tuple(int(c) for c in beta)
    _check_simple_index(rs, i)
    if len(beta_t) != rs.rank or not rs.is_root(beta_t):
        raise NotARootError(f"{beta_t} is not a root of {rs.name}")
    return _string_bound(rs, beta_t, i, -1)


def coroot_pairing(rs: RootSystem, w: Weight, root: Sequence[int]) -> Fraction:
    """<w, beta^vee> for a root beta given in simple-root coordinates."""
    c = tuple(root)
    inner = sum((Fraction(ck * wk) * d for ck, wk, d in zip(c, w.coords, rs.half_norms)), Fraction(0))
    half_sq = sum(
        (Fraction(c[k] * c[l] * rs.cartan[k][l]) * rs.half_norms[k] / 2
         for k in range(rs.rank) for l in range(rs.rank)),
        Fraction(0),
    )
    return inner / half_sq


def inner_product(rs: RootSystem, w1: Weight, w2: Weight) -> Fraction:
    """(w1, w2) normalized so that long roots have squared length 2."""
    inv = rs.fundamental_weights_in_root_coords
    total = Fraction(0)
    for i, a in enumerate(w1.coords):
        if not a:
            continue
        for j, b in enumerate(w2.coords):
            if b:
                total += a * b * inv[i][j] * rs.half_norms[i]
    return total


def simple_reflection(rs: RootSystem, w: Weight, i: int) -> Weight:
    """s_i(w) = w - <w, alpha_i^vee> alpha_i."""
    _check_simple_index(rs, i)
    wi = w.coords[i]
    return Weight(tuple(c - wi * rs.cartan[k][i] for k, c in enumerate(w.coords)))


def to_dominant_chamber(rs: RootSystem, coords: Sequence[int]) -> tuple[Vector, int]:
    """Dominant W-conjugate of ``coords`` with the sign (-1)^(reflections used)."""
    v = list(coords)
    parity = 1
    cartan = rs.cartan
    rank = rs.rank
    while True:
        for i in range(rank):
            if v[i] < 0:
                break
        else:
            return tuple(v), parity
        vi = v[i]
        for k in range(rank):
            v[k] -= vi * cartan[k][i]
        parity = -parity


def rho_shifted_conjugate(rs: RootSystem, coords: Sequence[int]) -> Optional[tuple[Vector, int]]:
    """Tuple-level dot-action conjugation; None when coords + rho is singular."""
    shifted = [c + 1 for c in coords]
    v, parity = to_dominant_chamber(rs, shifted)
    if 0 in v:
        return None
    return tuple(c - 1 for c in v), parity


class Conjugation(NamedTuple):
    weight: Weight
    parity: int


def dominant_conjugate(rs: RootSystem, w: Weight) -> Optional[Conjugation]:
    """Conjugate w + rho into the dominant chamber and subtract rho.

    Returns:
        Conjugation(weight, parity) with parity = (-1)^(reflections used),
        or None when w + rho lies on a wall (the singular case).
    """
    rs.check_weight(w)
    result = rho_shifted_conjugate(rs, w.coords)
    if result is None:
        return None
    coords, parity = result
    return Conjugation(Weight(coords), parity)
