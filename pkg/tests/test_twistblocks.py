"""Tests for Ext^1, spectral characters, blocks and linkage chains."""

import itertools
import random
import unittest

import pytest

from blockade.errors import (
    DescriptorError,
    NotDominantError,
    OrbitSpaceError,
    SearchBoundError,
    WeightRankError,
)
from blockade.rootsys import Weight, build_root_system, root_to_weight
from blockade.twistblocks import (
    EvalModuleDescriptor,
    OrbitSpace,
    block_partition,
    ext_dim,
    ext_matrix,
    linkage_chain,
    same_block,
    spectral_character,
)


def desc(**weights):
    return EvalModuleDescriptor({p: Weight(w) for p, w in weights.items()})


def two_points(d_m=1, d_n=1):
    return OrbitSpace(["M", "N"], [], {"M": d_m, "N": d_n})


A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


class TestOrbitSpace(unittest.TestCase):

    def test_orbits_and_representatives(self):
        space = OrbitSpace(["c", "a", "b", "d"], [{"a": "b", "b": "c", "c": "a"}], {"b": 2, "d": 1})
        self.assertEqual(space.orbits(), (("a", "b", "c"), ("d",)))
        self.assertEqual(space.representative("c"), "a")
        self.assertEqual(space.cotangent("c"), 2)
        self.assertEqual(space.cotangent("d"), 1)
        self.assertEqual(space.apply(0, "c"), "a")

    def test_generator_must_be_bijection(self):
        with self.assertRaises(OrbitSpaceError):
            OrbitSpace(["a", "b"], [{"a": "b"}], {"a": 1})

    def test_generator_must_stay_inside(self):
        with self.assertRaises(OrbitSpaceError):
            OrbitSpace(["a"], [{"a": "z"}], {"a": 1})

    def test_cotangent_once_per_orbit(self):
        with self.assertRaises(OrbitSpaceError):
            OrbitSpace(["a", "b"], [{"a": "b", "b": "a"}], {"a": 1, "b": 1})
        with self.assertRaises(OrbitSpaceError):
            OrbitSpace(["a", "b"], [], {"a": 1})
        with self.assertRaises(OrbitSpaceError):
            OrbitSpace(["a"], [], {"a": 0})

    def test_constructors(self):
        free = OrbitSpace.free_orbit(4, cotangent=3)
        self.assertEqual(len(free.orbits()), 1)
        self.assertEqual(free.cotangent("M2"), 3)
        torus = OrbitSpace.torus_points(2, 5, group_order=3)
        self.assertEqual(len(torus.orbits()), 2)
        self.assertEqual(torus.cotangent("z1.2"), 5)
        loop = OrbitSpace.loop_points(3)
        self.assertEqual(len(loop.orbits()), 3)
        self.assertTrue(all(loop.cotangent(p) == 1 for p in loop.points))

    def test_canonicalize(self):
        space = OrbitSpace.free_orbit(3)
        self.assertEqual(space.canonicalize(desc(M2=(1,))), desc(M0=(1,)))
        with self.assertRaises(DescriptorError):
            space.canonicalize(desc(M0=(1,), M1=(1,)))
        with self.assertRaises(DescriptorError):
            space.canonicalize(desc(X=(1,)))
        with self.assertRaises(WeightRankError):
            space.canonicalize(desc(M0=(1, 0)), A1)


class TestDescriptors(unittest.TestCase):

    def test_zero_weights_dropped(self):
        self.assertEqual(desc(M=(0,)), EvalModuleDescriptor())
        self.assertEqual(desc(M=(1,), N=(0,)).support(), ("M",))

    def test_dominance_required(self):
        with self.assertRaises(NotDominantError):
            desc(M=(-1,))

    def test_hashable_and_ordered(self):
        self.assertEqual(hash(desc(M=(1,), N=(2,))), hash(desc(N=(2,), M=(1,))))


class TestSpectralCharacter(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(spectral_character(A1, desc(M=(2,))).assignments, ())
        character = spectral_character(A1, desc(M=(1,), N=(3,)))
        self.assertEqual(character.as_dict(), {"M": (1,), "N": (1,)})
        self.assertEqual(spectral_character(A2, EvalModuleDescriptor()).assignments, ())


class TestExtDim(unittest.TestCase):

    def test_simple_root_step(self):
        self.assertEqual(ext_dim(A1, two_points(), desc(M=(1,)), desc(M=(3,))), 1)

    def test_cotangent_multiplies(self):
        self.assertEqual(ext_dim(A1, two_points(d_m=2), desc(M=(1,)), desc(M=(3,))), 2)

    def test_two_orbits_differ(self):
        self.assertEqual(ext_dim(A1, two_points(), desc(M=(1,)), desc(N=(1,))), 0)

    def test_diagonal(self):
        self.assertEqual(ext_dim(A1, two_points(), desc(M=(2,)), desc(M=(2,))), 1)
        self.assertEqual(ext_dim(A1, two_points(3, 5), desc(M=(2,), N=(1,)), desc(M=(2,), N=(1,))), 8)
        self.assertEqual(ext_dim(A1, two_points(), EvalModuleDescriptor(), EvalModuleDescriptor()), 0)

    def test_unknown_point(self):
        with self.assertRaises(DescriptorError):
            ext_dim(A1, two_points(), desc(X=(1,)), desc(M=(1,)))

    def test_ext_matrix(self):
        modules = [desc(M=(1,)), desc(M=(3,)), desc(N=(1,))]
        self.assertEqual(ext_matrix(A1, two_points(), modules), [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


class TestSameBlock(unittest.TestCase):

    def test_examples(self):
        space = two_points()
        self.assertTrue(same_block(A1, space, EvalModuleDescriptor(), desc(M=(2,))))
        self.assertFalse(same_block(A1, space, desc(M=(1,)), desc(M=(2,))))
        self.assertFalse(same_block(A1, space, desc(M=(1,)), desc(N=(1,))))

    def test_block_partition(self):
        modules = [desc(M=(2,)), desc(M=(4,)), desc(M=(1,))]
        groups = block_partition(A1, two_points(), modules)
        self.assertEqual([members for _, members in groups], [[0, 1], [2]])
        self.assertEqual(groups[0][0].assignments, ())
        self.assertEqual(block_partition(A1, two_points(), []), [])


class TestLinkageChain(unittest.TestCase):

    def test_direct_step(self):
        chain = linkage_chain(A1, two_points(), EvalModuleDescriptor(), desc(M=(2,)), 4)
        self.assertEqual(chain, [EvalModuleDescriptor(), desc(M=(2,))])

    def test_absent_across_cosets(self):
        self.assertIsNone(linkage_chain(A1, two_points(), desc(M=(1,)), desc(M=(2,)), 6))

    def test_trivial_chain(self):
        self.assertEqual(linkage_chain(A1, two_points(), desc(M=(3,)), desc(M=(3,)), 3), [desc(M=(3,))])

    def test_bound_below_coordinates(self):
        with self.assertRaises(SearchBoundError):
            linkage_chain(A1, two_points(), desc(M=(5,)), desc(M=(1,)), 4)

    def test_chain_steps_have_nonzero_ext(self):
        space = two_points()
        chain = linkage_chain(A2, space, desc(M=(1, 0), N=(2, 2)), desc(M=(0, 2)), 6)
        self.assertIsNotNone(chain)
        for T, U in zip(chain, chain[1:]):
            self.assertTrue(ext_dim(A2, space, T, U) > 0 or ext_dim(A2, space, U, T) > 0)

    def test_chain_uses_canonical_points(self):
        space = OrbitSpace.free_orbit(2)
        chain = linkage_chain(A1, space, desc(M1=(1,)), desc(M0=(3,)), 4)
        self.assertEqual(chain, [desc(M0=(1,)), desc(M0=(3,))])


def _descriptors(rank, orbits, top):
    result = []
    for coords in itertools.product(range(top + 1), repeat=rank * len(orbits)):
        result.append(EvalModuleDescriptor({
            M: Weight(coords[k * rank:(k + 1) * rank]) for k, M in enumerate(orbits)
        }))
    return result


@pytest.mark.parametrize("rs,orbits", [(A1, ["M"]), (A1, ["M", "N"]), (A2, ["M"])])
def test_same_block_iff_chain(rs, orbits):
    space = OrbitSpace(orbits, [], {M: 1 for M in orbits})
    modules = _descriptors(rs.rank, orbits, 4)
    for E in modules:
        for F in modules:
            chain = linkage_chain(rs, space, E, F, 6)
            assert same_block(rs, space, E, F) == (chain is not None), (E, F)


def test_wider_window_keeps_blocks_and_shortens_chains():
    space = OrbitSpace(["M"], [], {"M": 1})
    modules = _descriptors(2, ["M"], 4)
    for E in modules:
        for F in modules:
            narrow = linkage_chain(A2, space, E, F, 4)
            wide = linkage_chain(A2, space, E, F, 9)
            assert (narrow is None) == (wide is None), (E, F)
            if wide is not None:
                assert wide[0] == E and wide[-1] == F
                assert len(wide) <= len(narrow), (E, F)


@pytest.mark.slow
def test_same_block_iff_chain_a2_two_orbits():
    space = two_points()
    modules = _descriptors(2, ["M", "N"], 4)
    rng = random.Random(11)
    for _ in range(300):
        E, F = rng.choice(modules), rng.choice(modules)
        assert same_block(A2, space, E, F) == (linkage_chain(A2, space, E, F, 6) is not None)


def test_same_block_iff_chain_a2_two_orbits_sample():
    space = two_points()
    modules = _descriptors(2, ["M", "N"], 2)
    rng = random.Random(5)
    for _ in range(25):
        E, F = rng.choice(modules), rng.choice(modules)
        assert same_block(A2, space, E, F) == (linkage_chain(A2, space, E, F, 6) is not None)


def test_ext_symmetry_randomized():
    rng = random.Random(2024)
    for _ in range(500):
        rs = rng.choice([A1, A2])
        space = two_points(rng.randint(1, 3), rng.randint(1, 3))
        E, F = (
            EvalModuleDescriptor({
                M: Weight(tuple(rng.randint(0, 3) for _ in range(rs.rank)))
                for M in ("M", "N") if rng.random() < 0.8
            })
            for _ in range(2)
        )
        # bias toward pairs that differ on at most one orbit
        if rng.random() < 0.7:
            F = EvalModuleDescriptor({**E.as_dict(), **F.as_dict()}) if rng.random() < 0.5 else E
            if rng.random() < 0.8:
                lam = F.weight_at("M", rs.rank)
                shift = root_to_weight(rs, rng.choice(rs.all_roots()))
                moved = lam + shift
                if moved.is_dominant():
                    F = EvalModuleDescriptor({**F.as_dict(), "M": moved})
        assert ext_dim(rs, space, E, F) == ext_dim(rs, space, F, E)


def test_representative_independence():
    rng = random.Random(99)
    space = OrbitSpace(
        ["a0", "a1", "a2", "a3", "b0", "b1"],
        [{"a0": "a1", "a1": "a2", "a2": "a3", "a3": "a0"}, {"b0": "b1", "b1": "b0", "a1": "a3", "a3": "a1"}],
        {"a2": 2, "b1": 1},
    )

    def wander(point):
        for _ in range(rng.randint(0, 6)):
            point = space.apply(rng.randrange(2), point)
        return point

    for _ in range(100):
        E = {"a0": Weight((rng.randint(0, 3), rng.randint(0, 3))), "b0": Weight((rng.randint(0, 2), 0))}
        F = {"a0": Weight((rng.randint(0, 3), rng.randint(0, 3))), "b0": E["b0"]}
        E1, F1 = EvalModuleDescriptor(E), EvalModuleDescriptor(F)
        E2 = EvalModuleDescriptor({wander(p): w for p, w in E.items()})
        F2 = EvalModuleDescriptor({wander(p): w for p, w in F.items()})
        assert spectral_character(A2, E1, space) == spectral_character(A2, E2, space)
        assert ext_dim(A2, space, E1, F1) == ext_dim(A2, space, E2, F2)


@pytest.mark.parametrize("t,n", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])
def test_loop_algebra_simple_root_ext_is_one(t, n):
    rs = build_root_system(t, n)
    space = OrbitSpace.loop_points(1)
    z = space.points[0]
    for coords in itertools.product(range(4), repeat=n):
        lam = Weight(coords)
        for j in range(n):
            mu = lam + root_to_weight(rs, rs.simple_root(j))
            if mu.is_dominant():
                assert ext_dim(rs, space, EvalModuleDescriptor({z: lam}), EvalModuleDescriptor({z: mu})) == 1
