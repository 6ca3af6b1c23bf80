"""Tests for the Margaux algebra blocks."""

import random
import unittest
from fractions import Fraction

from blockade.errors import DescriptorError, MargauxOrbitCollisionError, NotDominantError
from blockade.margaux import (
    MARGAUX_COTANGENT_DIM,
    GaussianRational,
    MargauxBlockDescriptor,
    gaussian,
    margaux_block,
    margaux_canonical_point,
    margaux_modules,
    margaux_orbit_space,
    margaux_same_block,
    point,
)
from blockade.rootsys import build_root_system
from blockade.twistblocks import EvalModuleDescriptor, ext_dim

I = gaussian(0, 1)


class TestCanonicalPoint(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(margaux_canonical_point(point(-1, I)), point(1, I))
        self.assertEqual(margaux_canonical_point(point(2, -3)), point(2, 3))
        self.assertEqual(margaux_canonical_point(point(-I, gaussian(1, -1))), point(I, gaussian(-1, 1)))

    def test_idempotent(self):
        p = margaux_canonical_point(point(gaussian(-2, -5), -7))
        self.assertTrue(p.is_canonical())
        self.assertEqual(margaux_canonical_point(p), p)

    def test_zero_coordinate_rejected(self):
        with self.assertRaises(DescriptorError):
            point(0, 1)

    def test_orbit_has_four_points(self):
        orbit = point(1, I).orbit()
        self.assertEqual(len(set(orbit)), 4)
        self.assertEqual({margaux_canonical_point(p) for p in orbit}, {point(1, I)})


class TestGaussianRational(unittest.TestCase):

    def test_json(self):
        z = GaussianRational.from_json({"re": [1, 2], "im": 3})
        self.assertEqual(z, GaussianRational(Fraction(1, 2), Fraction(3)))
        self.assertEqual(z.to_json(), {"re": [1, 2], "im": [3, 1]})
        self.assertEqual(GaussianRational.from_json({"re": 4}), gaussian(4))

    def test_bad_json(self):
        for data in ({"re": [1, 0]}, {"re": "1"}, {"re": True}, {"im": [1, 2, 3]}):
            with self.subTest(data=data):
                with self.assertRaises(DescriptorError):
                    GaussianRational.from_json(data)

    def test_str(self):
        self.assertEqual(str(I), "1i")
        self.assertEqual(str(gaussian(-1)), "-1")
        self.assertEqual(str(gaussian(Fraction(1, 2), 3)), "1/2+3i")
        self.assertEqual(str(gaussian(2, -1)), "2-1i")


class TestMargauxBlock(unittest.TestCase):

    def test_single_odd_point(self):
        block = margaux_block([(point(-1, I), 3)])
        self.assertEqual(block.entries, ((point(1, I), 1),))
        self.assertEqual(block.to_json()[0]["label"], "(1,1i)")

    def test_even_weights_drop_out(self):
        self.assertEqual(margaux_block([(point(1, 1), 2), (point(2, 1), 0)]), MargauxBlockDescriptor())
        self.assertEqual(len(margaux_block([])), 0)

    def test_collision(self):
        with self.assertRaises(MargauxOrbitCollisionError) as ctx:
            margaux_block([(point(1, I), 1), (point(-1, -I), 2)])
        self.assertEqual(ctx.exception.first, point(1, I))
        self.assertEqual(ctx.exception.second, point(-1, -I))

    def test_negative_weight(self):
        with self.assertRaises(NotDominantError):
            margaux_block([(point(1, 1), -1)])

    def test_same_block(self):
        self.assertTrue(margaux_same_block([(point(1, 1), 1)], [(point(-1, 1), 5)]))
        self.assertFalse(margaux_same_block([(point(1, 1), 1)], [(point(1, 2), 1)]))
        self.assertTrue(margaux_same_block([(point(1, 1), 2)], []))

    def test_descriptor_validation(self):
        with self.assertRaises(DescriptorError):
            MargauxBlockDescriptor(((point(-1, 1), 1),))
        with self.assertRaises(DescriptorError):
            MargauxBlockDescriptor(((point(1, 1), 2),))


def test_random_sign_flips_do_not_change_block():
    rng = random.Random(7)
    for _ in range(100):
        modules = []
        used = set()
        size = rng.randint(1, 4)
        while len(modules) < size:
            a = gaussian(rng.randint(-3, 3), rng.randint(-3, 3))
            b = gaussian(rng.randint(-3, 3), rng.randint(-3, 3))
            if a.is_zero() or b.is_zero():
                continue
            p = point(a, b)
            if margaux_canonical_point(p) in used:
                continue
            used.add(margaux_canonical_point(p))
            modules.append((p, rng.randint(0, 5)))
        flipped = [(point(p.a if rng.random() < 0.5 else -p.a,
                          p.b if rng.random() < 0.5 else -p.b), m) for p, m in modules]
        assert margaux_block(modules) == margaux_block(flipped)
        assert all(p.is_canonical() for p in margaux_block(modules).points())


def test_orbit_space_and_ext():
    modules = [(point(1, I), 1), (point(-2, 1), 2)]
    ospace, desc = margaux_modules(modules)
    assert len(ospace.orbits()) == 2
    assert len(ospace.points) == 8
    assert all(ospace.cotangent(p) == MARGAUX_COTANGENT_DIM for p in ospace.points)
    assert ospace.representative(point(-1, -I).label()) == ospace.representative(point(1, I).label())

    rs = build_root_system("A", 1)
    moved = EvalModuleDescriptor({point(-1, I).label(): (3,), point(2, -1).label(): (2,)})
    assert ext_dim(rs, ospace, desc, moved) == MARGAUX_COTANGENT_DIM
    assert ext_dim(rs, ospace, moved, desc) == MARGAUX_COTANGENT_DIM


def test_orbit_space_merges_repeated_orbits():
    ospace = margaux_orbit_space([point(1, 1), point(-1, -1), point(1, 2)])
    assert len(ospace.orbits()) == 2
