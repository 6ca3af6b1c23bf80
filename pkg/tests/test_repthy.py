"""Tests for Weyl dimensions, weight diagrams, tensor products and c(lam, mu)."""

import itertools
import threading
import time
import unittest
from unittest.mock import patch

import pytest

from blockade import repthy
from blockade.errors import NotDominantError
from blockade.repthy import (
    WeightMultiset,
    adjoint_multiplicity_oracle,
    adjoint_weight,
    configure_cache,
    diagram_cache,
    dual_weight,
    freudenthal_multiplicities,
    prv_adjoint_multiplicity,
    tensor_decompose,
    weyl_dimension,
)
from blockade.rootsys import Weight, build_root_system, root_to_weight
from blockade.settings import Settings

PRV_SYSTEMS = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)]


def _dominant(rank, top):
    return [Weight(c) for c in itertools.product(range(top + 1), repeat=rank)]


class TestWeylDimension(unittest.TestCase):

    def test_small_modules(self):
        cases = [
            (("A", 1), (4,), 5),
            (("A", 2), (1, 0), 3),
            (("A", 2), (1, 1), 8),
            (("A", 2), (2, 0), 6),
            (("B", 2), (1, 0), 5),
            (("B", 2), (0, 1), 4),
            (("B", 2), (0, 2), 10),
            (("C", 3), (1, 0, 0), 6),
            (("G", 2), (1, 0), 7),
            (("G", 2), (0, 1), 14),
            (("F", 4), (0, 0, 0, 1), 26),
            (("F", 4), (1, 0, 0, 0), 52),
            (("E", 6), (1, 0, 0, 0, 0, 0), 27),
            (("E", 8), (0, 0, 0, 0, 0, 0, 0, 1), 248),
        ]
        for (t, n), coords, dim in cases:
            with self.subTest(system=f"{t}{n}", weight=coords):
                self.assertEqual(weyl_dimension(build_root_system(t, n), Weight(coords)), dim)

    def test_adjoint_dimension(self):
        for t, n in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]:
            rs = build_root_system(t, n)
            with self.subTest(system=rs.name):
                self.assertEqual(weyl_dimension(rs, adjoint_weight(rs)), 2 * len(rs.positive_roots) + n)

    def test_not_dominant(self):
        with self.assertRaises(NotDominantError):
            weyl_dimension(build_root_system("A", 2), Weight.of(1, -1))


class TestFreudenthal(unittest.TestCase):

    def test_a1_string(self):
        diagram = freudenthal_multiplicities(build_root_system("A", 1), Weight.of(3))
        self.assertEqual(diagram.entries, {Weight.of(c): 1 for c in (3, 1, -1, -3)})

    def test_adjoint_zero_weight_is_rank(self):
        for t, n in [("A", 2), ("B", 2), ("G", 2), ("C", 3)]:
            rs = build_root_system(t, n)
            diagram = freudenthal_multiplicities(rs, adjoint_weight(rs))
            with self.subTest(system=rs.name):
                self.assertEqual(diagram.multiplicity(Weight.zero(n)), n)
                self.assertEqual(len(diagram), 2 * len(rs.positive_roots) + 1)

    def test_g2_seven(self):
        diagram = freudenthal_multiplicities(build_root_system("G", 2), Weight.of(1, 0))
        self.assertEqual(diagram.total(), 7)
        self.assertEqual(diagram.multiplicity(Weight.of(0, 0)), 1)

    def test_totals_match_weyl(self):
        for t, n in [("A", 2), ("B", 2), ("G", 2), ("B", 3)]:
            rs = build_root_system(t, n)
            for lam in _dominant(n, 2):
                self.assertEqual(freudenthal_multiplicities(rs, lam).total(), weyl_dimension(rs, lam))

    def test_weyl_symmetry(self):
        rs = build_root_system("B", 2)
        diagram = freudenthal_multiplicities(rs, Weight.of(1, 2))
        for w, m in diagram.entries.items():
            for i in range(rs.rank):
                s = tuple(c - w.coords[i] * rs.cartan[k][i] for k, c in enumerate(w.coords))
                self.assertEqual(diagram.multiplicity(Weight(s)), m)


def test_tensor_products():
    a1 = build_root_system("A", 1)
    assert tensor_decompose(a1, Weight.of(1), Weight.of(1)).entries == {Weight.of(2): 1, Weight.of(0): 1}
    a2 = build_root_system("A", 2)
    assert tensor_decompose(a2, Weight.of(1, 0), Weight.of(0, 1)).entries == {
        Weight.of(1, 1): 1, Weight.of(0, 0): 1}
    assert tensor_decompose(a2, Weight.of(1, 0), Weight.of(1, 0)).entries == {
        Weight.of(2, 0): 1, Weight.of(0, 1): 1}
    g2 = build_root_system("G", 2)
    assert tensor_decompose(g2, Weight.of(1, 0), Weight.of(1, 0)).entries == {
        Weight.of(2, 0): 1, Weight.of(0, 1): 1, Weight.of(1, 0): 1, Weight.of(0, 0): 1}


def test_tensor_product_is_symmetric_and_dimension_preserving():
    rs = build_root_system("C", 3)
    for lam, mu in [((1, 0, 0), (0, 1, 0)), ((0, 0, 1), (1, 1, 0)), ((2, 0, 0), (0, 0, 1))]:
        a, b = Weight(lam), Weight(mu)
        left = tensor_decompose(rs, a, b)
        assert left == tensor_decompose(rs, b, a)
        assert left.dimension(rs) == weyl_dimension(rs, a) * weyl_dimension(rs, b)


def test_dual_weights():
    assert dual_weight(build_root_system("A", 2), Weight.of(1, 0)) == Weight.of(0, 1)
    assert dual_weight(build_root_system("A", 1), Weight.of(3)) == Weight.of(3)
    assert dual_weight(build_root_system("B", 3), Weight.of(1, 2, 1)) == Weight.of(1, 2, 1)
    e6 = build_root_system("E", 6)
    assert dual_weight(e6, Weight.of(1, 0, 0, 0, 0, 0)) == Weight.of(0, 0, 0, 0, 0, 1)
    assert dual_weight(e6, Weight.of(0, 0, 1, 0, 0, 0)) == Weight.of(0, 0, 0, 0, 1, 0)


def test_prv_examples():
    a1 = build_root_system("A", 1)
    assert prv_adjoint_multiplicity(a1, Weight.of(1), Weight.of(3)) == 1
    assert prv_adjoint_multiplicity(a1, Weight.of(1), Weight.of(1)) == 1
    assert prv_adjoint_multiplicity(a1, Weight.of(0), Weight.of(0)) == 0
    assert prv_adjoint_multiplicity(a1, Weight.of(0), Weight.of(2)) == 1
    assert prv_adjoint_multiplicity(a1, Weight.of(1), Weight.of(2)) == 0
    assert prv_adjoint_multiplicity(a1, Weight.of(0), Weight.of(4)) == 0
    a2 = build_root_system("A", 2)
    assert prv_adjoint_multiplicity(a2, Weight.of(0, 0), Weight.of(1, 1)) == 1
    assert prv_adjoint_multiplicity(a2, Weight.of(1, 1), Weight.of(1, 1)) == 2
    assert prv_adjoint_multiplicity(a2, Weight.of(1, 0), Weight.of(1, 0)) == 1
    with pytest.raises(NotDominantError):
        prv_adjoint_multiplicity(a2, Weight.of(-1, 0), Weight.of(1, 0))


@pytest.mark.parametrize("t,n", PRV_SYSTEMS)
def test_prv_matches_tensor_product_oracle(t, n):
    rs = build_root_system(t, n)
    weights = _dominant(n, 3 if n <= 2 else 2)
    for lam in weights:
        for mu in weights:
            assert prv_adjoint_multiplicity(rs, lam, mu) == adjoint_multiplicity_oracle(rs, lam, mu), (lam, mu)


@pytest.mark.slow
@pytest.mark.parametrize("t,n", [s for s in PRV_SYSTEMS if s[1] == 3])
def test_prv_matches_oracle_full_grid(t, n):
    rs = build_root_system(t, n)
    weights = _dominant(n, 3)
    for lam in weights:
        for mu in weights:
            assert prv_adjoint_multiplicity(rs, lam, mu) == adjoint_multiplicity_oracle(rs, lam, mu), (lam, mu)


@pytest.mark.parametrize("t,n", PRV_SYSTEMS)
def test_prv_is_symmetric(t, n):
    rs = build_root_system(t, n)
    weights = _dominant(n, 3 if n <= 2 else 2)
    for lam in weights:
        for mu in weights:
            assert prv_adjoint_multiplicity(rs, lam, mu) == prv_adjoint_multiplicity(rs, mu, lam), (lam, mu)


@pytest.mark.parametrize("t,n", PRV_SYSTEMS)
def test_simple_root_step_has_multiplicity_one(t, n):
    rs = build_root_system(t, n)
    for lam in _dominant(n, 3):
        for j in range(n):
            mu = lam + root_to_weight(rs, rs.simple_root(j))
            if mu.is_dominant():
                assert prv_adjoint_multiplicity(rs, lam, mu) == 1
                assert prv_adjoint_multiplicity(rs, mu, lam) == 1


@pytest.mark.parametrize("t,n", PRV_SYSTEMS)
def test_diagonal_counts_nonzero_coordinates(t, n):
    rs = build_root_system(t, n)
    for lam in _dominant(n, 2):
        assert prv_adjoint_multiplicity(rs, lam, lam) == sum(1 for c in lam.coords if c)


def test_results_do_not_depend_on_cache():
    rs = build_root_system("B", 2)
    pairs = [(Weight(a), Weight(b)) for a in itertools.product(range(3), repeat=2)
             for b in itertools.product(range(3), repeat=2)]
    cache = diagram_cache()
    previous = cache.max_entries
    try:
        configure_cache(0)
        cache.clear()
        uncached = [adjoint_multiplicity_oracle(rs, a, b) for a, b in pairs]
        assert len(cache) == 0
        configure_cache(64)
        cached = [adjoint_multiplicity_oracle(rs, a, b) for a, b in pairs]
        assert len(cache) > 0
        assert cached == uncached
    finally:
        configure_cache(previous)


def test_weight_multiset():
    ms = WeightMultiset({Weight.of(1, 0): 2, Weight.of(0, 1): 1})
    assert ms.total() == 3
    assert ms.multiplicity(Weight.of(2, 2)) == 0
    assert [w for w, _ in ms.sorted_items()] == [Weight.of(1, 0), Weight.of(0, 1)]
    assert ms.dimension(build_root_system("A", 2)) == 9
    with pytest.raises(ValueError):
        WeightMultiset({Weight.of(1): 0})


def test_shared_cache_created_once_across_threads():
    def slow_settings():
        time.sleep(0.01)
        return Settings()

    start = threading.Barrier(8)
    seen = []

    def worker():
        start.wait()
        seen.append(diagram_cache())

    with patch.object(repthy, "_cache", None), patch.object(repthy, "get_settings", side_effect=slow_settings):
        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    assert len(seen) == 8
    assert all(cache is seen[0] for cache in seen)
