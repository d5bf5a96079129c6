#!/usr/bin/env python3
"""
Fock 空间核心测试
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from singlet_distillation.core.fock import (FockVector, OccupationState,
                                            apply_creation, basis_state,
                                            fidelity, inner_product,
                                            linear_combination, max_deviation,
                                            one_per_mode_basis, product_state,
                                            random_one_per_mode_state,
                                            tensor_product, vacuum)


class TestOccupationState(unittest.TestCase):
    """占据数基矢测试类"""

    def test_canonical_order(self):
        """条目按 (mode, level) 排序, 输入顺序无关"""
        a = OccupationState(((1, 0, 1), (0, 1, 1)), 2, 2)
        b = OccupationState(((0, 1, 1), (1, 0, 1)), 2, 2)
        self.assertEqual(a, b)
        self.assertEqual(a.entries, ((0, 1, 1), (1, 0, 1)))
        self.assertEqual(hash(a), hash(b))

    def test_invalid_entries(self):
        with self.assertRaises(ValueError):
            OccupationState(((2, 0, 1),), 2, 2)
        with self.assertRaises(ValueError):
            OccupationState(((0, 2, 1),), 2, 2)
        with self.assertRaises(ValueError):
            OccupationState(((0, 0, 0),), 2, 2)
        with self.assertRaises(ValueError):
            OccupationState(((0, 0, 1), (0, 0, 2)), 2, 2)

    def test_mode_occupation_and_levels(self):
        state = OccupationState(((0, 0, 2), (1, 1, 1), (2, 0, 1), (2, 1, 1)), 3, 2)
        self.assertEqual(state.mode_occupation(), (2, 1, 2))
        self.assertEqual(state.total_particles(), 5)
        self.assertEqual(state.factorial_weight(), 2)
        self.assertEqual(state.level_at(1), 1)
        with self.assertRaises(ValueError):
            state.level_at(0)

    def test_replace_and_relabel(self):
        state = OccupationState(((0, 0, 1), (1, 1, 1)), 2, 2)
        self.assertEqual(state.replace_level(0, 1).entries, ((0, 1, 1), (1, 1, 1)))
        self.assertEqual(state.relabel_modes((1, 0)).entries, ((0, 1, 1), (1, 0, 1)))


class TestFockVector(unittest.TestCase):
    """稀疏态矢量测试类"""

    def test_pruning(self):
        """小于阈值的振幅被剪掉"""
        s0 = OccupationState(((0, 0, 1),), 2, 1)
        s1 = OccupationState(((1, 0, 1),), 2, 1)
        v = FockVector({s0: 1.0, s1: 1e-14}, 2, 1)
        self.assertEqual(len(v), 1)
        self.assertEqual(v.amplitude(s1), 0j)

    def test_particle_number_mismatch(self):
        s1 = OccupationState(((0, 0, 1),), 2, 1)
        s2 = OccupationState(((0, 0, 2),), 2, 1)
        with self.assertRaises(ValueError):
            FockVector({s1: 1.0, s2: 1.0}, 2, 1)

    def test_space_mismatch(self):
        a = product_state([0, 1], 2, 2)
        b = product_state([0, 1], 2, 3)
        with self.assertRaises(ValueError):
            inner_product(a, b)

    def test_linear_algebra(self):
        a = product_state([0, 1], 2, 2)
        b = product_state([1, 0], 2, 2)
        v = (a - b) * (1 / math.sqrt(2))
        self.assertTrue(v.is_normalized())
        self.assertAlmostEqual(abs(inner_product(a, v)) ** 2, 0.5, places=12)
        self.assertTrue((v - v).is_zero())
        self.assertIsNone((v - v).particle_number)

    def test_normalized_zero_vector(self):
        a = product_state([0, 1], 2, 2)
        with self.assertRaises(ValueError):
            (a - a).normalized()

    def test_fidelity_requires_normalization(self):
        a = product_state([0, 1], 2, 2)
        with self.assertRaises(ValueError):
            fidelity(a * 2, a)
        self.assertAlmostEqual(fidelity(a * 1j, a), 1.0, places=12)


class TestConstructors(unittest.TestCase):
    """构造函数测试类"""

    def test_vacuum(self):
        v = vacuum(3, 2)
        self.assertEqual(v.particle_number, 0)
        self.assertTrue(v.is_normalized())

    def test_creation_ladder(self):
        """a†|1⟩ = √2 |2⟩"""
        one = basis_state(OccupationState(((0, 0, 1),), 1, 1))
        two = apply_creation(one, 0, 0)
        state = OccupationState(((0, 0, 2),), 1, 1)
        self.assertAlmostEqual(two.amplitude(state), math.sqrt(2), places=12)

    def test_product_state_validation(self):
        with self.assertRaises(ValueError):
            product_state([0, 3], 2, 3)
        with self.assertRaises(ValueError):
            product_state([0], 2, 3)

    def test_one_per_mode_basis_size(self):
        self.assertEqual(len(list(one_per_mode_basis(3, 2))), 8)

    def test_tensor_product(self):
        """|0⟩ ⊗ |1⟩ = |0,1⟩, 第二个寄存器模式编号平移"""
        v = tensor_product(product_state([0], 1, 2), product_state([1], 1, 2))
        self.assertEqual(max_deviation(v, product_state([0, 1], 2, 2)), 0.0)

    def test_linear_combination_cancels(self):
        a = product_state([0, 1], 2, 2)
        v = linear_combination([(1.0, a), (-1.0, a)], 2, 2)
        self.assertTrue(v.is_zero())

    def test_random_one_per_mode_state(self):
        rng = np.random.default_rng(7)
        v = random_one_per_mode_state(2, 3, rng)
        self.assertTrue(v.is_normalized())
        for occ in v:
            self.assertEqual(occ.mode_occupation(), (1, 1))


if __name__ == "__main__":
    unittest.main()
