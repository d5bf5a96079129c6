#!/usr/bin/env python3
"""
系综与噪声信道测试
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from singlet_distillation.core.channels import (Ensemble,
                                                apply_correlated_noise,
                                                apply_local_noise,
                                                depolarize_all,
                                                depolarize_mode,
                                                expectation_overlap,
                                                fully_depolarized,
                                                global_rotation, pure,
                                                random_local_unitaries)
from singlet_distillation.core.fock import (OccupationState, basis_state,
                                            fidelity, max_deviation,
                                            product_state, tensor_product)
from singlet_distillation.core.interferometer import random_unitary
from singlet_distillation.core.symmetry import (generalized_singlet,
                                                singlet_over_levels)
from singlet_distillation.pipeline import success_probability_oracle


class TestEnsemble(unittest.TestCase):
    """系综测试类"""

    def test_pure(self):
        ens = pure(generalized_singlet(2))
        self.assertEqual(ens.weights, [1.0])
        with self.assertRaises(ValueError):
            pure(product_state([0, 1], 2, 2) * 2)

    def test_weights_must_sum_to_one(self):
        v = product_state([0, 1], 2, 2)
        with self.assertRaises(ValueError):
            Ensemble(((0.5, v),), 2, 2)
        with self.assertRaises(ValueError):
            Ensemble(((1.5, v), (-0.5, v)), 2, 2)

    def test_from_weighted_renormalizes(self):
        v = product_state([0, 1], 2, 2)
        w = product_state([1, 0], 2, 2)
        ens = Ensemble.from_weighted([(2.0, v), (0.0, w), (6.0, w)])
        self.assertEqual(len(ens), 2)
        self.assertAlmostEqual(ens.weights[0], 0.25, places=15)


class TestDepolarization(unittest.TestCase):
    """去极化测试类"""

    def test_single_mode(self):
        """depolarize_mode(|0,1⟩, 0) = ½|0,1⟩⟨0,1| + ½|1,1⟩⟨1,1|"""
        ens = depolarize_mode(pure(product_state([0, 1], 2, 2)), 0)
        self.assertEqual(len(ens), 2)
        targets = [product_state([0, 1], 2, 2), product_state([1, 1], 2, 2)]
        for (weight, state), target in zip(ens, targets):
            self.assertAlmostEqual(weight, 0.5, places=12)
            self.assertAlmostEqual(fidelity(state, target), 1.0, places=12)

    def test_fully_depolarized(self):
        for n, count in ((2, 4), (3, 27)):
            ens = fully_depolarized(n)
            self.assertEqual(len(ens), count)
            self.assertAlmostEqual(ens.weights[0], 1 / count, places=15)
        overlap = expectation_overlap(fully_depolarized(3), generalized_singlet(3))
        self.assertAlmostEqual(overlap, 1 / 27, delta=1e-12)

    def test_depolarize_all_of_any_state(self):
        """任意单粒子每模式纯态去极化全部模式后等价于 ρ_dep"""
        for start in (pure(product_state([1, 0, 2], 3, 3)), pure(generalized_singlet(3))):
            ens = depolarize_all(start)
            self.assertAlmostEqual(sum(ens.weights), 1.0, delta=1e-10)
            self.assertAlmostEqual(success_probability_oracle(ens, 3), 1 / 27, delta=1e-12)

    def test_entangled_component(self):
        """|A_2⟩⊗|2⟩ 去极化第三个模式: 3 个分量, 每个权重 1/3"""
        start = tensor_product(singlet_over_levels(2, (0, 1), 3), product_state([2], 1, 3))
        ens = depolarize_mode(pure(start), 2)
        self.assertEqual(len(ens), 3)
        for weight, _ in ens:
            self.assertAlmostEqual(weight, 1 / 3, places=12)
        self.assertAlmostEqual(success_probability_oracle(ens, 3), 1 / 9, delta=1e-12)

    def test_depolarization_is_idempotent(self):
        once = depolarize_mode(pure(generalized_singlet(3)), 1)
        twice = depolarize_mode(once, 1)
        for ens in (once, twice):
            self.assertAlmostEqual(sum(ens.weights), 1.0, delta=1e-10)
        self.assertAlmostEqual(
            success_probability_oracle(once, 3), success_probability_oracle(twice, 3), delta=1e-12
        )

    def test_requires_single_occupation(self):
        doubled = basis_state(OccupationState(((0, 0, 2),), 2, 2))
        with self.assertRaises(ValueError):
            depolarize_mode(pure(doubled), 1)

    def test_dimension_mismatch(self):
        with self.assertRaises(ValueError):
            depolarize_mode(pure(product_state([0, 1], 2, 2)), 0, d=3)


class TestLocalNoise(unittest.TestCase):
    """无损局域噪声测试类"""

    def test_identity_noise(self):
        ens = pure(generalized_singlet(3))
        noisy = apply_local_noise(ens, [np.eye(3)] * 3)
        self.assertLessEqual(max_deviation(noisy.components[0][1], generalized_singlet(3)), 1e-15)

    def test_rejects_non_unitary(self):
        ens = pure(generalized_singlet(2))
        with self.assertRaises(ValueError):
            apply_local_noise(ens, [np.eye(2), np.ones((2, 2))])
        with self.assertRaises(ValueError):
            apply_local_noise(ens, [np.eye(2)])

    def test_preserves_mode_occupation(self):
        ens = pure(product_state([0, 1, 2], 3, 3))
        noisy = apply_local_noise(ens, random_local_unitaries(3, 3, 4))
        for _, state in noisy:
            self.assertTrue(state.is_normalized())
            for occ in state:
                self.assertEqual(occ.mode_occupation(), (1, 1, 1))

    def test_rotational_invariance(self):
        """u⊗…⊗u |A_N⟩ = det(u) |A_N⟩, 20 次抽样"""
        rng = np.random.default_rng(12)
        for n in (2, 3):
            singlet = generalized_singlet(n)
            for _ in range(20):
                u = random_unitary(n, rng).matrix
                self.assertAlmostEqual(fidelity(global_rotation(singlet, u), singlet), 1.0, delta=1e-9)
                rotated = global_rotation(singlet, u)
                self.assertLessEqual(max_deviation(rotated, singlet.scaled(np.linalg.det(u))), 1e-10)

    def test_noise_then_depolarization_resets(self):
        start = pure(product_state([0, 1], 2, 2))
        for seed in range(5):
            noisy = apply_local_noise(start, random_local_unitaries(2, 2, seed))
            ens = depolarize_all(noisy)
            self.assertAlmostEqual(success_probability_oracle(ens, 2), 0.25, delta=1e-12)

    def test_correlated_noise(self):
        start = pure(product_state([0, 1], 2, 2))
        noisy = apply_correlated_noise(start, 3)
        self.assertTrue(noisy.components[0][1].is_normalized())
        reset = depolarize_all(noisy)
        self.assertAlmostEqual(success_probability_oracle(reset, 2), 0.25, delta=1e-12)
        self.assertAlmostEqual(math.fsum(reset.weights), 1.0, delta=1e-10)


if __name__ == "__main__":
    unittest.main()
