#!/usr/bin/env python3
"""
模式幺正变换测试
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from singlet_distillation.core.fock import (OccupationState, fidelity,
                                            max_deviation, product_state,
                                            random_one_per_mode_state)
from singlet_distillation.core.interferometer import (ModeUnitary,
                                                      apply_mode_unitary,
                                                      embed,
                                                      fourier_determinant,
                                                      fourier_matrix,
                                                      identity, phase_variant,
                                                      random_phases,
                                                      random_unitary)
from singlet_distillation.core.symmetry import (generalized_singlet,
                                                random_antisymmetric_state)


class TestModeUnitary(unittest.TestCase):
    """幺正矩阵构造测试类"""

    def test_rejects_non_unitary(self):
        with self.assertRaises(ValueError):
            ModeUnitary(np.array([[1.0, 1.0], [0.0, 1.0]]))
        with self.assertRaises(ValueError):
            ModeUnitary(np.ones((2, 3)))

    def test_fourier_entries(self):
        """U_2 = [[1, 1], [1, -1]] / √2"""
        u = fourier_matrix(2).matrix
        expected = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        np.testing.assert_allclose(u, expected, atol=1e-15)
        u3 = fourier_matrix(3).matrix
        omega = np.exp(2j * np.pi / 3)
        self.assertAlmostEqual(u3[1, 2], omega ** 2 / math.sqrt(3), places=14)

    def test_fourier_rejects_zero(self):
        with self.assertRaises(ValueError):
            fourier_matrix(0)

    def test_fourier_one_port(self):
        self.assertEqual(fourier_matrix(1).matrix.shape, (1, 1))

    def test_embed(self):
        u = embed(fourier_matrix(2), [0, 1], 3)
        self.assertEqual(u.dim, 3)
        self.assertEqual(u.matrix[2, 2], 1)
        self.assertEqual(u.matrix[0, 2], 0)
        with self.assertRaises(ValueError):
            embed(fourier_matrix(2), [0, 0], 3)
        with self.assertRaises(ValueError):
            embed(fourier_matrix(2), [0, 3], 3)

    def test_composition(self):
        u = fourier_matrix(3)
        np.testing.assert_allclose((u.dagger() @ u).matrix, identity(3).matrix, atol=1e-12)

    def test_random_unitary_reproducible(self):
        a = random_unitary(3, 11).matrix
        b = random_unitary(3, 11).matrix
        np.testing.assert_array_equal(a, b)

    def test_phase_variant_validation(self):
        u = fourier_matrix(2)
        with self.assertRaises(ValueError):
            phase_variant(u, [1, 2], [1, 1])
        with self.assertRaises(ValueError):
            phase_variant(u, [1, 1, 1], [1, 1])


class TestApplyModeUnitary(unittest.TestCase):
    """干涉仪作用测试类"""

    def test_hong_ou_mandel(self):
        """U_2 |0,0⟩ = (|2,0⟩ - |0,2⟩)/√2, 符合项为零"""
        out = apply_mode_unitary(product_state([0, 0], 2, 1), fourier_matrix(2))
        s20 = OccupationState(((0, 0, 2),), 2, 1)
        s02 = OccupationState(((1, 0, 2),), 2, 1)
        s11 = OccupationState(((0, 0, 1), (1, 0, 1)), 2, 1)
        self.assertAlmostEqual(out.amplitude(s20), 1 / math.sqrt(2), places=12)
        self.assertAlmostEqual(out.amplitude(s02), -1 / math.sqrt(2), places=12)
        self.assertEqual(out.amplitude(s11), 0j)

    def test_identity_is_noop(self):
        v = product_state([0, 1, 2], 3, 3)
        self.assertEqual(max_deviation(apply_mode_unitary(v, identity(3)), v), 0.0)

    def test_dimension_mismatch(self):
        with self.assertRaises(ValueError):
            apply_mode_unitary(product_state([0, 1], 2, 2), fourier_matrix(3))

    def test_norm_preservation(self):
        rng = np.random.default_rng(5)
        for m in (2, 3, 4):
            v = random_one_per_mode_state(m, 2, rng)
            out = apply_mode_unitary(v, random_unitary(m, rng))
            self.assertAlmostEqual(out.norm_squared(), 1.0, delta=1e-10)

    def test_fourier_eigenphase(self):
        """U_N |A_N⟩ = det(U_N) |A_N⟩, N = 2, 3, 4"""
        for n in (2, 3, 4):
            singlet = generalized_singlet(n)
            out = apply_mode_unitary(singlet, fourier_matrix(n))
            self.assertLessEqual(max_deviation(out, singlet.scaled(fourier_determinant(n))), 1e-10)

    def test_fourier_determinant(self):
        for n, expected in ((1, 1), (2, -1), (3, -1j), (4, -1j), (5, -1)):
            self.assertAlmostEqual(abs(fourier_determinant(n) - expected), 0.0, delta=1e-12)
        for n in range(1, 10):
            det = fourier_matrix(n).determinant()
            self.assertAlmostEqual(abs(fourier_determinant(n) - det), 0.0, delta=1e-9)

    def test_composition_on_fock_space(self):
        """先 u1 后 u2 等于一次作用 u2·u1"""
        rng = np.random.default_rng(17)
        for m, d in ((2, 2), (3, 2), (3, 3)):
            v = random_one_per_mode_state(m, d, rng)
            u1, u2 = random_unitary(m, rng), random_unitary(m, rng)
            sequential = apply_mode_unitary(apply_mode_unitary(v, u1), u2)
            self.assertLessEqual(max_deviation(sequential, apply_mode_unitary(v, u2 @ u1)), 1e-10)

    def test_antisymmetric_states_under_random_unitaries(self):
        """d ≥ N 的反对称态在任意模式幺正下只获得全局相位 det U"""
        rng = np.random.default_rng(23)
        for n, d in ((2, 2), (2, 3), (3, 3), (3, 4)):
            v = random_antisymmetric_state(n, d, rng)
            for _ in range(20):
                u = random_unitary(n, rng)
                out = apply_mode_unitary(v, u)
                self.assertAlmostEqual(fidelity(out, v), 1.0, delta=1e-9)
                self.assertLessEqual(max_deviation(out, v.scaled(u.determinant())), 1e-10)

    def test_fourier_inverse(self):
        """U_N† U_N = 1 在 Fock 空间上"""
        rng = np.random.default_rng(9)
        v = random_one_per_mode_state(3, 2, rng)
        u = fourier_matrix(3)
        back = apply_mode_unitary(apply_mode_unitary(v, u), u.dagger())
        self.assertLessEqual(max_deviation(back, v), 1e-10)

    def test_phase_variant_keeps_unitarity(self):
        u = phase_variant(fourier_matrix(3), random_phases(3, 1), random_phases(3, 2))
        self.assertEqual(u.dim, 3)


if __name__ == "__main__":
    unittest.main()
