#!/usr/bin/env python3
"""
置换对称性与广义单态测试
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from singlet_distillation.core.fock import (fidelity, inner_product,
                                            max_deviation, one_per_mode_basis,
                                            product_state,
                                            random_one_per_mode_state)
from singlet_distillation.core.symmetry import (Permutation, all_permutations,
                                                antisymmetric_basis,
                                                antisymmetric_state,
                                                antisymmetric_weight,
                                                antisymmetrizer_apply, cyclic,
                                                eigenspace_projector_apply,
                                                eigenvalue_label,
                                                generalized_singlet,
                                                permute_modes,
                                                random_antisymmetric_state,
                                                singlet_over_levels)


class TestPermutation(unittest.TestCase):
    """置换测试类"""

    def test_rejects_non_bijection(self):
        with self.assertRaises(ValueError):
            Permutation((0, 0, 1))

    def test_compose_convention(self):
        """(p∘q)(i) = p(q(i))"""
        p = Permutation((1, 2, 0))
        q = Permutation((0, 2, 1))
        composed = p.compose(q)
        for i in range(3):
            self.assertEqual(composed(i), p(q(i)))

    def test_inverse_power_order(self):
        c = cyclic(3, 4)
        self.assertEqual(c.images, (1, 2, 0, 3))
        self.assertEqual(c.compose(c.inverse()), Permutation.identity(4))
        self.assertEqual(c.power(3), Permutation.identity(4))
        self.assertEqual(c.power(-1), c.inverse())
        self.assertEqual(c.order(), 3)
        self.assertEqual(Permutation((1, 0, 3, 4, 2)).order(), 6)

    def test_cycles_and_sign(self):
        p = Permutation((1, 0, 3, 4, 2))
        self.assertEqual(p.cycles(), [(0, 1), (2, 3, 4)])
        self.assertEqual(p.sign(), -1)
        self.assertEqual(sum(q.sign() for q in all_permutations(4)), 0)

    def test_cyclic_bounds(self):
        with self.assertRaises(ValueError):
            cyclic(1, 3)
        with self.assertRaises(ValueError):
            cyclic(4, 3)

    def test_permute_modes_moves_particles(self):
        """a†_i -> a†_{p(i)}: |0,1,2⟩ 经 3-轮换变为 |2,0,1⟩"""
        v = product_state([0, 1, 2], 3, 3)
        moved = permute_modes(v, cyclic(3, 3))
        self.assertEqual(max_deviation(moved, product_state([2, 0, 1], 3, 3)), 0.0)


class TestGeneralizedSinglet(unittest.TestCase):
    """广义单态测试类"""

    def test_normalization_and_terms(self):
        for n in (2, 3, 4):
            singlet = generalized_singlet(n)
            self.assertTrue(singlet.is_normalized())
            self.assertEqual(len(singlet), math.factorial(n))

    def test_rejects_small_n(self):
        with self.assertRaises(ValueError):
            generalized_singlet(1)

    def test_two_particle_singlet(self):
        """|A_2⟩ = (|0,1⟩ - |1,0⟩)/√2"""
        expected = (product_state([0, 1], 2, 2) - product_state([1, 0], 2, 2)) * (1 / math.sqrt(2))
        self.assertLessEqual(max_deviation(generalized_singlet(2), expected), 1e-12)

    def test_total_antisymmetry(self):
        for n in (2, 3, 4):
            singlet = generalized_singlet(n)
            for p in all_permutations(n):
                deviation = max_deviation(permute_modes(singlet, p), singlet.scaled(p.sign()))
                self.assertLessEqual(deviation, 1e-12)

    def test_uniqueness_d_equals_n(self):
        """d = N 时反对称化任意基矢得到 0 或 |A_N⟩ 的倍数"""
        for n in (2, 3):
            singlet = generalized_singlet(n)
            for v in one_per_mode_basis(n, n):
                projected = antisymmetrizer_apply(v, n)
                if projected.norm_squared() > 1e-20:
                    self.assertAlmostEqual(fidelity(projected.normalized(), singlet), 1.0, delta=1e-12)

    def test_overlap_with_product(self):
        """|⟨A_3|0,1,2⟩|² = 1/3!"""
        overlap = inner_product(generalized_singlet(3), product_state([0, 1, 2], 3, 3))
        self.assertAlmostEqual(abs(overlap) ** 2, 1 / 6, delta=1e-12)

    def test_singlet_over_levels_validation(self):
        with self.assertRaises(ValueError):
            singlet_over_levels(2, (0, 0), 3)
        with self.assertRaises(ValueError):
            singlet_over_levels(3, (0, 1, 2), 2)


class TestProjectors(unittest.TestCase):
    """本征空间投影测试类"""

    def test_projector_is_idempotent(self):
        for v in list(one_per_mode_basis(3, 2))[:4]:
            once = eigenspace_projector_apply(v, 3, 3)
            twice = eigenspace_projector_apply(once, 3, 3)
            self.assertLessEqual(max_deviation(once, twice), 1e-12)

    def test_projector_rejects_bad_eigenvalue(self):
        with self.assertRaises(ValueError):
            eigenspace_projector_apply(product_state([0, 1, 2], 3, 3), 3, 3, eigenvalue=1j)

    def test_projector_product_equals_antisymmetrizer(self):
        """P_N ⋯ P_2 = A_N, N = 2, 3, 4"""
        for n in (2, 3, 4):
            for v in one_per_mode_basis(n, n):
                sequential = v
                for j in range(2, n + 1):
                    sequential = eigenspace_projector_apply(sequential, j, n)
                self.assertLessEqual(max_deviation(sequential, antisymmetrizer_apply(v, n)), 1e-10)

    def test_projector_output_is_eigenvector(self):
        """投影结果满足 π_j w = μ w, 缺省 μ = (-1)^{j-1}"""
        rng = np.random.default_rng(31)
        for j, m in ((2, 2), (2, 3), (3, 3), (3, 4), (4, 4)):
            v = random_one_per_mode_state(m, 2, rng)
            w = eigenspace_projector_apply(v, j, m)
            rotated = permute_modes(w, cyclic(j, m))
            self.assertLessEqual(max_deviation(rotated, w.scaled((-1) ** (j - 1))), 1e-10)

            mu = np.exp(2j * np.pi / j)
            w = eigenspace_projector_apply(v, j, m, eigenvalue=mu)
            self.assertLessEqual(max_deviation(permute_modes(w, cyclic(j, m)), w.scaled(mu)), 1e-10)

    def test_eigenspaces_partition(self):
        """各本征值投影之和为恒等"""
        v = product_state([0, 1, 1], 3, 2)
        total = None
        for q in range(3):
            part = eigenspace_projector_apply(v, 3, 3, eigenvalue=np.exp(2j * np.pi * q / 3))
            total = part if total is None else total + part
        self.assertLessEqual(max_deviation(total, v), 1e-12)

    def test_eigenvalue_label(self):
        self.assertEqual(eigenvalue_label(1, 3), "1")
        self.assertEqual(eigenvalue_label(np.exp(2j * np.pi / 3), 3), "ω^1")
        self.assertEqual(eigenvalue_label(-1, 2), "ω^1")


class TestAntisymmetricSubspace(unittest.TestCase):
    """d > N 的反对称子空间测试类"""

    def test_basis_is_orthonormal(self):
        basis = [v for _, v in antisymmetric_basis(2, 3)]
        self.assertEqual(len(basis), 3)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                self.assertAlmostEqual(abs(inner_product(a, b)), 1.0 if i == j else 0.0, delta=1e-12)

    def test_weight(self):
        self.assertAlmostEqual(antisymmetric_weight(generalized_singlet(3)), 1.0, delta=1e-12)
        self.assertAlmostEqual(antisymmetric_weight(product_state([0, 1, 2], 3, 4)), 1 / 6, delta=1e-12)
        self.assertEqual(antisymmetric_weight(product_state([0, 1, 1], 3, 2)), 0.0)

    def test_random_state_is_antisymmetric(self):
        rng = np.random.default_rng(2)
        v = random_antisymmetric_state(3, 4, rng)
        self.assertAlmostEqual(antisymmetric_weight(v), 1.0, delta=1e-10)
        swap = Permutation((1, 0, 2))
        self.assertLessEqual(max_deviation(permute_modes(v, swap), -v), 1e-12)

    def test_antisymmetric_state_from_coefficients(self):
        v = antisymmetric_state(2, 3, {(0, 1): 1.0, (1, 2): 1.0j})
        self.assertTrue(v.is_normalized())
        with self.assertRaises(ValueError):
            antisymmetric_state(2, 3, {})


if __name__ == "__main__":
    unittest.main()
