import numpy as np
from parameterized import parameterized

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.majorization import theorems as th
from classy_separable.sepops.generators import (
    gen_random_product_collection,
    gen_separable_locc,
    ginibre,
    random_schmidt_weights,
    random_state,
)
from classy_separable.sepops.kraus import KrausPair, apply_to_pure
from classy_separable.states.schmidt import e_n_vector
from classy_separable.states.state import PureState
from tests.fixtures.states import SeparableTestCase, bell


class Theorem2Tests(SeparableTestCase):
    def test_identity(self):
        state = random_state((3, 3), 0)
        report = th.verify_theorem2([KrausPair(np.eye(3), np.eye(3))], state)

        self.assert_np_almost_equal(report.lhs, report.rhs, decimal=10)
        self.assertTrue(report.holds)

    def test_scaling(self):
        state = random_state((2, 2), 1)
        report = th.verify_theorem2([KrausPair(2 * np.eye(2), np.eye(2))], state)

        self.assertAlmostEqual(report.r_norm, 4)
        self.assert_np_almost_equal(report.lhs, 4 * e_n_vector(state), decimal=10)
        self.assert_np_almost_equal(report.lhs, report.rhs, decimal=10)

    def test_closed_set(self):
        state = random_state((3, 2), 2)
        report = th.verify_theorem2(gen_separable_locc((3, 2), 2, 2, 3).pairs, state)

        self.assertAlmostEqual(report.r_norm, 1, places=10)
        self.assertTrue(report.holds)

    @parameterized.expand([(seed, dims) for seed in range(4) for dims in ((2, 2), (3, 3), (4, 4), (2, 3))])
    def test_closed_set_reproduces_ensemble(self, seed, dims):
        """For a closed set the left side is the ensemble average of E_n"""
        operation = gen_separable_locc(dims, 2, 2, seed)
        state = random_state(dims, seed + 100)

        report = th.verify_theorem2(operation.pairs, state)
        ensemble = apply_to_pure(operation, state)
        average = sum(outcome.probability * e_n_vector(outcome.state) for outcome in ensemble)

        self.assertAlmostEqual(report.r_norm, 1, places=9)
        self.assert_np_almost_equal(report.lhs, average)
        self.assert_np_almost_equal(report.rhs, e_n_vector(state))


    def test_dims_mismatch(self):
        with self.assertRaises(InvalidInputError):
            th.verify_theorem2([KrausPair(np.eye(3), np.eye(3))], bell())

    @parameterized.expand([(seed, dims) for seed in range(6) for dims in ((2, 2), (2, 3), (3, 3), (4, 2))])
    def test_random(self, seed, dims):
        rng = np.random.default_rng(seed)
        pairs = gen_random_product_collection(dims, int(rng.integers(1, 9)), 1.0, rng)
        report = th.verify_theorem2(pairs, random_state(dims, rng))

        self.assertTrue(report.holds)
        self.assertTrue(report.chain_holds)
        self.assertTrue(report.map_form_agrees)
        self.assertEqual(len(report.lhs), min(dims))

    def test_report_dict(self):
        report = th.verify_theorem2(gen_random_product_collection((2, 2), 2, 1.0, 0), bell())
        data = report.to_dict()

        self.assertEqual(len(data["n_values"]), 2)
        self.assertEqual(data["worst_n"], report.worst_n)
        self.assertTrue(data["holds"])


class Lemma1Tests(SeparableTestCase):
    def test_identity(self):
        report = th.verify_lemma1(np.eye(2), np.eye(2), np.sqrt([0.5, 0.5]), 1)

        self.assertAlmostEqual(report.lhs, 0.5)
        self.assertAlmostEqual(report.rhs, 0.5)
        self.assertTrue(report.holds)

    def test_full_n(self):
        rng = np.random.default_rng(0)
        a, b = ginibre((3, 3), rng), ginibre((3, 3), rng)
        psi = np.sqrt([0.1, 0.3, 0.6])

        report = th.verify_lemma1(a, b, psi, 3)
        full = a @ np.diag(psi) @ b @ b.conj().T @ np.diag(psi) @ a.conj().T

        self.assertAlmostEqual(report.lhs, np.trace(full).real, places=10)
        self.assertAlmostEqual(report.rhs, np.trace(full).real, places=10)
        self.assertTrue(report.holds)

    def test_not_ascending(self):
        with self.assertRaises(InvalidInputError):
            th.verify_lemma1(np.eye(2), np.eye(2), [0.8, 0.2], 1)

    def test_shape_mismatch(self):
        with self.assertRaises(InvalidInputError):
            th.verify_lemma1(np.eye(3), np.eye(2), [0.2, 0.8], 1)

    def test_projector_checks(self):
        report = th.verify_lemma1(np.eye(2), np.eye(2), np.sqrt([0.2, 0.8]), 1)
        checks = report.checks

        self.assertEqual(checks.rank, 1)
        self.assertLessEqual(checks.idempotency_residual, 1e-10)
        self.assertLessEqual(checks.annihilation_residual, 1e-10)
        self.assertTrue(report.projector_ok)
        self.assertTrue(report.chain_ok)

    @parameterized.expand([(seed, dim) for seed in range(5) for dim in (2, 3, 4, 5)])
    def test_random(self, seed, dim):
        rng = np.random.default_rng(seed)
        zeros = int(rng.integers(0, dim))
        psi = np.sqrt(random_schmidt_weights(dim, rng, zeros))
        a, b = ginibre((dim, dim), rng), ginibre((dim, dim), rng)

        for n in range(1, dim + 1):
            report = th.verify_lemma1(a, b, psi, n)
            self.assertTrue(report.holds, msg=f"n = {n}")
            self.assertGreaterEqual(report.slack, -1e-9)

    def test_report_dict(self):
        data = th.verify_lemma1(np.eye(2), np.eye(2), np.sqrt([0.5, 0.5]), 1).to_dict()

        self.assertTrue(data["holds"])
        self.assertEqual(data["projector_checks"]["rank"], 1)


class SmallerSideTests(SeparableTestCase):
    @parameterized.expand((((2, 2), "A"), ((3, 2), "A"), ((2, 3), "B")))
    def test_side(self, dims, side):
        self.assertEqual(th._smaller_side(dims), side)

    def test_unequal_dims_uses_smaller_side(self):
        state = PureState.product((2, 4), 1, 3)
        report = th.verify_theorem2([KrausPair(np.eye(2), np.eye(4))], state)

        self.assertEqual(len(report.lhs), 2)
