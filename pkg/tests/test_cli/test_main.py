import numpy as np
from parameterized import parameterized

from classy_separable.cli import io
from classy_separable.cli.main import main
from classy_separable.states.schmidt import schmidt_decompose
from classy_separable.states.state import PureState
from tests.fixtures.states import SeparableTestCase, bell, hadamards, not_closed, product, schmidt_state, z_measurement


class CliTestCase(SeparableTestCase):
    def state_file(self, name: str, state: PureState) -> str:
        return self.write(name, io.state_to_json(state))

    def run_main(self, *args: str) -> int:
        return main([str(arg) for arg in args])


class SchmidtCommandTests(CliTestCase):
    def test_bell(self):
        code = self.run_main("schmidt", self.state_file("bell.json", bell()), "--out", self.path("out.json"))
        output = self.read("out.json")

        self.assertEqual(code, 0)
        self.assert_np_almost_equal(output["weights"], [0.5, 0.5])
        self.assert_np_almost_equal(output["e_n"], [0.5, 1.0])

    def test_product(self):
        self.run_main("schmidt", self.state_file("product.json", product()), "--out", self.path("out.json"))

        self.assert_np_almost_equal(self.read("out.json")["weights"], [0, 1])

    def test_malformed(self):
        path = self.write("broken.json", {"dims": [2, 2]})

        self.assertEqual(self.run_main("schmidt", path), 2)

    def test_missing_file(self):
        self.assertEqual(self.run_main("schmidt", self.path("nothing.json")), 2)

    def test_not_json(self):
        path = self.path("text.json")
        with open(path, "w", encoding="utf-8") as file:
            file.write("not json at all")

        self.assertEqual(self.run_main("schmidt", path), 2)


class ApplyCommandTests(CliTestCase):
    def test_z_measurement(self):
        op_file = self.write("op.json", io.operation_to_json(z_measurement()))
        code = self.run_main("apply", op_file, self.state_file("bell.json", bell()), "--out", self.path("out.json"))
        output = self.read("out.json")

        self.assertEqual(code, 0)
        self.assert_np_almost_equal([outcome["p"] for outcome in output["outcomes"]], [0.5, 0.5])
        self.assertEqual(output["pruned_mass"], 0)

    def test_unitary(self):
        op_file = self.write("op.json", io.operation_to_json(hadamards()))
        self.run_main("apply", op_file, self.state_file("bell.json", bell()), "--out", self.path("out.json"))
        output = self.read("out.json")

        self.assertEqual(len(output["outcomes"]), 1)
        self.assertAlmostEqual(output["outcomes"][0]["p"], 1)

    def test_generated(self):
        self.run_main("gen", "sepop", "--dims", 2, 3, "--rounds", 2, "--outcomes", 3, "--seed", 4, "--out", self.path("op.json"))
        self.run_main("gen", "state", "--dims", 2, 3, "--seed", 5, "--out", self.path("state.json"))

        code = self.run_main("apply", self.path("op.json"), self.path("state.json"), "--out", self.path("out.json"))
        ensemble = io.json_to_ensemble(self.read("out.json"))

        self.assertEqual(code, 0)
        self.assertAlmostEqual(np.sum(ensemble.probabilities) + ensemble.pruned_mass, 1, places=9)

    def test_not_closed(self):
        op_file = self.write("op.json", io.operation_to_json(not_closed()))

        with self.assertLogs("classy_separable", level="ERROR") as logs:
            code = self.run_main("apply", op_file, self.state_file("bell.json", bell()))

        self.assertEqual(code, 2)
        self.assertIn("not separable-closed", logs.output[0])


class FeasibleCommandTests(CliTestCase):
    def feasible(self, source: PureState, target, *flags: str) -> int:
        if isinstance(target, PureState):
            target_file = self.state_file("target.json", target)
        else:
            target_file = self.write("target.json", target)

        return self.run_main(
            "feasible", self.state_file("source.json", source), target_file, "--out", self.path("out.json"), *flags
        )

    def test_discard_entanglement(self):
        ensemble = {"outcomes": [{"p": 1.0, "state": io.state_to_json(product())}], "pruned_mass": 0}

        self.assertEqual(self.feasible(bell(), ensemble), 0)
        self.assertTrue(self.read("out.json")["verdict"])

    def test_create_entanglement(self):
        self.assertEqual(self.feasible(product(), bell()), 1)

        output = self.read("out.json")
        self.assertFalse(output["verdict"])
        self.assertEqual(output["worst_n"], 1)

    def test_pmax(self):
        self.assertEqual(self.feasible(schmidt_state([0.2, 0.8]), bell(), "--pmax"), 1)

        self.assertEqual(self.read("out.json")["pmax"], 0.4)

    @parameterized.expand((([0.1, 0.9], [0.3, 0.7], 1 / 3), ([0.2, 0.3, 0.5], [1 / 3, 1 / 3, 1 / 3], 0.6)))
    def test_pmax_exact(self, source, target, expected):
        self.feasible(schmidt_state(source), schmidt_state(target), "--pmax")

        self.assertEqual(self.read("out.json")["pmax"], round(expected, 12))

    def test_pmax_with_ensemble(self):
        ensemble = {"outcomes": [{"p": 1.0, "state": io.state_to_json(product())}]}

        self.assertEqual(self.feasible(bell(), ensemble, "--pmax"), 2)

    def test_dims_mismatch(self):
        self.assertEqual(self.feasible(bell(), PureState.product((2, 3))), 2)

    def test_per_n_report(self):
        self.feasible(bell(), schmidt_state([0.3, 0.7]))
        values = self.read("out.json")["n_values"]

        self.assertEqual([value["n"] for value in values], [1, 2])
        self.assertAlmostEqual(values[0]["slack"], 0.2)


class VerifyCommandTests(CliTestCase):
    def test_thm2(self):
        code = self.run_main("verify", "thm2", "--instances", 100, "--seed", 42, "--json-out", self.path("report.json"))

        self.assertEqual(code, 0)
        self.assertEqual(self.read("report.json")["violation_count"], 0)

    def test_byte_identical(self):
        for name in ("first.json", "second.json"):
            self.run_main("verify", "lemma1", "--instances", 1, "--seed", 7, "--json-out", self.path(name))

        with open(self.path("first.json"), "rb") as first, open(self.path("second.json"), "rb") as second:
            self.assertEqual(first.read(), second.read())

    def test_thm1_dims(self):
        code = self.run_main("verify", "thm1", "--instances", 20, "--seed", 1, "--dims", "2..4", "--json-out", self.path("r.json"))

        self.assertEqual(code, 0)
        self.assertEqual(self.read("r.json")["config"]["dims_a"], [2, 4])

    def test_seed_required_with_json_out(self):
        self.assertEqual(self.run_main("verify", "eq8", "--instances", 1, "--json-out", self.path("r.json")), 2)

    def test_unknown_target(self):
        self.assertEqual(self.run_main("verify", "thm7", "--seed", 1, "--json-out", self.path("r.json")), 2)

    def test_violations_exit_code(self):
        code = self.run_main(
            "verify", "thm2", "--instances", 3, "--seed", 1, "--tolerance", "inequality=-1", "--json-out", self.path("r.json")
        )

        self.assertEqual(code, 1)
        self.assertEqual(self.read("r.json")["violation_count"], 3)

    @parameterized.expand((("--dims", "4..2"), ("--kraus", "x"), ("--tolerance", "inequality"), ("--tolerance", "bogus=1")))
    def test_invalid_flags(self, flag, value):
        code = self.run_main("verify", "thm1", "--instances", 1, "--seed", 1, flag, value, "--json-out", self.path("r.json"))

        self.assertEqual(code, 2)

    def test_timing(self):
        self.run_main("verify", "eq8", "--instances", 2, "--seed", 1, "--timing", "--json-out", self.path("r.json"))

        self.assertIn("wall_clock", self.read("r.json"))


class GenCommandTests(CliTestCase):
    def test_state(self):
        code = self.run_main("gen", "state", "--dims", 2, 2, "--seed", 1, "--out", self.path("state.json"))
        data = self.read("state.json")

        self.assertEqual(code, 0)
        state = io.json_to_state(data)
        self.assertAlmostEqual(state.norm, 1, places=12)
        self.assertEqual(io.state_to_json(state), data)

    def test_schmidt_weights(self):
        self.run_main("gen", "state", "--schmidt", "0.2,0.8", "--seed", 3, "--out", self.path("state.json"))
        state = io.json_to_state(self.read("state.json"))

        self.assert_np_almost_equal(schmidt_decompose(state).weights, [0.2, 0.8], decimal=12)

    def test_schmidt_normalized(self):
        with self.assertLogs("classy_separable", level="WARNING"):
            self.run_main("gen", "state", "--schmidt", "1,3", "--dims", 2, 3, "--seed", 3, "--out", self.path("s.json"))

        state = io.json_to_state(self.read("s.json"))
        self.assert_np_almost_equal(schmidt_decompose(state).weights, [0.25, 0.75], decimal=12)

    @parameterized.expand((("0.2,x",), ("-0.5,1.5",), ("0,0",)))
    def test_invalid_schmidt(self, weights):
        self.assertEqual(self.run_main("gen", "state", "--schmidt", weights, "--seed", 1, "--out", self.path("s.json")), 2)

    def test_sepop(self):
        self.run_main("gen", "sepop", "--rounds", 2, "--outcomes", 2, "--seed", 1, "--out", self.path("op.json"))
        operation = io.json_to_operation(self.read("op.json"))

        self.assertEqual(len(operation), 4)
        self.assertLessEqual(operation.residual, 1e-9)

    def test_collection(self):
        self.run_main("gen", "collection", "--dims", 3, 2, "--count", 5, "--seed", 1, "--out", self.path("c.json"))

        self.assertEqual(len(self.read("c.json")["pairs"]), 5)

    def test_missing_seed_warns(self):
        with self.assertLogs("classy_separable", level="WARNING"):
            self.run_main("gen", "state", "--out", self.path("s.json"))


class ReplayCommandTests(CliTestCase):
    def test_from_report(self):
        self.run_main(
            "verify", "thm2", "--instances", 2, "--seed", 3, "--tolerance", "inequality=-1", "--json-out", self.path("r.json")
        )
        violation = self.read("r.json")["violations"][0]

        code = self.run_main(
            "replay", "thm2", "--seed", violation["seed"], "--report", self.path("r.json"), "--out", self.path("o.json")
        )
        output = self.read("o.json")

        self.assertEqual(code, 1)
        self.assertEqual(output["seed"], violation["seed"])
        self.assertAlmostEqual(output["slack"], violation["slack"], places=12)

    def test_passing_seed(self):
        code = self.run_main("replay", "lemma1", "--seed", 5, "--out", self.path("o.json"))

        self.assertEqual(code, 0)
        self.assertTrue(self.read("o.json")["passed"])

    def test_unknown_target(self):
        self.assertEqual(self.run_main("replay", "nothing", "--seed", 5), 2)
