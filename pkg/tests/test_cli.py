"""
End-to-end tests for the palinfix command line.
"""
import contextlib
import csv
import io
import json
import logging
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from palinfix.core.config import CONFIG_DIR_ENV
from palinfix.main import main
from palinfix.services.suites import SuiteResult


class CliTestCase(unittest.TestCase):
    """Runs ``main`` against a scratch config directory and captures stdout."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        patcher = mock.patch.dict(os.environ, {CONFIG_DIR_ENV: str(self.tmp / "config")})
        patcher.start()
        self.addCleanup(patcher.stop)
        self.addCleanup(self._tmp.cleanup)
        self.addCleanup(self._reset_logging)

    @staticmethod
    def _reset_logging():
        root = logging.getLogger()
        for handler in list(root.handlers):
            root.removeHandler(handler)
            handler.close()

    def run_cli(self, *argv):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(io.StringIO()):
            code = main(["--log-level", "ERROR", *argv])
        return code, stdout.getvalue()


class TestSpecCommands(CliTestCase):

    def test_generate_fibonacci(self):
        code, out = self.run_cli("generate", "--preset", "fibonacci", "--length", "13")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "babbababbabba")

    def test_generate_into_directory(self):
        out_dir = self.tmp / "out"
        code, _ = self.run_cli(
            "generate", "--preset", "tribonacci", "--length", "15", "--emit", "both", "--output-dir", str(out_dir)
        )
        self.assertEqual(code, 0)
        self.assertEqual((out_dir / "word.txt").read_text().strip(), "abacabaabacabab")
        lines = (out_dir / "profile.csv").read_text().splitlines()
        self.assertEqual(lines[0], "i,n_i,psi_i")
        self.assertEqual([line.split(",")[1] for line in lines[1:]], ["0", "1", "3", "7", "14"])

    def test_delta(self):
        code, out = self.run_cli("delta", "--preset", "fibonacci")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertAlmostEqual(report["value"], 1.6180339887, places=6)
        self.assertIsNotNone(report["exact"])
        self.assertTrue(report["exact_decimal"].startswith("1.618033"))

    def test_check_reduced_and_not(self):
        code, out = self.run_cli("check", "--preset", "abacaba", "--alphabet", "abc")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["reduced"], "Reduced")
        self.assertEqual(report["strict"], "NotStrict {a}")

        code, out = self.run_cli("check", "--preset", "doubled-prev")
        self.assertEqual(code, 1)
        self.assertIn("condition 2", json.loads(out)["reduced"])

    def test_spec_file(self):
        path = self.tmp / "spec.json"
        path.write_text(json.dumps({"table": [{"i": 1, "letter": "a"}], "tail": {"kind": "prev"}}))
        code, out = self.run_cli("generate", str(path), "--length", "4")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "aaaa")

    def test_first_letters(self):
        code, out = self.run_cli("first-letters", "--preset", "tribonacci", "--count", "6")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "abcabc")

    def test_diagnostics(self):
        trace = self.tmp / "trace.csv"
        code, out = self.run_cli("diagnostics", "--preset", "fibonacci", "--count", "60", "--trace", str(trace))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["back_reference_bound"], 2)
        self.assertEqual(trace.read_text().splitlines()[0], "i,alpha,width")


class TestWordCommands(CliTestCase):

    def _fibonacci_file(self, length=400):
        out_dir = self.tmp / "fib"
        self.run_cli("generate", "--preset", "fibonacci", "--length", str(length), "--output-dir", str(out_dir))
        return out_dir / "word.txt"

    def test_recover(self):
        result = self.tmp / "recovered.json"
        code, _ = self.run_cli("recover", "--word", str(self._fibonacci_file()), "-o", str(result))
        self.assertEqual(code, 0)
        data = json.loads(result.read_text())
        self.assertEqual(data["lengths"][:7], [0, 1, 3, 6, 11, 19, 32])
        self.assertEqual(data["spec"]["table"][:2], [{"i": 1, "letter": "b"}, {"i": 2, "letter": "a"}])
        self.assertEqual(data["abundance"], "Abundant")

    def test_delta_of_a_word(self):
        code, out = self.run_cli("delta", "--word", str(self._fibonacci_file(2000)))
        self.assertEqual(code, 0)
        value = json.loads(out)["value"]
        self.assertGreater(value, 1.6)
        self.assertLess(value, 1.8)


class TestScanAndVerify(CliTestCase):

    def test_scan_small_bounds_is_empty(self):
        code, out = self.run_cli("scan", "--max-entry", "1", "--max-period", "1", "--max-preperiod", "0")
        self.assertEqual(code, 0)
        self.assertEqual(out, "b,value,decimal\n")

    def test_scan_inclusive(self):
        code, out = self.run_cli(
            "scan", "--max-entry", "3", "--max-period", "4", "--max-preperiod", "1", "--inclusive"
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))
        self.assertEqual([row[0] for row in rows[1:]], ["2,1", "3"])
        self.assertEqual(rows[1][1], "sqrt(3)")

    def test_verify(self):
        code, out = self.run_cli("verify", "--suite", "lemma-5x", "--cases", "2", "--threads", "1", "--seed", "5")
        self.assertEqual(code, 0)
        self.assertIn("lemma-5x: PASS", out)

    def test_verify_failure_without_counterexample(self):
        empty = SuiteResult("lemma-5x", seed=0, cases=2, failed=2)
        with mock.patch("palinfix.batch.run_suite", return_value=empty):
            code, out = self.run_cli("verify", "--suite", "lemma-5x", "--cases", "2", "--threads", "1")
        self.assertEqual(code, 1)
        self.assertIn("lemma-5x: FAIL", out)


class TestUsageErrors(CliTestCase):

    def test_missing_spec(self):
        self.assertEqual(self.run_cli("generate")[0], 2)

    def test_unreadable_spec(self):
        self.assertEqual(self.run_cli("check", str(self.tmp / "missing.json"))[0], 2)

    def test_unknown_preset(self):
        self.assertEqual(self.run_cli("delta", "--preset", "lucas")[0], 2)

    def test_bad_length(self):
        self.assertEqual(self.run_cli("generate", "--preset", "fibonacci", "--length", "0")[0], 2)

    def test_no_command(self):
        self.assertEqual(self.run_cli()[0], 2)

    def test_unknown_suite(self):
        self.assertEqual(self.run_cli("verify", "--suite", "lemma-99")[0], 2)


class TestConfigCommand(CliTestCase):

    def test_set_and_show(self):
        self.assertEqual(self.run_cli("config", "set", "Verify", "cases", "9")[0], 0)
        code, out = self.run_cli("config", "show")
        self.assertEqual(code, 0)
        self.assertIn("[Verify]", out)
        self.assertIn("cases = 9", out)

    def test_set_needs_three_values(self):
        self.assertEqual(self.run_cli("config", "set", "Verify")[0], 2)

    def test_version(self):
        code, out = self.run_cli("--version")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("palinfix version"))


if __name__ == "__main__":
    unittest.main()
