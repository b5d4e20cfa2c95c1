"""
Tests for the INI configuration layer.
"""
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from palinfix.core import config as core_config


class TestConfig(unittest.TestCase):
    """Default creation, typed getters and the thread cap."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.config_dir = Path(self._tmp.name) / "palinfix"
        patcher = mock.patch.dict(os.environ, {core_config.CONFIG_DIR_ENV: str(self.config_dir)})
        patcher.start()
        self.addCleanup(patcher.stop)
        self.addCleanup(self._tmp.cleanup)

    def test_config_dir_override(self):
        self.assertEqual(core_config.get_config_dir(), self.config_dir)
        self.assertEqual(core_config.get_config_file(), self.config_dir / "config.ini")

    def test_defaults_are_written(self):
        self.assertTrue(core_config.create_default_config_if_missing())
        self.assertTrue(core_config.get_config_file().is_file())
        self.assertEqual(core_config.get_int("Delta", "burn_in"), 64)
        self.assertEqual(core_config.get_float("Delta", "tolerance"), 1e-6)
        self.assertEqual(core_config.get_setting("Run", "log_level"), "INFO")

    def test_set_setting_round_trip(self):
        self.assertTrue(core_config.set_setting("Verify", "cases", 17))
        self.assertEqual(core_config.get_int("Verify", "cases"), 17)

    def test_missing_keys_are_restored(self):
        core_config.ensure_config_dir_exists()
        core_config.get_config_file().write_text("[Delta]\nburn_in = 5\n")
        config = core_config.load_config()
        self.assertEqual(config.get("Delta", "burn_in"), "5")
        self.assertEqual(config.get("Verify", "seed"), "0")

    def test_bad_integer_falls_back_to_default(self):
        core_config.set_setting("Delta", "window", "many")
        self.assertEqual(core_config.get_int("Delta", "window"), 256)

    def test_effective_threads(self):
        self.assertEqual(core_config.effective_threads(3), 3)
        with mock.patch.dict(os.environ, {core_config.THREADS_ENV: "2"}):
            self.assertEqual(core_config.effective_threads(8), 2)
            self.assertLessEqual(core_config.effective_threads(), 2)
        with mock.patch.dict(os.environ, {core_config.THREADS_ENV: "lots"}):
            self.assertEqual(core_config.effective_threads(4), 4)


if __name__ == "__main__":
    unittest.main()
