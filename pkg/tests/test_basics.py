"""
Basic tests for palinfix packaging.
"""
import unittest


class TestBasics(unittest.TestCase):
    """Basic test cases."""

    def test_import(self):
        """Test that the package and its entry point can be imported."""
        import palinfix
        from palinfix.main import main

        self.assertIsNotNone(palinfix)
        self.assertTrue(callable(main))

    def test_version(self):
        """Test that the version is defined."""
        import palinfix

        self.assertTrue(hasattr(palinfix, "__version__"))
        self.assertRegex(palinfix.__version__, r"^\d+\.\d+\.\d+$")


if __name__ == "__main__":
    unittest.main()
