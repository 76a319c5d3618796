"""Run the acceptance criteria and print one PASS/FAIL line per criterion."""
import pathlib
import subprocess
import sys

tests = pathlib.Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
sys.exit(subprocess.call([sys.executable, str(tests)]))
