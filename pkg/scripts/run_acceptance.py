"""Run the acceptance suite and show one verdict line per guarantee.

Thin wrapper over pytest so the gate can be invoked without remembering
flags; exits with pytest's status (the expected-failure entry counts as
passing the gate).
"""

import subprocess
import sys
from pathlib import Path


def main() -> int:
    target = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    return subprocess.run(
        [
            sys.executable,
            "-m",
            "pytest",
            str(target),
            "-v",
            "--no-header",
            "-p",
            "no:cacheprovider",
        ],
        cwd=target.parent.parent,
    ).returncode


if __name__ == "__main__":
    sys.exit(main())
