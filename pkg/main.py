"""Application launcher.

Runs the experiment CLI from the repository root:

    python main.py eval --config configs/wdbc.json
"""

import sys
from pathlib import Path

# Configuration
ROOT = Path(__file__).resolve().parent


def run() -> None:
    """Main application entry point."""
    if str(ROOT) not in sys.path:
        sys.path.insert(0, str(ROOT))

    from uqc.interface.cli.main import main

    sys.exit(main())


if __name__ == "__main__":
    run()
