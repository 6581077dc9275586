"""
Slice Workbench - Entry Point
Run: python workbench.py <command> [options]
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from workbench_cli import run  # noqa: E402

if __name__ == "__main__":
    sys.exit(run())
