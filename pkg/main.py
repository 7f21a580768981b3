"""
Entry point for the mackey_e2 command-line tool.

Equivalent to ``python -m mackey_e2``; run ``python main.py --help`` for the
list of commands.

License: MIT
"""

import sys

from mackey_e2.cli import main


if __name__ == "__main__":
    sys.exit(main())
