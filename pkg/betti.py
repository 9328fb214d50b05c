#!/usr/bin/env python3
"""Run the ``betti`` command line tool from a source checkout."""

import sys

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
