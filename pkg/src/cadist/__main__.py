"""Allow running as python -m cadist."""

import sys

from cadist.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
