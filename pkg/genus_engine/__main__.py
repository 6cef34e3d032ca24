"""Allow `python -m genus_engine`"""

import sys

from .run_engine import main

if __name__ == "__main__":
    sys.exit(main())
