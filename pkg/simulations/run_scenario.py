import sys

from revival_dynamics.cli import main

if __name__ == "__main__":
    sys.exit(main())
