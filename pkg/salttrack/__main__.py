import sys

from salttrack.cli.entry import main

if __name__ == "__main__":
    sys.exit(main())
