import sys

from gameopt.cli import main

sys.exit(main())
