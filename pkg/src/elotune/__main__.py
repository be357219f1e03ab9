import sys

from elotune.cli import main

sys.exit(main())
