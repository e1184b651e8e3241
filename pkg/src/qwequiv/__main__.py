import sys

from qwequiv.cli import main

sys.exit(main())
