"""``python -m lqgame`` runs the command-line interface"""

import sys

from lqgame.harness.cli import main

sys.exit(main())
