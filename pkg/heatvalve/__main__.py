import sys

from heatvalve.cli import main

sys.exit(main())
