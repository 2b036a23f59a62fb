import sys

from caputo_ostrowski.cli import main

sys.exit(main())
