import sys

from hyperfell.cli import main

sys.exit(main())
