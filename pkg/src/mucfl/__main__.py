import sys

from mucfl.cli import main

sys.exit(main())
