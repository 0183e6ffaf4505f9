import sys

from dirnull.cli import main

sys.exit(main())
