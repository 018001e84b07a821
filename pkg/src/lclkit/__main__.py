import sys

from lclkit.cli import main

sys.exit(main())
