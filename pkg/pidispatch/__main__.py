# pidispatch/__main__.py
import sys

from pidispatch.cli import main

sys.exit(main())
