import sys

from puiseuxlab.cli import main

sys.exit(main())
