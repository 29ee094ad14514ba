import sys

from linkless.cli import main

sys.exit(main())
