import sys

from gracelab.cli import main

sys.exit(main())
