import sys

from maxaccel.cli import main

sys.exit(main())
