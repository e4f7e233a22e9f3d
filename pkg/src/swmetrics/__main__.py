import sys

from swmetrics.cli import main

sys.exit(main())
