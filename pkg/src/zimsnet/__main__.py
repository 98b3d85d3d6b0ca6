import sys

from zimsnet.cli import main

sys.exit(main())
