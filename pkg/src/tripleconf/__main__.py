import sys

from tripleconf.cli import main

sys.exit(main())
