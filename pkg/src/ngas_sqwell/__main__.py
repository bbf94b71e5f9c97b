import sys

from ngas_sqwell.cli import main

sys.exit(main())
