import sys

from fcsg_minors.cli import main

sys.exit(main())
