import sys

from hierbgk.cli import main

sys.exit(main())
