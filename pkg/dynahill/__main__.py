import sys
from dynahill.cli import main

sys.exit(main())
