import sys

from rrgmoves.cli import main

sys.exit(main())
