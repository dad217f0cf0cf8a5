import sys

from ransomgame.cli import main

sys.exit(main())
