import sys

from ambig_miner.main import main

sys.exit(main())
