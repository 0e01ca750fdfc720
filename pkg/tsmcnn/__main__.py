import sys

from tsmcnn.cli import main

sys.exit(main())
