import sys

from qkagome.cli.main import main

sys.exit(main())
