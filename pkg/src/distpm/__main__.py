from __future__ import annotations

import sys

from distpm.cli import main

sys.exit(main())
