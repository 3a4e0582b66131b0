"""`python -m qbnet_entropy` entry point."""

from qbnet_entropy.cli import main

raise SystemExit(main())
