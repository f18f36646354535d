"""Module entry point: ``python -m quiverhecke``."""

from .cli import main

main()
