"""Run the CLI via ``python -m antroute``."""

from .cli import run_main

run_main()
