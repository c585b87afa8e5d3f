"""Command-line interface for cadist."""

from cadist.cli.commands import CLICommands, run
from cadist.cli.config import ConfigManager, RunConfig, Settings, load_settings
from cadist.cli.main import build_parser, main

__all__ = [
    "CLICommands",
    "ConfigManager",
    "RunConfig",
    "Settings",
    "build_parser",
    "load_settings",
    "main",
    "run",
]
