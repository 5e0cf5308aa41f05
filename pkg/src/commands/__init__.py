"""
Subcommand registry.

Each subcommand is a Command subclass; main.py builds one argparse
subparser per entry.
"""

from .asymptotics import AsymptCommand, CLTCommand, RegimesCommand
from .base import Command, CommandOutput
from .counting import CountCommand, FigureCommand, LatinCommand
from .relabelling import DisjointCommand, SwitchCommand
from .verify import VerifyCommand

COMMANDS: dict[str, Command] = {
    command.name: command
    for command in (
        CountCommand(),
        LatinCommand(),
        AsymptCommand(),
        RegimesCommand(),
        DisjointCommand(),
        SwitchCommand(),
        CLTCommand(),
        FigureCommand(),
        VerifyCommand(),
    )
}


def get_command(name: str) -> Command:
    if name not in COMMANDS:
        available = ", ".join(COMMANDS.keys())
        raise ValueError(f"Unknown command '{name}'. Available commands: {available}")
    return COMMANDS[name]


def list_commands() -> list[str]:
    return list(COMMANDS.keys())


__all__ = ["COMMANDS", "Command", "CommandOutput", "get_command", "list_commands"]
