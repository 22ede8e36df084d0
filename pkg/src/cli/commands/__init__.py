"""
Subcommands. Each module exposes register(subparsers) and run(args).
"""

from src.cli.commands import analyze, construct, detect, lemma, ramsey

COMMANDS = [construct, analyze, detect, ramsey, lemma]

__all__ = ['COMMANDS']
