"""
Command-line front end for Ramsey Lab. Entry point: src.cli.main.main.
"""
