"""Entry point for running qcaveat as a module: python -m qcaveat"""

from qcaveat.cli.main import cli

if __name__ == "__main__":
    cli()
