import logging
import os
import sys

import click

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import Config


def create_app() -> click.Group:
    @click.group()
    @click.option(
        "--log-level",
        type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
        default=None,
        help="Overrides LOG_LEVEL.",
    )
    def app(log_level):
        """Structure of real spherical spaces: compression cones, wavefront test, polar decomposition."""
        logging.basicConfig(
            level=(log_level or Config.LOG_LEVEL).upper(),
            format=Config.LOG_FORMAT,
            force=True,
        )

    # Register commands
    from cli.routes import COMMANDS

    for command in COMMANDS:
        app.add_command(command)

    return app


def main():
    create_app()(prog_name="spherical")


if __name__ == "__main__":
    main()
