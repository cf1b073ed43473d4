import logging
import time
from typing import Annotated

import typer

from src.config import Config
from src.schema import LogLevel

logger = logging.getLogger("oimlab")


def register_middleware(app: typer.Typer):

    @app.callback()
    def custom_logging(
        ctx: typer.Context,
        log_level: Annotated[LogLevel, typer.Option("--log-level", case_sensitive=False,
                                                    help="Logging level")] = LogLevel(Config.LOG_LEVEL.upper()),
    ):
        """Oscillator Ising machine dynamics and fixed-point stability analysis."""
        logging.basicConfig(
            level=log_level.value,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            force=True,
        )
        start_time = time.perf_counter()

        def report():
            processing_time = time.perf_counter() - start_time
            logger.info("%s completed after %.3fs", ctx.invoked_subcommand, processing_time)

        ctx.call_on_close(report)
