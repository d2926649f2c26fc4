import logging
from typing import Optional

LOG_FORMAT = "%(asctime)s |%(levelname)s| %(name)s: %(message)s"


def setup_logging(level: str = "INFO") -> None:
    logging.basicConfig(format=LOG_FORMAT, level=getattr(logging, level.upper(), logging.INFO))


def progress_disabled(logger: logging.Logger) -> Optional[bool]:
    """tqdm `disable` value: off below INFO, otherwise tqdm decides (None hides bars on non-TTY output)."""
    return None if logger.isEnabledFor(logging.INFO) else True
