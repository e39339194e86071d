"""Logging module"""
import logging

stream_handler = logging.StreamHandler()
formatter = logging.Formatter("%(message)s")
stream_handler.setFormatter(formatter)

logger = logging.getLogger("e4surf")
logger.setLevel(logging.INFO)
logger.addHandler(stream_handler)

logging.captureWarnings(True)
warnings_logger = logging.getLogger("py.warnings")
warnings_logger.setLevel(logging.WARN)
warnings_logger.addHandler(stream_handler)


def set_verbosity(verbose: bool) -> None:
    """Switches the package logger between INFO and DEBUG

    Args:
        verbose (bool): Enable debug output
    """
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
