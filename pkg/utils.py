"""
Utility functions for the meadow toolkit
"""
import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {level} - {name} - {message}"


def configure_logging(level: str = "WARNING", log_file: Optional[Union[str, Path]] = None) -> None:
    """
    Replace loguru's default sink with a stderr sink at the given level.

    Args:
        level (str): Minimum level name (DEBUG, INFO, WARNING, ...)
        log_file (str, optional): Also write to this file, rotated at 10 MB
    """
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)
    if log_file:
        ensure_directory(Path(log_file).parent)
        logger.add(str(log_file), level=level.upper(), format=LOG_FORMAT, rotation="10 MB")


def ensure_directory(directory_path):
    """
    Ensure a directory exists.

    Args:
        directory_path (str): Path to the directory

    Returns:
        Path: The directory path
    """
    path = Path(directory_path)
    path.mkdir(parents=True, exist_ok=True)
    return path
