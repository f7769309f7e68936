import logging
from typing import Any, Dict, Optional

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(logging_config: Optional[Dict[str, Any]] = None) -> logging.Logger:
    """
    Configures the root logger from the `logging` section of the config.

    Args:
        logging_config (Optional[Dict[str, Any]]): Mapping with optional
            `level` and `format` keys.

    Returns:
        logging.Logger: The package logger.

    Raises:
        ValueError: If the configured level name is unknown.
    """
    logging_config = logging_config or {}
    level_name = str(logging_config.get("level", "INFO")).upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise ValueError(f"Unknown logging level: {level_name}")

    logging.basicConfig(
        level=level,
        format=logging_config.get("format", DEFAULT_FORMAT),
        force=True,
    )
    package_logger = logging.getLogger("berry_esseen")
    package_logger.setLevel(level)
    return package_logger
