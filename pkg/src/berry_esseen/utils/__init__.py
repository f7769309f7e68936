from berry_esseen.utils.config import DEFAULT_CONFIG, load_config
from berry_esseen.utils.logger import setup_logger
from berry_esseen.utils.rng import chunk_bounds, random_generator, substream

__all__ = [
    "DEFAULT_CONFIG",
    "chunk_bounds",
    "load_config",
    "random_generator",
    "setup_logger",
    "substream",
]
