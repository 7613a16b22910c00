"""
Runtime settings and logging setup.

Settings come from the environment (a local .env is honoured through
python-dotenv, loaded by the CLI before anything else runs).
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

PACKAGE_DATA_DIR = Path(__file__).resolve().parent.parent / "data"

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    """Environment-derived configuration"""

    data_dir: Path
    log_level: str
    shuffle_trials: int
    closure_cap: int

    @property
    def catalog_path(self) -> Path:
        return self.data_dir / "catalog.yaml"

    @property
    def fixtures_dir(self) -> Path:
        return self.data_dir / "fixtures"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Read settings from the environment.

    Cached; call get_settings.cache_clear() after changing the environment.
    """
    data_dir = os.getenv("GENUS2_DATA_DIR")
    return Settings(
        data_dir=Path(data_dir) if data_dir else PACKAGE_DATA_DIR,
        log_level=os.getenv("GENUS2_LOG_LEVEL", "WARNING").upper(),
        shuffle_trials=int(os.getenv("GENUS2_SHUFFLE_TRIALS", "100")),
        closure_cap=int(os.getenv("GENUS2_CLOSURE_CAP", "64")),
    )


def setup_logging(level: str = None) -> None:
    """Configure the root logger once; later calls only adjust the level"""
    level = (level or get_settings().log_level).upper()
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=level, format=LOG_FORMAT)
    root.setLevel(level)
