import hashlib
import pickle
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

# bump when the pickled catalog layout changes
CACHE_SCHEMA = 1


class CatalogCache:
    """
    Memory and pickle-file cache for deterministic catalogs
    """

    def __init__(self, cache_dir: Optional[Path] = None, enabled: Optional[bool] = None):
        self.local_cache: Dict[str, Any] = {}
        self.cache_dir = Path(cache_dir) if cache_dir is not None else settings.CACHE_DIR
        self.enabled = settings.CACHE_ENABLED if enabled is None else enabled

    def _generate_key(self, kind: str, order: int) -> str:
        return f"{kind}:{order}:schema{CACHE_SCHEMA}"

    def _hash_key(self, key: str) -> str:
        """
        Hash a key for file-based caching
        """
        return hashlib.md5(key.encode()).hexdigest()

    def _file_path(self, full_key: str) -> Path:
        return self.cache_dir / f"{self._hash_key(full_key)}.cache"

    def get(self, kind: str, order: int, default: Any = None) -> Any:
        """
        Get value from cache
        """
        if not self.enabled:
            return default

        full_key = self._generate_key(kind, order)

        if full_key in self.local_cache:
            return self.local_cache[full_key]

        file_path = self._file_path(full_key)
        if file_path.exists():
            try:
                with open(file_path, "rb") as f:
                    entry = pickle.load(f)
                if entry.get("key") == full_key:
                    self.local_cache[full_key] = entry["value"]
                    return entry["value"]
            except Exception as e:
                logger.error(f"File cache read error: {e}")

        return default

    def set(self, kind: str, order: int, value: Any) -> bool:
        """
        Set value in cache
        """
        if not self.enabled:
            return False

        full_key = self._generate_key(kind, order)
        self.local_cache[full_key] = value

        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            with open(self._file_path(full_key), "wb") as f:
                pickle.dump({"key": full_key, "value": value, "created": datetime.now()}, f)
            return True
        except Exception as e:
            logger.error(f"File cache write error: {e}")
            return False

    def get_or_build(self, kind: str, order: int, builder: Callable[[int], Any]) -> Any:
        value = self.get(kind, order)
        if value is not None:
            logger.debug("Catalog cache hit", extra={"extra": {"kind": kind, "order": order}})
            return value
        value = builder(order)
        self.set(kind, order, value)
        return value

    def clear(self) -> None:
        self.local_cache.clear()
        if self.cache_dir.exists():
            for file_path in self.cache_dir.glob("*.cache"):
                try:
                    file_path.unlink()
                except Exception as e:
                    logger.error(f"Error deleting cache file {file_path}: {e}")
        logger.info("Cache cleared")


catalog_cache = CatalogCache()
