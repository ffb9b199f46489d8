"""
Report Store
Reads and writes report files on the local filesystem
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

from src.utils.logger import get_logger

logger = get_logger(__name__)


class ReportStore:
    """Load and save reports under a base directory"""

    def __init__(self, base_dir: Union[str, Path, None] = None):
        """
        Initialize report store

        Args:
            base_dir: directory relative keys resolve against (default: cwd)
        """
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()
        logger.debug(f"Initialized ReportStore at {self.base_dir}")

    def _path(self, key: Union[str, Path]) -> Path:
        path = Path(key)
        return path if path.is_absolute() else self.base_dir / path

    def read_json(self, key: Union[str, Path]) -> Optional[Any]:
        """
        Read a JSON report

        Args:
            key: file path, absolute or relative to base_dir

        Returns:
            Parsed JSON or None if the file does not exist
        """
        path = self._path(key)
        try:
            logger.info(f"Reading JSON from {path}")
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError:
            logger.warning(f"Report not found: {path}")
            return None
        except Exception as e:
            logger.error(f"Error reading JSON report: {e}")
            raise

    def write_json(self, data: Any, key: Union[str, Path]):
        """
        Write data as indented JSON

        Args:
            data: JSON-serializable data
            key: file path
        """
        self.write_text(json.dumps(data, indent=2) + '\n', key)

    def write_text(self, text: str, key: Union[str, Path]):
        """
        Write a rendered report

        Args:
            text: file content
            key: file path
        """
        path = self._path(key)
        try:
            logger.info(f"Writing report to {path}")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding='utf-8')
        except Exception as e:
            logger.error(f"Error writing report: {e}")
            raise
