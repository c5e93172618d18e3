"""Run log for bracket queries, enumeration diagnostics and verification runs.

The run log is separate from the stderr diagnostics configured in main.py:
it gets one plain line per event ("[VerificationRunner] start key-lemma")
and is written only when a log file is configured.
"""

import logging
from collections.abc import Sequence
from pathlib import Path


class GoldmanLogger:
    """
    File-backed run logger, injected wherever a LoggerProtocol is expected.

    Usage:
        run_logger = GoldmanLogger()
        run_logger.setup_file_handler(Path("output/verify.log"))
        run_logger.run_header("torus1:u=4", ["verify", "all"])
        run_logger.log("[VerificationRunner] start cosh-product")
    """

    def __init__(self, name: str = "goldman.run", level: int = logging.INFO):
        self._logger = logging.getLogger(name)
        self._logger.setLevel(level)
        self._logger.propagate = False
        if not self._logger.handlers:
            self._logger.addHandler(logging.NullHandler())
        self._events = 0
        self._path: Path | None = None

    @property
    def logger(self) -> logging.Logger:
        return self._logger

    @property
    def path(self) -> Path | None:
        """Current log file, or None when events are discarded."""
        return self._path

    @property
    def events(self) -> int:
        """Messages logged since the last file switch."""
        return self._events

    def setup_file_handler(self, log_file_path: Path, *, append: bool = False) -> None:
        """
        Send events to a new file, closing the previous one.

        Args:
            log_file_path: Log file; parent directories are created
            append: Keep existing content instead of truncating
        """
        self._drop_file_handlers()
        path = Path(log_file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(path, mode="a" if append else "w", encoding="utf-8")
        handler.setFormatter(logging.Formatter("%(message)s"))
        self._logger.addHandler(handler)
        self._path = path
        self._events = 0

    def run_header(self, surface: str, argv: Sequence[str]) -> None:
        self.log(f"# run surface={surface} argv={' '.join(argv)}")

    def log(self, message: str) -> None:
        self._events += 1
        self._logger.info(message)

    def info(self, message: str) -> None:
        self.log(message)

    def close(self) -> None:
        for handler in self._logger.handlers[:]:
            handler.close()
            self._logger.removeHandler(handler)
        self._path = None

    def _drop_file_handlers(self) -> None:
        for handler in self._logger.handlers[:]:
            if not isinstance(handler, logging.NullHandler):
                handler.close()
                self._logger.removeHandler(handler)
