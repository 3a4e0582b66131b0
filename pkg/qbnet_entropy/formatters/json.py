"""JSON formatter for machine-read batch logs."""

import json
import logging
import math
from typing import Any

from qbnet_entropy.context import get_full_context


def _jsonable(value: Any) -> Any:  # noqa: ANN401
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class JsonContextFormatter(logging.Formatter):
    """JSON formatter that includes the run context.

    Emits one JSON object per record. The command, check id, seed and trial of
    the enclosing run scope are nested under `context_key`, so a warning about
    a failed verdict can be replayed from the log line alone.

    When python-json-logger is installed its encoder is used (numpy scalars,
    dataclasses and other non-JSON values are handled there); otherwise the
    standard `json` module is used with `default=str`.

    Example:
        >>> import logging
        >>> from qbnet_entropy.formatters import JsonContextFormatter
        >>>
        >>> handler = logging.StreamHandler()
        >>> handler.setFormatter(JsonContextFormatter())
        >>> logging.basicConfig(handlers=[handler], level=logging.INFO)
        >>>
        >>> logging.info("batch finished")
        # Output: {"message": "batch finished", "level": "INFO", "logger": "root",
        #          "timestamp": "...", "context": {"command": "check", "check_id": "..."}}

    Attributes:
        context_key: Key for the nested context, or None to merge it at top level.
        include_standard_fields: Include level, logger name and timestamp.
    """

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        context_key: str | None = "context",
        *,
        include_standard_fields: bool = True,
    ) -> None:
        """Initialize the formatter.

        Args:
            fmt: Format string (unused, kept for `logging.config` compatibility).
            datefmt: Date format string.
            context_key: Nest context under this key; None merges it at top level.
            include_standard_fields: Include level, logger name and timestamp.
        """
        super().__init__(fmt=fmt, datefmt=datefmt)
        self.context_key = context_key
        self.include_standard_fields = include_standard_fields
        self._encode = self._stdlib_encode

        try:
            from pythonjsonlogger.json import JsonFormatter  # noqa: PLC0415
        except ImportError:  # pragma: no cover
            pass
        else:
            self._json_formatter = JsonFormatter(datefmt=datefmt)
            self._encode = self._json_formatter.jsonify_log_record

    @staticmethod
    def _stdlib_encode(log_data: dict[str, Any]) -> str:
        return json.dumps(log_data, default=str)

    def format(self, record: logging.LogRecord) -> str:
        """Format the log record as JSON.

        Args:
            record: The log record to format.

        Returns:
            JSON-formatted string.
        """
        log_data: dict[str, Any] = {
            "message": record.getMessage(),
        }

        if self.include_standard_fields:
            log_data.update(
                {
                    "level": record.levelname,
                    "logger": record.name,
                    "timestamp": self.formatTime(record, self.datefmt),
                },
            )

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        context = {key: _jsonable(value) for key, value in get_full_context().items()}
        if context:
            if self.context_key:
                log_data[self.context_key] = context
            else:
                log_data.update(context)

        return self._encode(log_data)
