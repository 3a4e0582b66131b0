"""Human-readable formatter with inline run context."""

import logging
from collections.abc import Set as AbstractSet

from qbnet_entropy.context import get_full_context


class SimpleContextFormatter(logging.Formatter):
    """Human-readable formatter with inline context.

    Renders the run context as `[key=value ...]` before the message. Floats in
    the context (margins, deviations) are shortened to a fixed number of
    significant digits; fields listed in `hidden_fields` are left out.

    Example:
        >>> import logging
        >>> from qbnet_entropy import RunContextField
        >>> from qbnet_entropy.formatters import SimpleContextFormatter
        >>>
        >>> formatter = SimpleContextFormatter(
        ...     hidden_fields={RunContextField.COMMAND},
        ... )
        >>> handler = logging.StreamHandler()
        >>> handler.setFormatter(formatter)
        >>> logging.basicConfig(handlers=[handler], level=logging.INFO)
        >>>
        >>> logging.warning("verdict failed")
        # Output: 2026-01-15 10:30:00 WARNING [check_id=cmi_nonneg seed=7 trial=3] verdict failed

    Attributes:
        hidden_fields: Fields to leave out of the output.
        float_digits: Significant digits for float values.
        separator: Separator between context key-value pairs.
    """

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        hidden_fields: AbstractSet[str] | None = None,
        float_digits: int = 3,
        separator: str = " ",
    ) -> None:
        """Initialize the formatter.

        Args:
            fmt: Format string. Use %(context)s for the context placeholder.
            datefmt: Date format string.
            hidden_fields: Field names to hide.
            float_digits: Significant digits for float values.
            separator: Separator between context key-value pairs.
        """
        if fmt is None:
            fmt = "%(asctime)s %(levelname)s %(context)s %(message)s"

        super().__init__(fmt=fmt, datefmt=datefmt)
        self.hidden_fields = hidden_fields or set()
        self.float_digits = float_digits
        self.separator = separator

    def _format_value(self, value: object) -> str:
        if isinstance(value, float):
            return f"{value:.{self.float_digits}g}"
        return str(value)

    def _format_context(self) -> str:
        """Format context values for display.

        Returns:
            Formatted context string like "[key1=val1 key2=val2]", or "".
        """
        parts = [
            f"{key}={self._format_value(value)}"
            for key, value in get_full_context().items()
            if key not in self.hidden_fields
        ]
        if not parts:
            return ""

        return f"[{self.separator.join(parts)}]"

    def format(self, record: logging.LogRecord) -> str:
        """Format the log record with context.

        Args:
            record: The log record to format.

        Returns:
            Formatted string with context.
        """
        record.context = self._format_context()
        return super().format(record)
