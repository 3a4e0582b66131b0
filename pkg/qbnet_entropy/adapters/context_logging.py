"""Context adapter using the context-logging library."""

from contextvars import ContextVar
from typing import Any, Self

# Open context-logging contexts, innermost last.
_open_contexts: ContextVar[tuple[Any, ...]] = ContextVar(
    "qbnet_context_logging_scopes",
    default=(),
)


class ContextLoggingAdapter:
    """Context adapter using the context-logging library.

    Requires the optional dependency:

        pip install qbnet-entropy[context-logging]

    context-logging nests natively, injects the values into log records once
    `setup_log_record()` has been called, and can log how long each scope took,
    which is handy for timing whole batches.

    Example:
        >>> from qbnet_entropy.adapters import ContextLoggingAdapter
        >>> from qbnet_entropy.context import set_adapter
        >>>
        >>> set_adapter(ContextLoggingAdapter(name="qbnet", log_execution_time=True))

    Raises:
        ImportError: If context-logging is not installed.
    """

    def __init__(
        self,
        name: str | None = None,
        *,
        log_execution_time: bool | None = None,
        fill_exception_context: bool | None = None,
    ) -> None:
        """Initialize the adapter.

        Args:
            name: Optional name for every scope opened by this adapter.
            log_execution_time: Whether context-logging logs scope durations.
            fill_exception_context: Whether context-logging annotates exceptions.

        Raises:
            ImportError: If context-logging is not installed.
        """
        try:
            from context_logging import current_context  # noqa: F401, PLC0415
        except ImportError as e:
            msg = (
                "context-logging is required for ContextLoggingAdapter. "
                "Install with: pip install qbnet-entropy[context-logging]"
            )
            raise ImportError(msg) from e

        self._name = name
        self._log_execution_time = log_execution_time
        self._fill_exception_context = fill_exception_context

    def set_value(self, key: str, value: Any) -> None:  # noqa: ANN401
        """Set a value in the innermost scope.

        Args:
            key: The context key.
            value: The value to store.
        """
        from context_logging import current_context  # noqa: PLC0415

        current_context[key] = value

    def get_value(self, key: str) -> Any:  # noqa: ANN401
        """Get a value.

        Args:
            key: The context key to retrieve.

        Returns:
            The stored value, or None if not set.
        """
        from context_logging import current_context  # noqa: PLC0415

        return current_context.get(key)

    def get_all(self) -> dict[str, Any]:
        """Get every visible value.

        Returns:
            A copy of all stored key-value pairs.
        """
        from context_logging import current_context  # noqa: PLC0415

        return dict(current_context)

    def __enter__(self) -> Self:
        """Open a nested context-logging scope.

        Returns:
            Self for use in with statement.
        """
        from context_logging import Context  # noqa: PLC0415

        scope = Context(
            self._name,
            log_execution_time=self._log_execution_time,
            fill_exception_context=self._fill_exception_context,
        )
        scope.__enter__()
        _open_contexts.set((*_open_contexts.get(), scope))
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: object,
    ) -> None:
        """Close the innermost scope; a no-op when none is open."""
        scopes = _open_contexts.get()
        if not scopes:
            return
        *outer, scope = scopes
        _open_contexts.set(tuple(outer))
        scope.__exit__(exc_type, exc_val, exc_tb)
