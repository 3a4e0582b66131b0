"""Base protocol for run-context adapters."""

from typing import Any, Protocol, Self, runtime_checkable


@runtime_checkable
class ContextAdapter(Protocol):
    """Protocol for run-context storage adapters.

    A run is a stack of scopes (command, check id, trial). Entering an adapter
    opens a scope that inherits every value of the enclosing one; exiting
    restores the enclosing scope exactly.

    - `ContextVarsAdapter`: built-in contextvars (default, no deps)
    - `ContextLoggingAdapter`: context-logging library (optional dependency)
    """

    def set_value(self, key: str, value: Any) -> None:  # noqa: ANN401
        """Set a value in the innermost scope.

        Args:
            key: The context key (e.g., "check_id", "seed").
            value: The value to store.
        """
        ...

    def get_value(self, key: str) -> Any:  # noqa: ANN401
        """Get a value visible from the innermost scope.

        Args:
            key: The context key to retrieve.

        Returns:
            The stored value, or None if not set.
        """
        ...

    def get_all(self) -> dict[str, Any]:
        """Get every visible value.

        Returns:
            A copy of all stored key-value pairs.
        """
        ...

    def __enter__(self) -> Self:
        """Open a nested scope.

        Returns:
            Self for use in with statement.
        """
        ...

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: object,
    ) -> None:
        """Close the innermost scope.

        If an exception escapes the scope, implementations attach the scope's
        values to it once (see `__context_logging__`).
        """
        ...
