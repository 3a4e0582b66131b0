"""Context adapter using Python's built-in contextvars."""

from contextvars import ContextVar, Token
from typing import Any, Self

from qbnet_entropy.types import ContextDict

_context_var: ContextVar[ContextDict | None] = ContextVar(
    "qbnet_run_context",
    default=None,
)

# Reset tokens of the open scopes, innermost last.
_scope_tokens: ContextVar[tuple[Token[ContextDict | None], ...]] = ContextVar(
    "qbnet_run_context_tokens",
    default=(),
)


def _format_note(context: ContextDict) -> str:
    pairs = " ".join(f"{key}={value}" for key, value in context.items())
    return f"run context: {pairs}"


class ContextVarsAdapter:
    """Context adapter using Python's built-in contextvars.

    This is the default adapter. Each scope holds a copy of its parent's dict,
    so a trial scope sees the command and check id set further out, and
    leaving the trial scope drops only the trial's values.

    Note:
        Worker threads start with an empty context. Wrap the work with
        `with_run_context` to carry the caller's values across.

    Example:
        >>> from qbnet_entropy.adapters import ContextVarsAdapter
        >>>
        >>> adapter = ContextVarsAdapter()
        >>> with adapter:
        ...     adapter.set_value("check_id", "mi_nonneg")
        ...     with adapter:
        ...         adapter.set_value("trial", 3)
    """

    def set_value(self, key: str, value: Any) -> None:  # noqa: ANN401
        """Set a value in the innermost scope; ignored outside any scope.

        Args:
            key: The context key.
            value: The value to store.
        """
        context = _context_var.get()
        if context is not None:
            context[key] = value

    def get_value(self, key: str) -> Any:  # noqa: ANN401
        """Get a value.

        Args:
            key: The context key to retrieve.

        Returns:
            The stored value, or None if not set.
        """
        context = _context_var.get()
        if context is None:
            return None
        return context.get(key)

    def get_all(self) -> dict[str, Any]:
        """Get every visible value.

        Returns:
            A copy of the innermost scope's dict.
        """
        context = _context_var.get()
        if context is None:
            return {}
        return dict(context)

    def __enter__(self) -> Self:
        """Open a scope seeded with a copy of the enclosing one.

        Returns:
            Self for use in with statement.
        """
        token = _context_var.set(self.get_all())
        _scope_tokens.set((*_scope_tokens.get(), token))
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: object,
    ) -> None:
        """Close the innermost scope.

        An escaping exception gets the scope's values added as a note, once:
        the innermost scope wins because it knows the trial and seed.
        """
        if exc_val is not None and not getattr(exc_val, "__context_logging__", False):
            context = self.get_all()
            if context:
                exc_val.__context_logging__ = True  # type: ignore[attr-defined]
                exc_val.add_note(_format_note(context))

        tokens = _scope_tokens.get()
        if not tokens:
            return
        *outer, token = tokens
        _scope_tokens.set(tuple(outer))
        _context_var.reset(token)
