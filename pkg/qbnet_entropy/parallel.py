"""Trial parallelism with run-context preservation."""

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from functools import wraps

from qbnet_entropy.context import get_full_context, run_scope


def with_run_context[**P, R](func: Callable[P, R]) -> Callable[P, R]:
    """Wrap a function so it runs inside the caller's run context.

    Worker threads start with an empty contextvars context. The context is
    captured when this decorator is called and restored around every call of
    the wrapped function, in whichever thread it runs.

    Example:
        ```python
        from concurrent.futures import ThreadPoolExecutor

        with run_scope({RunContextField.CHECK_ID: "cmi_nonneg"}):
            task = with_run_context(run_one_trial)
            with ThreadPoolExecutor() as pool:
                verdicts = list(pool.map(task, range(100)))
        ```

    Args:
        func: The function to wrap.

    Returns:
        A wrapped function that re-enters the captured context on each call.
    """
    captured = get_full_context()

    @wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        with run_scope(dict(captured)):
            return func(*args, **kwargs)

    return wrapper


def map_trials[T](func: Callable[[int], T], count: int, *, workers: int = 1) -> list[T]:
    """Evaluate `func(trial)` for every trial index.

    Every trial derives its own seed from its index, so the results do not
    depend on scheduling; they are returned in trial order.

    Args:
        func: Trial function taking the trial index.
        count: Number of trials.
        workers: Thread count; 1 runs inline.

    Returns:
        Results ordered by trial index.
    """
    if workers <= 1 or count <= 1:
        return [func(trial) for trial in range(count)]

    task = with_run_context(func)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(count)))
