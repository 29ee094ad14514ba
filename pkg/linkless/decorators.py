from __future__ import annotations

from functools import wraps
from typing import TYPE_CHECKING, Callable, Concatenate, TypeVar

from linkless.utils import CapacityExceededError, P

if TYPE_CHECKING:
    from linkless.graph import Graph

__all__ = ["validated", "vertex_limit"]

R = TypeVar("R")


def vertex_limit(
    limit: int,
) -> Callable[[Callable[Concatenate[Graph, P], R]], Callable[Concatenate[Graph, P], R]]:
    """Reject graphs with more than ``limit`` vertices before calling the wrapped function.

    The graph must be the first positional argument.
    """

    def decorator(func: Callable[Concatenate[Graph, P], R]) -> Callable[Concatenate[Graph, P], R]:
        @wraps(func)
        def wrapped_function(g: Graph, *args: P.args, **kwargs: P.kwargs) -> R:
            if g.n > limit:
                msg = f"{func.__name__} supports at most {limit} vertices, got {g.n}"
                raise CapacityExceededError(msg)
            return func(g, *args, **kwargs)

        return wrapped_function

    return decorator


def validated(
    func: Callable[P, Graph],
) -> Callable[P, Graph]:
    """Check the simple-graph invariants of the returned graph."""

    @wraps(func)
    def wrapped_function(*args: P.args, **kwargs: P.kwargs) -> Graph:
        result = func(*args, **kwargs)
        result.check()
        return result

    return wrapped_function
