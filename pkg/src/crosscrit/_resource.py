"""Base resource class for crosscrit namespaces."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Callable, Hashable, TypeVar

from cachetools import LRUCache

if TYPE_CHECKING:
    from ._client import CrossCrit

T = TypeVar("T")


class BaseResource:
    """Namespace attached to the client, with an LRU cache of computed results."""

    def __init__(self, client: CrossCrit) -> None:
        self._client = client
        self._cache: LRUCache = LRUCache(maxsize=client.cache_size)

    def _cached(
        self,
        key: Hashable,
        compute: Callable[[], T],
        *,
        use_cache: bool = True,
        force_refresh: bool = False,
    ) -> T:
        """Return the cached result for ``key``, computing it on a miss.

        Results are immutable models, so sharing them between callers is safe.
        """
        if not use_cache:
            return compute()

        if not force_refresh and key in self._cache:
            return self._cache[key]

        result = compute()
        self._cache[key] = result
        return result

    def clear_cache(self) -> None:
        self._cache.clear()

    @staticmethod
    def _key(*parts: Any) -> Hashable:
        """Build a hashable key from models and plain values."""
        out = []
        for part in parts:
            if hasattr(part, "model_dump"):
                out.append(repr(part.model_dump()))
            elif isinstance(part, (list, dict)):
                out.append(repr(part))
            else:
                out.append(part)
        return tuple(out)
