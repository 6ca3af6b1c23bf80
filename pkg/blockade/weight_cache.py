"""Bounded memo cache for weight diagrams.

Entries are evicted in insertion order once the limit is reached. All
access goes through one lock, so a cache can be shared by the worker
threads of a batch evaluation.
"""

from __future__ import annotations

import logging
import threading
from collections import OrderedDict
from typing import Callable, Generic, Hashable, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


class WeightDiagramCache(Generic[T]):
    """Insertion-ordered cache with a fixed capacity (0 disables caching)."""

    def __init__(self, max_entries: int):
        self._entries: "OrderedDict[Hashable, T]" = OrderedDict()
        self._max_entries = max(0, int(max_entries))
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @property
    def max_entries(self) -> int:
        return self._max_entries

    def resize(self, max_entries: int) -> None:
        """Change the capacity, evicting the oldest entries if needed."""
        with self._lock:
            self._max_entries = max(0, int(max_entries))
            self._evict_locked()

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._entries

    def get(self, key: Hashable) -> Optional[T]:
        with self._lock:
            value = self._entries.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key: Hashable, value: T) -> None:
        with self._lock:
            if self._max_entries == 0:
                return
            if key in self._entries:
                return
            self._entries[key] = value
            self._evict_locked()

    def get_or_compute(self, key: Hashable, compute: Callable[[], T]) -> T:
        """Return the cached value, computing and storing it on a miss.

        The computation runs outside the lock; if two threads race on the
        same key the first stored value wins and both return equal data.
        """
        cached = self.get(key)
        if cached is not None:
            return cached
        value = compute()
        self.put(key, value)
        return value

    def _evict_locked(self) -> None:
        while len(self._entries) > self._max_entries:
            key, _ = self._entries.popitem(last=False)
            logger.debug(f"Evicted weight diagram {key}")
