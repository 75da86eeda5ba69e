"""Path-add / non-path-add / global-minimum over the edges of a tree.

The tree edges live in heavy-light order, so a tree path is a handful of
contiguous position ranges and every path operation becomes that many range
additions on a min segment tree. The segment tree keeps an additive tag per
node (``mn[i] = min(mn[2i], mn[2i+1]) + ad[i]``), so nothing is ever pushed
down and integer-valued inputs stay exact.
"""

from __future__ import annotations

import numpy as np

from ._accel import kernel
from .spanning_tree import HldIndex, _sorted_intervals, interval_capacity


@kernel
def seg_build(values):
    count = values.shape[0]
    size = 1
    while size < count:
        size *= 2
    mn = np.full(2 * size, np.inf)
    ad = np.zeros(2 * size)
    for p in range(count):
        mn[size + p] = values[p]
    for i in range(size - 1, 0, -1):
        mn[i] = min(mn[2 * i], mn[2 * i + 1])
    return mn, ad, size


@kernel
def _pull(mn, ad, i):
    while i > 1:
        i >>= 1
        mn[i] = min(mn[2 * i], mn[2 * i + 1]) + ad[i]


@kernel
def seg_range_add(mn, ad, size, lo, hi, x):
    """Add ``x`` to positions ``lo..hi`` inclusive."""
    left = lo + size
    right = hi + size + 1
    first = left
    last = right - 1
    while left < right:
        if left & 1:
            mn[left] += x
            ad[left] += x
            left += 1
        if right & 1:
            right -= 1
            mn[right] += x
            ad[right] += x
        left >>= 1
        right >>= 1
    _pull(mn, ad, first)
    _pull(mn, ad, last)


@kernel
def seg_argmin(mn, size):
    """Leftmost position holding the global minimum."""
    i = 1
    while i < size:
        if mn[2 * i] <= mn[2 * i + 1]:
            i = 2 * i
        else:
            i = 2 * i + 1
    return i - size


@kernel
def seg_value(mn, ad, size, pos):
    i = pos + size
    total = mn[i]
    i >>= 1
    while i >= 1:
        total += ad[i]
        i >>= 1
    return total


@kernel
def _path_add(mn, ad, size, a, b, x, head, parent, depth, index, lo, hi):
    cnt = _sorted_intervals(a, b, head, parent, depth, index, lo, hi)
    for s in range(cnt):
        seg_range_add(mn, ad, size, lo[s], hi[s], x)
    return cnt


class PathAggregator:
    """Per-edge values of a rooted tree under path and non-path additions.

    The logical value at position ``i`` is the stored segment-tree value plus
    a global offset; :meth:`nonpath_add` bumps the offset and cancels it on
    the path. ``range_ops`` counts segment-tree range operations (adds and
    queries), the unit used for growth checks.
    """

    def __init__(self, hld: HldIndex, init) -> None:
        init = np.asarray(init, dtype=np.float64)
        if init.shape != (hld.size,):
            raise ValueError(f"expected {hld.size} initial values, got {init.shape}")
        self.hld = hld
        self.mn, self.ad, self.size = seg_build(init)
        self.offset = 0.0
        self.range_ops = 0
        width = interval_capacity(hld.tree.n)
        self._lo = np.empty(width, dtype=np.int64)
        self._hi = np.empty(width, dtype=np.int64)

    @classmethod
    def build(cls, hld: HldIndex, init=None) -> PathAggregator:
        """Aggregator seeded with ``init`` (default: the tree's edge weights)."""
        return cls(hld, hld.edge_weights() if init is None else init)

    def path_add(self, u: int, v: int, x: float) -> int:
        """Add ``x`` to every edge on the u-v path; returns range ops issued."""
        if u == v:
            return 0
        t = self.hld.tree
        cnt = _path_add(
            self.mn, self.ad, self.size, int(u), int(v), float(x),
            self.hld.head, t.parent, t.depth, self.hld.index, self._lo, self._hi,
        )
        self.range_ops += cnt
        return cnt

    def nonpath_add(self, u: int, v: int, x: float) -> int:
        """Add ``x`` to every edge off the u-v path."""
        self.offset += x
        return self.path_add(u, v, -x)

    def add_at(self, position: int, x: float) -> None:
        seg_range_add(self.mn, self.ad, self.size, int(position), int(position), float(x))
        self.range_ops += 1

    def query_min(self) -> tuple[float, int]:
        """(minimum logical value, smallest position attaining it)."""
        self.range_ops += 1
        return float(self.mn[1] + self.offset), int(seg_argmin(self.mn, self.size))

    def value_at(self, position: int) -> float:
        return float(seg_value(self.mn, self.ad, self.size, int(position)) + self.offset)

    def values(self) -> np.ndarray:
        return np.array([self.value_at(p) for p in range(self.hld.size)])
