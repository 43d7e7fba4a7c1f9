from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


class Window(tuple):
    """Strictly increasing offsets starting at 0, e.g. ``Window((0, 2, 5))``."""

    def __new__(cls, offsets: Iterable[int] = (0,)):
        offs = tuple(int(o) for o in offsets)
        if not offs or offs[0] != 0:
            raise ValueError(f"window must start at 0: {offs}")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"window offsets must increase strictly: {offs}")
        return super().__new__(cls, offs)

    @property
    def span(self) -> int:
        return self[-1]

    def __repr__(self) -> str:
        return f"Window({tuple(self)})"

    def text(self) -> str:
        return " ".join(map(str, self))

    @classmethod
    def parse(cls, text: str) -> Window:
        return cls(int(t) for t in text.replace(",", " ").split())

    @classmethod
    def contiguous(cls, k: int) -> Window:
        return cls(range(k))


def iter_windows(k: int, max_offset: int) -> Iterator[Window]:
    """All k-windows with offsets <= max_offset, in lexicographic order."""
    if k < 1:
        raise ValueError("window size must be positive")
    for rest in combinations(range(1, max_offset + 1), k - 1):
        yield Window((0,) + rest)
