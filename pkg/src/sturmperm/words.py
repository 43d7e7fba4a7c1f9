"""Finite prefixes of infinite words and their combinatorial statistics.

Words are plain ``str`` objects.  Binary words use ``"0"``/``"1"``; words of
relations between permutation entries use ``"<"``/``">"``.
"""

from __future__ import annotations

import math
import warnings
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InsufficientEvidence, LatticeHit, PreconditionError, RationalSlope, WindowTooWide
from .exact import ExactReal, exact
from .window import Window, iter_windows

BINARY = frozenset("01")
RELATIONS = frozenset("<>")
LT, GT = "<", ">"


def check_alphabet(w: str, alphabet: Iterable[str]) -> None:
    bad = set(w) - set(alphabet)
    if bad:
        raise ValueError(f"symbols {sorted(bad)} outside alphabet {sorted(alphabet)}")


# -- generators ------------------------------------------------------------


def lattice_hits(sigma, rho, n: int) -> list[int]:
    """Indices ``0 <= i <= n`` where ``sigma*i + rho`` is an integer."""
    sigma, rho = exact(sigma), exact(rho)
    hits = []
    x = rho
    for i in range(n + 1):
        if x.is_rational and x.r == 1:
            hits.append(i)
        x = x + sigma
    return hits


def mechanical_word(sigma, rho, n: int, variant: str = "lower") -> str:
    """Lower (floor) or upper (ceiling) mechanical word of slope sigma and intercept rho.

    ``w_i = floor(sigma*(i+1) + rho) - floor(sigma*i + rho)`` for the lower
    variant, ceilings for the upper one.  A :class:`LatticeHit` warning is
    issued when ``sigma*i + rho`` is an integer for some ``i <= n``; the two
    variants may then differ.
    """
    sigma, rho = exact(sigma), exact(rho)
    if not (0 < sigma < 1):
        raise PreconditionError(f"slope must lie in (0, 1), got {sigma}")
    if not (0 <= rho < 1):
        raise PreconditionError(f"intercept must lie in [0, 1), got {rho}")
    if variant not in ("lower", "upper"):
        raise ValueError(f"unknown variant {variant!r}")
    if sigma.is_rational:
        warnings.warn(f"rational slope {sigma}: the word is periodic", RationalSlope, stacklevel=2)
    rounding = math.floor if variant == "lower" else math.ceil
    out = []
    hits = []
    x = rho
    prev = rounding(x)
    for i in range(n):
        if x.is_rational and x.r == 1:
            hits.append(i)
        x = x + sigma
        cur = rounding(x)
        out.append("1" if cur - prev else "0")
        prev = cur
    if x.is_rational and x.r == 1:
        hits.append(n)
    if hits:
        warnings.warn(f"sigma*i + rho is an integer at i = {hits}", LatticeHit, stacklevel=2)
    return "".join(out)


@dataclass(frozen=True)
class CirclePartition:
    """Labelled partition of the circle [0, 1) by cut points.

    Each cut starts an interval that runs to the next cut (cyclically).  With
    ``convention="left"`` intervals are ``[a, b)``; with ``"right"`` they are
    ``(a, b]``.
    """

    cuts: tuple[ExactReal, ...]
    labels: tuple[str, ...]
    convention: str = "left"

    def __init__(self, intervals: Iterable[tuple[object, str]], convention: str = "left"):
        if convention not in ("left", "right"):
            raise ValueError(f"unknown convention {convention!r}")
        items = sorted(((exact(c).frac(), str(lab)) for c, lab in intervals), key=lambda t: t[0])
        if not items:
            raise ValueError("a partition needs at least one cut point")
        cuts = tuple(c for c, _ in items)
        if any(a == b for a, b in zip(cuts, cuts[1:])):
            raise ValueError("cut points must be distinct modulo 1")
        radicands = {c.d for c in cuts if c.d}
        if len(radicands) > 1:
            raise ValueError("cut points must share one quadratic field")
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "labels", tuple(lab for _, lab in items))
        object.__setattr__(self, "convention", convention)

    def label(self, x) -> str:
        x = exact(x).frac()
        if self.convention == "left":
            idx = bisect_right(self.cuts, x) - 1
        else:
            idx = bisect_left(self.cuts, x) - 1
        return self.labels[idx]

    @classmethod
    def read(cls, path) -> CirclePartition:
        """Read ``start<TAB>label`` lines; ``# convention: right`` switches sides."""
        convention = "left"
        intervals = []
        for raw in Path(path).read_text().splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line.lstrip("#").partition(":")
                if key.strip() == "convention":
                    convention = val.strip()
                continue
            start, _, label = raw.partition("\t")
            if not label:
                raise ValueError(f"expected start<TAB>label, got {raw!r}")
            intervals.append((ExactReal.parse(start), label.strip()))
        return cls(intervals, convention)

    def dumps(self) -> str:
        lines = [f"# convention: {self.convention}"]
        lines += [f"{c}\t{lab}" for c, lab in zip(self.cuts, self.labels)]
        return "\n".join(lines) + "\n"


def rotation_word(part: CirclePartition, xi, x0, n: int) -> str:
    """Code the orbit ``x0 + i*xi (mod 1)`` by the labels of ``part``."""
    xi, x = exact(xi), exact(x0)
    out = []
    for _ in range(n):
        out.append(part.label(x))
        x = (x + xi).frac()
    return "".join(out)


def sturmian_partition(sigma, variant: str = "lower") -> CirclePartition:
    """Two-interval partition whose rotation coding from ``sigma + rho`` is the mechanical word."""
    sigma = exact(sigma)
    return CirclePartition([(0, "1"), (sigma, "0")], "left" if variant == "lower" else "right")


# -- statistics ------------------------------------------------------------


def weight(u: str) -> int:
    """Number of 1s in a binary word."""
    check_alphabet(u, BINARY)
    return u.count("1")


def subword_complexity(w: str, n: int) -> int:
    if n > len(w):
        raise WindowTooWide(f"factor length {n} exceeds word length {len(w)}")
    if n == 0:
        return 1
    return len({w[i : i + n] for i in range(len(w) - n + 1)})


def word_pattern_complexity(w: str, T: Sequence[int]) -> int:
    """Number of distinct tuples ``(w[i+t] for t in T)`` fully inside ``w``."""
    T = Window(T)
    if T.span >= len(w):
        raise WindowTooWide(f"window {tuple(T)} does not fit in a word of length {len(w)}")
    return len({"".join(w[i + t] for t in T) for i in range(len(w) - T.span)})


def word_max_pattern_complexity_bounded(w: str, k: int, max_offset: int) -> tuple[int, Window]:
    """Largest window complexity over all k-windows with offsets <= max_offset.

    Returns the maximum and the lexicographically first window attaining it.
    """
    if max_offset >= len(w):
        raise WindowTooWide(f"offsets up to {max_offset} do not fit in length {len(w)}")
    best, witness = -1, None
    for T in iter_windows(k, max_offset):
        c = word_pattern_complexity(w, T)
        if c > best:
            best, witness = c, T
    return best, witness


def balance_violation(w: str) -> Optional[int]:
    """Smallest factor length whose weights are not within one of each other, or None."""
    check_alphabet(w, BINARY)
    if not w:
        return None
    ones = np.frombuffer(w.encode("ascii"), dtype=np.uint8) == ord("1")
    prefix = np.concatenate(([0], np.cumsum(ones, dtype=np.int64)))
    for n in range(1, len(w) + 1):
        weights = prefix[n:] - prefix[:-n]
        if weights.max() - weights.min() > 1:
            return n
    return None


def is_balanced(w: str) -> bool:
    return balance_violation(w) is None


def detect_word_period(w: str, max_preperiod: int, max_period: int) -> Optional[tuple[int, int]]:
    """Smallest period t <= max_period (then smallest preperiod) seen on the whole prefix.

    Returns ``(preperiod, period)`` or None.  The prefix must be at least
    ``max_preperiod + 2*max_period`` long so that every candidate is tested on
    at least one full repetition.
    """
    if max_preperiod + 2 * max_period > len(w):
        raise InsufficientEvidence(
            f"need length >= {max_preperiod + 2 * max_period}, have {len(w)}"
        )
    a = np.frombuffer(w.encode("utf-8"), dtype=np.uint8) if w.isascii() else np.array([ord(c) for c in w])
    for t in range(1, max_period + 1):
        bad = np.flatnonzero(a[:-t] != a[t:])
        pre = int(bad[-1]) + 1 if bad.size else 0
        if pre <= max_preperiod:
            return pre, t
    return None


@dataclass(frozen=True)
class WordClass:
    """Evidence-bounded classification of a finite prefix.

    ``kind`` is one of ``constant``, ``periodic``, ``sturmian_like``, ``other``.
    ``constant`` means period 1 after ``preperiod``.
    """

    kind: str
    period: Optional[int] = None
    preperiod: Optional[int] = None
    length: int = 0
    complexity_cap: int = 0

    def __str__(self) -> str:
        if self.kind == "periodic":
            return f"periodic({self.period}, {self.preperiod})"
        return self.kind


def classify_word(
    w: str,
    min_length: int = 64,
    max_preperiod: Optional[int] = None,
    max_period: Optional[int] = None,
    complexity_cap: Optional[int] = None,
) -> WordClass:
    """Classify a prefix as constant, periodic, Sturmian-like or other.

    Sturmian-like means: no period within the bounds, balanced, binary and
    exactly n + 1 factors of each length n <= complexity_cap.  Bounds default
    to a quarter of the length for periods and ``min(10, len // 32)`` for the
    complexity cap.
    """
    L = len(w)
    if L < min_length:
        raise InsufficientEvidence(f"need at least {min_length} symbols, have {L}")
    max_preperiod = L // 4 if max_preperiod is None else max_preperiod
    max_period = L // 4 if max_period is None else max_period
    cap = max(1, min(10, L // 32)) if complexity_cap is None else complexity_cap
    found = detect_word_period(w, max_preperiod, max_period)
    if found is not None:
        pre, t = found
        kind = "constant" if t == 1 else "periodic"
        return WordClass(kind, t, pre, L, cap)
    if len(set(w)) == 2:
        symbols = sorted(set(w))
        binary = w.translate(str.maketrans(symbols[0] + symbols[1], "01"))
        if is_balanced(binary) and all(subword_complexity(w, n) == n + 1 for n in range(1, cap + 1)):
            return WordClass("sturmian_like", None, None, L, cap)
    return WordClass("other", None, None, L, cap)
