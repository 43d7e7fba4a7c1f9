"""Finite prefixes of infinite permutations.

A :class:`PermutationPrefix` holds exact representative values
``a_0, ..., a_{N-1}``.  At construction the values are sorted once with exact
comparisons; every later order question (relations, T-factors, periods) is
answered from the resulting integer ranks, which are order-isomorphic to the
values.
"""

from __future__ import annotations

import json
from functools import cmp_to_key
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DegenerateParameters, InsufficientEvidence, InvalidGaps, PreconditionError, WindowTooWide
from .exact import ExactReal, exact
from .window import Window, iter_windows
from .words import BINARY, GT, LT, RELATIONS, check_alphabet

PatternId = tuple  # rank vector: ranks[t] = number of window entries below entry t

# pairwise-comparison codes fit in int64 up to this window size
_CODE_MAX_K = 11


def _order_ranks(values: Sequence[ExactReal]) -> np.ndarray:
    order = sorted(range(len(values)), key=cmp_to_key(lambda i, j: values[i].compare(values[j])))
    for a, b in zip(order, order[1:]):
        if values[a] == values[b]:
            raise DegenerateParameters(f"entries {min(a, b)} and {max(a, b)} coincide ({values[a]})")
    ranks = np.empty(len(values), dtype=np.int64)
    ranks[order] = np.arange(len(values))
    return ranks


class PermutationPrefix:
    """Exact values ``a_0 .. a_{N-1}`` (pairwise distinct) plus provenance metadata."""

    __slots__ = ("values", "origin", "ranks", "_less_cache")

    def __init__(self, values: Iterable, origin: Optional[dict] = None, *, _ranks: Optional[np.ndarray] = None):
        self.values: tuple[ExactReal, ...] = tuple(exact(v) for v in values)
        self.origin: dict = dict(origin or {})
        self.ranks: np.ndarray = _order_ranks(self.values) if _ranks is None else _ranks
        self.ranks.setflags(write=False)
        self._less_cache: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"PermutationPrefix(N={len(self)}, origin={self.origin})"

    def _derived(self, positions: slice, origin: dict) -> PermutationPrefix:
        sub = self.ranks[positions]
        ranks = np.empty(len(sub), dtype=np.int64)
        ranks[np.argsort(sub)] = np.arange(len(sub))
        return PermutationPrefix(self.values[positions], origin, _ranks=ranks)

    @classmethod
    def from_ranks(cls, ranks: Iterable[int], origin: Optional[dict] = None) -> PermutationPrefix:
        return cls([int(r) for r in ranks], origin)

    def __len__(self) -> int:
        return len(self.values)

    def _less(self, delta: int) -> np.ndarray:
        # _less(delta)[n] is True iff a_n < a_{n+delta}
        cache = self._less_cache
        if delta not in cache:
            cache[delta] = self.ranks[:-delta] < self.ranks[delta:]
        return cache[delta]

    def order_isomorphic(self, other: PermutationPrefix) -> bool:
        return len(self) == len(other) and bool(np.array_equal(self.ranks, other.ranks))

    # -- serialization ----------------------------------------------------

    def dumps(self) -> str:
        head = "# origin: " + json.dumps(self.origin, sort_keys=True)
        return "\n".join([head, *map(str, self.values)]) + "\n"

    @classmethod
    def loads(cls, text: str) -> PermutationPrefix:
        origin: dict = {}
        values = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, rest = line.lstrip("#").partition(":")
                if key.strip() == "origin":
                    origin = json.loads(rest)
                continue
            values.append(ExactReal.parse(line))
        return cls(values, origin)

    @classmethod
    def read(cls, path) -> PermutationPrefix:
        return cls.loads(Path(path).read_text())


# -- constructions ---------------------------------------------------------


def _as_binary(w: str) -> str:
    if set(w) <= RELATIONS:
        return w.translate(str.maketrans("<>", "01"))
    check_alphabet(w, BINARY)
    return w


def build_from_word(w: str, x, y, a0=0, origin: Optional[dict] = None) -> PermutationPrefix:
    """Walk ``a_{i+1} = a_i + x`` on ``0`` and ``a_i - y`` on ``1``; length ``len(w) + 1``.

    Relation words are accepted with ``<`` read as 0 and ``>`` as 1.
    """
    w = _as_binary(w)
    x, y, a = exact(x), exact(y), exact(a0)
    if x <= 0 or y <= 0:
        raise PreconditionError("x and y must be positive")
    vals = [a]
    for c in w:
        a = a + x if c == "0" else a - y
        vals.append(a)
    meta = {"family": "sturmian", "x": str(x), "y": str(y), "a0": str(exact(a0))}
    meta.update(origin or {})
    return PermutationPrefix(vals, meta)


def fractional_orbit(sigma, rho, n: int) -> PermutationPrefix:
    """Values ``frac(sigma*i + rho)`` for ``i < n``."""
    sigma, rho = exact(sigma), exact(rho)
    vals = []
    x = rho
    for _ in range(n):
        vals.append(x.frac())
        x = x + sigma
    return PermutationPrefix(vals, {"family": "fractional-orbit", "sigma": str(sigma), "rho": str(rho)})


def periodic_example(nparam: int, n: int) -> PermutationPrefix:
    """The 2-periodic representative ``-1, 2m-2, 1, 2m, 3, 2m+2, ...`` with m = nparam."""
    if nparam < 2:
        raise PreconditionError("nparam must be at least 2")
    vals = [2 * (i // 2) - 1 if i % 2 == 0 else 2 * nparam - 2 + 2 * (i // 2) for i in range(n)]
    return PermutationPrefix(vals, {"family": "periodic-example", "nparam": nparam})


def pow2_gaps(k: int) -> int:
    return 2**k + k


def low_complexity_example(
    gaps: Union[Callable[[int], int], Sequence[int]] = pow2_gaps, n: int = 0
) -> PermutationPrefix:
    """Representative ``a_{2k} = k``, ``a_{2k+1} = n_k + 1/2`` of the slow-complexity example.

    The produced prefix is checked against the defining inequalities
    ``a_{2m} < a_{2m+2} < a_{2m+1} < a_{2m+3}`` and
    ``a_{2 n_k} < a_{2k+1} < a_{2 n_k + 2}``; :class:`InvalidGaps` on failure.
    """
    half = (n + 1) // 2
    if callable(gaps):
        g = [int(gaps(k)) for k in range(half)]
    else:
        if len(gaps) < half:
            raise InvalidGaps(f"need {half} gap values, got {len(gaps)}")
        g = [int(v) for v in gaps[:half]]
    if any(b <= a for a, b in zip(g, g[1:])):
        raise InvalidGaps("gaps must increase strictly")
    half_ = ExactReal(1, 0, 0, 2)
    vals = [exact(i // 2) if i % 2 == 0 else g[i // 2] + half_ for i in range(n)]

    def ok(i, j):
        return i >= n or j >= n or vals[i] < vals[j]

    for m in range(half):
        if not (ok(2 * m, 2 * m + 2) and ok(2 * m + 2, 2 * m + 1) and ok(2 * m + 1, 2 * m + 3)):
            raise InvalidGaps(f"chain inequalities fail at m = {m}")
    for k, nk in enumerate(g):
        if not (ok(2 * nk, 2 * k + 1) and ok(2 * k + 1, 2 * nk + 2)):
            raise InvalidGaps(f"gap inequalities fail at k = {k} (n_k = {nk})")
    origin = {"family": "low-complexity", "gaps": "2^k+k" if gaps is pow2_gaps else ",".join(map(str, g))}
    return PermutationPrefix(vals, origin)


# -- relations -------------------------------------------------------------


def _check_index(prefix: PermutationPrefix, *idx: int) -> None:
    for i in idx:
        if not 0 <= i < len(prefix):
            raise IndexError(f"index {i} outside prefix of length {len(prefix)}")


def gamma(prefix: PermutationPrefix, i: int, j: int) -> str:
    """``<`` if a_i < a_j else ``>``."""
    _check_index(prefix, i, j)
    if i == j:
        raise ValueError("relation needs two distinct positions")
    return LT if prefix.ranks[i] < prefix.ranks[j] else GT


def _relation_word(less: np.ndarray) -> str:
    return np.where(less, ord(LT), ord(GT)).astype(np.uint8).tobytes().decode("ascii")


def gamma_row(prefix: PermutationPrefix, i: int) -> str:
    """The word ``gamma_{n, n+i}`` for n = 0, 1, ...  fully inside the prefix."""
    if not 0 < i < len(prefix):
        raise IndexError(f"difference {i} outside prefix of length {len(prefix)}")
    return _relation_word(prefix._less(i))


def gamma_ap(prefix: PermutationPrefix, i: int, j: int) -> str:
    """Relations between successive entries of the progression j, j+i, j+2i, ..."""
    if not 0 <= j < i:
        raise ValueError(f"residue {j} must lie in [0, {i})")
    if j + i >= len(prefix):
        raise IndexError(f"progression {j} mod {i} has fewer than two entries")
    return _relation_word(prefix._less(i)[j::i])


# -- T-factors and complexity ---------------------------------------------


def rank_vector(vals: Sequence) -> PatternId:
    order = sorted(range(len(vals)), key=lambda t: vals[t])
    ranks = [0] * len(vals)
    for r, t in enumerate(order):
        ranks[t] = r
    return tuple(ranks)


def t_factor(prefix: PermutationPrefix, T: Sequence[int], n: int) -> PatternId:
    T = Window(T)
    _check_index(prefix, n, n + T.span)
    return rank_vector([int(prefix.ranks[n + t]) for t in T])


def _pattern_codes(prefix: PermutationPrefix, T: Window) -> np.ndarray:
    count = len(prefix) - T.span
    if len(T) > _CODE_MAX_K:
        rows = np.stack([prefix.ranks[t : t + count] for t in T], axis=1)
        perm = np.argsort(np.argsort(rows, axis=1), axis=1)
        _, inverse = np.unique(perm, axis=0, return_inverse=True)
        return inverse.ravel()
    codes = np.zeros(count, dtype=np.int64)
    bit = 0
    for a in range(len(T)):
        for b in range(a + 1, len(T)):
            less = prefix._less(T[b] - T[a])[T[a] : T[a] + count]
            codes |= less.astype(np.int64) << bit
            bit += 1
    return codes


def _check_window(prefix: PermutationPrefix, T: Window) -> None:
    if T.span >= len(prefix):
        raise WindowTooWide(f"window {tuple(T)} does not fit in a prefix of length {len(prefix)}")


def t_factor_positions(prefix: PermutationPrefix, T: Sequence[int]) -> dict[PatternId, int]:
    """Distinct T-factors mapped to their first occurrence."""
    T = Window(T)
    _check_window(prefix, T)
    codes = _pattern_codes(prefix, T)
    _, first = np.unique(codes, return_index=True)
    return {t_factor(prefix, T, int(n)): int(n) for n in sorted(first)}


def pattern_complexity(prefix: PermutationPrefix, T: Sequence[int]) -> int:
    """Number of distinct T-factors ``a_{T+n}`` with ``n + max(T) < N``."""
    T = Window(T)
    _check_window(prefix, T)
    if len(T) == 1:
        return 1
    return int(np.unique(_pattern_codes(prefix, T)).size)


def factor_complexity(prefix: PermutationPrefix, n: int) -> int:
    if n < 1:
        raise ValueError("factor length must be positive")
    return pattern_complexity(prefix, Window.contiguous(n))


def max_pattern_complexity_bounded(
    prefix: PermutationPrefix, k: int, max_offset: int
) -> tuple[int, Window]:
    """Maximum T-complexity over k-windows with offsets <= max_offset, plus the first witness.

    This is a lower bound for the maximal pattern complexity at k.
    """
    if max_offset >= len(prefix):
        raise WindowTooWide(f"offsets up to {max_offset} do not fit in a prefix of length {len(prefix)}")
    best, witness = -1, None
    for T in iter_windows(k, max_offset):
        c = pattern_complexity(prefix, T)
        if c > best:
            best, witness = c, T
    return best, witness


# -- periodicity -----------------------------------------------------------


def _isomorphic(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(np.argsort(a, kind="stable"), np.argsort(b, kind="stable")))


def is_periodic_from(prefix: PermutationPrefix, pre: int, t: int) -> bool:
    """True iff ``gamma_{ij} == gamma_{i+t, j+t}`` for all ``pre <= i < j < N - t``."""
    N = len(prefix)
    if pre + t >= N:
        return True
    r = prefix.ranks
    return _isomorphic(r[pre : N - t], r[pre + t : N])


def detect_permutation_period(
    prefix: PermutationPrefix, max_preperiod: int, max_period: int
) -> Optional[tuple[int, int]]:
    """Smallest period t <= max_period, with its smallest preperiod <= max_preperiod.

    Returns ``(preperiod, period)`` or None.  Requires
    ``max_preperiod + 3*max_period <= N``.
    """
    N = len(prefix)
    if max_preperiod + 3 * max_period > N:
        raise InsufficientEvidence(f"need N >= {max_preperiod + 3 * max_period}, have {N}")
    for t in range(1, max_period + 1):
        if not is_periodic_from(prefix, max_preperiod, t):
            continue
        # periodicity from pre implies it from every later start
        lo, hi = 0, max_preperiod
        while lo < hi:
            mid = (lo + hi) // 2
            if is_periodic_from(prefix, mid, t):
                hi = mid
            else:
                lo = mid + 1
        return lo, t
    return None


def restrict_arithmetic(prefix: PermutationPrefix, i: int, j: int) -> PermutationPrefix:
    """Subpermutation on positions j, j+i, j+2i, ..., re-indexed from 0."""
    if not 0 <= j < i:
        raise ValueError(f"residue {j} must lie in [0, {i})")
    _check_index(prefix, j)
    return prefix._derived(slice(j, None, i), {"restrict": [i, j], "of": prefix.origin})


def shift(prefix: PermutationPrefix, n: int) -> PermutationPrefix:
    _check_index(prefix, n)
    return prefix._derived(slice(n, None), {"shift": n, "of": prefix.origin})
