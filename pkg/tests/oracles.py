"""Independent reference implementations used to cross-check the library.

Nothing here shares code paths with the package: numbers are evaluated with
mpmath interval arithmetic, words come from substitutions or brute force.
"""

from __future__ import annotations

from itertools import combinations, product

from mpmath import iv, mp, mpf, sqrt as mpsqrt
from mpmath import floor as mpfloor

PREC = 256


def interval(p: int, q: int, d: int, r: int, prec: int = PREC):
    iv.prec = prec
    return (iv.mpf(p) + iv.mpf(q) * iv.sqrt(iv.mpf(d))) / iv.mpf(r)


def iv_sign(p: int, q: int, d: int, r: int) -> int:
    """Sign of (p + q sqrt d) / r by interval refinement until 0 is excluded."""
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    prec = PREC
    while prec < 1 << 16:
        x = interval(p, q, d, r, prec)
        if x.a > 0:
            return 1
        if x.b < 0:
            return -1
        prec *= 2
    return 0  # only reachable for an exact zero, which needs a perfect square d


def hp(x, prec: int = PREC):
    """High-precision float value of a canonical ExactReal."""
    mp.prec = prec
    return (mpf(x.p) + mpf(x.q) * mpsqrt(x.d)) / x.r


def fibonacci_word(n: int) -> str:
    """Fixed point of 0 -> 01, 1 -> 0, truncated to n symbols."""
    w = "0"
    while len(w) < n:
        w = "".join("01" if c == "0" else "0" for c in w)
    return w[:n]


def hp_mechanical(sigma, rho, n: int) -> str:
    """Lower mechanical word evaluated in floating point at high precision."""
    s, r = hp(sigma), hp(rho)
    return "".join(str(int(mpfloor(s * (i + 1) + r) - mpfloor(s * i + r))) for i in range(n))


def brute_balanced(w: str) -> bool:
    for n in range(1, len(w) + 1):
        ws = {w[i : i + n].count("1") for i in range(len(w) - n + 1)}
        if max(ws) - min(ws) > 1:
            return False
    return True


def all_binary_words(max_len: int):
    for n in range(max_len + 1):
        for t in product("01", repeat=n):
            yield "".join(t)


def rank_tuple(vals) -> tuple:
    order = sorted(range(len(vals)), key=lambda i: vals[i])
    ranks = [0] * len(vals)
    for r, i in enumerate(order):
        ranks[i] = r
    return tuple(ranks)


def brute_pattern_complexity(vals, T) -> int:
    span = T[-1]
    return len({rank_tuple([vals[n + t] for t in T]) for n in range(len(vals) - span)})


def brute_max_pattern(vals, k: int, max_offset: int) -> int:
    return max(
        brute_pattern_complexity(vals, (0,) + rest) for rest in combinations(range(1, max_offset + 1), k - 1)
    )


def gamma_sign_scan(vals, max_i: int) -> tuple[set, set]:
    """S/M by direct sign scan: a row that never shows '<' is M, otherwise S."""
    S, M = set(), set()
    for i in range(1, max_i + 1):
        less = [vals[m] < vals[m + i] for m in range(len(vals) - i)]
        (S if any(less) else M).add(i)
    return S, M
