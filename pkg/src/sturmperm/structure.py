"""Structural analysis of permutation prefixes.

Classification of arithmetic relation subsequences, the S/M split of
differences with its threshold, closure conditions, reconstruction of a
Sturmian permutation from its first relation row, adjustedness of
arithmetic subpermutations and the four-window witness search.

Every verdict here is a statement about the analysed prefix only.  Slopes
follow one convention throughout: ``sigma`` is the frequency of ``<`` in the
first relation row.  A permutation built from a binary word of slope
``s`` (density of 1s) therefore has ``sigma = 1 - s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    EmptyInterval,
    Inconclusive,
    InsufficientEvidence,
    PreconditionError,
    ThresholdViolation,
)
from .exact import ExactReal, exact
from .perms import (
    PermutationPrefix,
    build_from_word,
    detect_permutation_period,
    factor_complexity,
    fractional_orbit,
    gamma_ap,
    gamma_row,
    is_periodic_from,
    max_pattern_complexity_bounded,
    pattern_complexity,
    t_factor,
)
from .window import Window
from .words import LT, WordClass, classify_word, lattice_hits

ZERO = ExactReal(0)


# -- gamma classification --------------------------------------------------


@dataclass(frozen=True)
class ResidueVerdict:
    j: int
    verdict: str  # sturmian_like | monotone_inc | monotone_dec | periodic | inconclusive
    word_class: WordClass
    monotone_from: Optional[int] = None  # first index of the monotone tail


@dataclass(frozen=True)
class GammaClassification:
    i: int
    residues: tuple[ResidueVerdict, ...]
    aggregate: str  # sturmian | monotone_inc | monotone_dec | periodic | mixed | inconclusive
    violations: tuple[str, ...] = ()

    @property
    def monotone(self) -> bool:
        return self.aggregate in ("monotone_inc", "monotone_dec")


def _residue_verdict(j: int, word: str, min_evidence: int) -> ResidueVerdict:
    # Sturmian rows with large partial quotients repeat long blocks, so only
    # periods short enough for the complexity test to see are asserted.
    cap = max(1, min(10, len(word) // 32))
    wc = classify_word(word, min_length=min_evidence, max_period=cap, complexity_cap=cap)
    if wc.kind == "constant":
        kind = "monotone_inc" if word[-1] == LT else "monotone_dec"
        return ResidueVerdict(j, kind, wc, wc.preperiod)
    if wc.kind == "periodic":
        return ResidueVerdict(j, "periodic", wc)
    if wc.kind == "sturmian_like":
        return ResidueVerdict(j, "sturmian_like", wc)
    return ResidueVerdict(j, "inconclusive", wc)


def classify_gamma(prefix: PermutationPrefix, i: int, min_evidence: int = 64) -> GammaClassification:
    """Classify every relation subsequence ``gamma_i^j``, j < i, and combine the verdicts.

    Mixtures that cannot occur in a permutation of complexity n (a Sturmian
    residue next to a non-Sturmian one, or increasing next to decreasing)
    are reported in ``violations``.
    """
    if i < 1:
        raise ValueError("difference must be positive")
    shortest = len(prefix) // i - 1
    if shortest < min_evidence:
        raise InsufficientEvidence(
            f"difference {i}: residue words have {shortest} symbols, need {min_evidence}"
        )
    residues = tuple(_residue_verdict(j, gamma_ap(prefix, i, j), min_evidence) for j in range(i))
    kinds = {r.verdict for r in residues}
    violations = []
    if "sturmian_like" in kinds and len(kinds) > 1:
        violations.append("Sturmian residue mixed with non-Sturmian residues")
    if {"monotone_inc", "monotone_dec"} <= kinds:
        violations.append("increasing and decreasing residues mixed")
    if len(kinds) == 1:
        aggregate = {"sturmian_like": "sturmian"}.get(next(iter(kinds)), next(iter(kinds)))
    elif "inconclusive" in kinds:
        aggregate = "inconclusive"
    else:
        aggregate = "mixed"
    return GammaClassification(i, residues, aggregate, tuple(violations))


# -- S/M partition ---------------------------------------------------------


def threshold_ratio(sigma, i: int, direction: str = "dec") -> ExactReal:
    """``(1 - frac(i*sigma)) / i``; for increasing monotone strings ``frac(i*sigma) / i``."""
    f = (exact(sigma) * i).frac()
    return ((1 - f) if direction == "dec" else f) / i


@dataclass(frozen=True)
class SMPartition:
    S: frozenset
    M: frozenset
    max_i: int
    d_interval: tuple[ExactReal, ExactReal]  # open interval of admissible thresholds
    sigma: ExactReal
    direction: str = "dec"  # direction of the monotone strings
    ratios: dict = field(default_factory=dict, compare=False)
    classes: dict = field(default_factory=dict, compare=False, repr=False)


def sm_partition(
    prefix: PermutationPrefix, sigma, max_i: int, min_evidence: int = 64
) -> SMPartition:
    """Split the differences ``1..max_i`` into S (Sturmian residues) and M (monotone).

    The admissible threshold interval is ``(max ratio over M, min ratio over S)``
    with lower end 0 when M is empty.  Raises :class:`Inconclusive` when a
    difference has no clean verdict and :class:`ThresholdViolation` when the
    strict ordering of ratios fails.
    """
    sigma = exact(sigma)
    classes = {i: classify_gamma(prefix, i, min_evidence) for i in range(1, max_i + 1)}
    if classes[1].aggregate != "sturmian":
        raise Inconclusive(f"first relation row is {classes[1].residues[0].word_class}, not Sturmian-like")
    S, M, dirs = set(), set(), set()
    for i, c in classes.items():
        if c.aggregate == "sturmian":
            S.add(i)
        elif c.monotone:
            M.add(i)
            dirs.add(c.aggregate[-3:])
        else:
            detail = "; ".join(c.violations) or c.aggregate
            raise Inconclusive(f"difference {i}: {detail}")
    if len(dirs) > 1:
        raise ThresholdViolation("monotone relation rows are not all of one direction")
    direction = dirs.pop() if dirs else "dec"
    ratios = {i: threshold_ratio(sigma, i, direction) for i in classes}
    lo = max((ratios[m] for m in M), default=ZERO)
    hi = min(ratios[s] for s in S)
    if M and lo >= hi:
        s_bad = min(S, key=lambda s: ratios[s])
        m_bad = max(M, key=lambda m: ratios[m])
        raise ThresholdViolation(f"ratio of {m_bad} in M is not below ratio of {s_bad} in S")
    return SMPartition(frozenset(S), frozenset(M), max_i, (lo, hi), sigma, direction, ratios, classes)


def claim7_pairs(part: SMPartition) -> list[tuple[int, int]]:
    """Pairs (s, m) violating ``ratio(m) < ratio(s)``; empty for a valid partition."""
    return [(s, m) for s in sorted(part.S) for m in sorted(part.M) if not part.ratios[m] < part.ratios[s]]


@dataclass
class ClosureReport:
    checked: int
    violations: list = field(default_factory=list)  # (rule, i, j)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_closure(part: SMPartition, sigma=None) -> ClosureReport:
    """Check the closure implications on all pairs with ``i + j <= max_i``.

    ``m_sum``: i, j in M implies i+j in M.  ``s_carry``: i, j in S and
    frac(i s) + frac(j s) > 1 implies i+j in S.  ``s_split``: i+j in S and
    frac(i s) + frac(j s) < 1 implies i in S.
    """
    sigma = part.sigma if sigma is None else exact(sigma)
    fr = {i: (sigma * i).frac() for i in range(1, part.max_i + 1)}
    S, M = part.S, part.M
    report = ClosureReport(0)
    for i in range(1, part.max_i):
        for j in range(1, part.max_i - i + 1):
            report.checked += 1
            s = fr[i] + fr[j]
            if i in M and j in M and i + j not in M:
                report.violations.append(("m_sum", i, j))
            if i in S and j in S and s > 1 and i + j not in S:
                report.violations.append(("s_carry", i, j))
            if i + j in S and s < 1 and i not in S:
                report.violations.append(("s_split", i, j))
    return report


@dataclass
class QIdentityReport:
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_q_identity(sigma, max_i: int) -> QIdentityReport:
    """``floor((i+j)s) == floor(i s) + floor(j s) + 1`` iff ``frac(i s) + frac(j s) > 1``."""
    sigma = exact(sigma)
    mult = [sigma * i for i in range(2 * max_i + 1)]
    q = [math.floor(v) for v in mult]
    fr = [v - qi for v, qi in zip(mult, q)]
    report = QIdentityReport(0)
    for i in range(1, max_i + 1):
        for j in range(1, max_i + 1):
            report.checked += 1
            lhs = q[i + j] == q[i] + q[j] + 1
            rhs = (fr[i] + fr[j]) > 1
            if lhs != rhs:
                report.violations.append((i, j))
    return report


@dataclass
class Claim6Report:
    i: int
    checked: int
    mismatches: list = field(default_factory=list)  # m with the wrong relation
    weight_violations: list = field(default_factory=list)  # m with weight outside {q, q+1} or wrong sign

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.weight_violations


def verify_claim6(
    prefix: PermutationPrefix, sigma, rho, i: int, partition: Optional[SMPartition] = None
) -> Claim6Report:
    """For a difference i in S compare each relation ``gamma_{m, m+i}`` with the rotation rule.

    ``<`` must hold exactly when ``frac(sigma(m+i)+rho) < frac(sigma m+rho)``,
    and exactly when the first row has ``floor(i sigma) + 1`` symbols ``<``
    on ``[m, m+i)``.
    """
    sigma, rho = exact(sigma), exact(rho)
    if partition is not None:
        if i not in partition.S:
            raise PreconditionError(f"difference {i} is not in S")
    elif classify_gamma(prefix, i).aggregate != "sturmian":
        raise PreconditionError(f"difference {i} is not classified Sturmian")
    N = len(prefix)
    orbit = fractional_orbit(sigma, rho, N).ranks
    expect_less = orbit[i:] < orbit[:-i]
    actual_less = prefix._less(i)
    first_row = prefix._less(1).astype(np.int64)
    cum = np.concatenate(([0], np.cumsum(first_row)))
    weights = cum[i:] - cum[:-i]
    qi = math.floor(sigma * i)
    bad_weight = (weights != qi) & (weights != qi + 1)
    wrong_sign = actual_less != (weights == qi + 1)
    return Claim6Report(
        i,
        N - i,
        np.flatnonzero(expect_less != actual_less).tolist(),
        np.flatnonzero(bad_weight | wrong_sign).tolist(),
    )


# -- reconstruction --------------------------------------------------------


@dataclass(frozen=True)
class ThresholdEvidence:
    """Threshold bounds implied by every relation in a prefix."""

    lower: ExactReal
    upper: ExactReal
    s_witnesses: tuple[int, ...]
    m_witnesses: tuple[int, ...]


def threshold_evidence(prefix: PermutationPrefix, sigma) -> ThresholdEvidence:
    """Bounds on the threshold from all relations ``gamma_{m, m+i}``, ``i < N``.

    Where the first row has ``floor(i sigma) + 1`` symbols ``<`` on
    ``[m, m+i)``, a relation ``<`` forces the threshold below ``ratio(i)`` and
    ``>`` forces it above.  Windows with ``floor(i sigma)`` symbols ``<`` must
    show ``>``.
    """
    sigma = exact(sigma)
    N = len(prefix)
    cum = np.concatenate(([0], np.cumsum(prefix._less(1).astype(np.int64))))
    s_wit, m_wit = [], []
    mult = sigma
    for i in range(1, N):
        qi = math.floor(mult)
        mult = mult + sigma
        weights = cum[i:] - cum[:-i]
        less = prefix._less(i)
        heavy = weights == qi + 1
        if np.any((weights != qi) & ~heavy):
            raise ThresholdViolation(f"first-row weights over length {i} are not floor(i*sigma) or +1")
        if np.any(less & ~heavy):
            raise ThresholdViolation(f"difference {i}: '<' on a light window (monotone rows not decreasing)")
        up = bool(np.any(heavy & less))
        down = bool(np.any(heavy & ~less))
        if up and down:
            raise ThresholdViolation(f"difference {i} sends heavy windows both ways")
        if up:
            s_wit.append(i)
        elif down:
            m_wit.append(i)
    lower = max((threshold_ratio(sigma, i) for i in m_wit), default=ZERO)
    upper = min((threshold_ratio(sigma, i) for i in s_wit), default=1 - sigma)
    return ThresholdEvidence(lower, upper, tuple(s_wit), tuple(m_wit))


@dataclass
class ReconstructionReport:
    isomorphic: bool
    d_interval: tuple[ExactReal, ExactReal]
    d_star: ExactReal
    partition: SMPartition
    evidence: ThresholdEvidence
    first_mismatch: Optional[int] = None
    rebuilt: Optional[PermutationPrefix] = field(default=None, repr=False)


def reconstruct(
    prefix: PermutationPrefix, sigma, max_i: Optional[int] = None, min_evidence: int = 64
) -> ReconstructionReport:
    """Rebuild ``alpha(gamma_1, 1 - sigma - d, sigma + d)`` and compare order types.

    ``d`` is the midpoint of the admissible interval: the classified S/M
    interval for differences up to ``max_i`` intersected with the bounds
    forced by every relation of the prefix.
    """
    sigma = exact(sigma)
    N = len(prefix)
    if max_i is None:
        max_i = N // (min_evidence + 1)
    if max_i < 1:
        raise InsufficientEvidence(f"prefix of length {N} is too short to classify any difference")
    part = sm_partition(prefix, sigma, max_i, min_evidence)
    if part.direction != "dec":
        raise PreconditionError("reconstruction expects decreasing monotone rows")
    ev = threshold_evidence(prefix, sigma)
    lo = max(part.d_interval[0], ev.lower)
    hi = min(part.d_interval[1], ev.upper)
    if not lo < hi:
        raise EmptyInterval(f"admissible thresholds ({lo}, {hi}) are empty")
    d_star = (lo + hi) / 2
    first = gamma_row(prefix, 1)
    rebuilt = build_from_word(first, 1 - sigma - d_star, sigma + d_star, 0, {"rebuilt_d": str(d_star)})
    mismatch = np.flatnonzero(rebuilt.ranks != prefix.ranks)
    iso = prefix.order_isomorphic(rebuilt)
    return ReconstructionReport(
        iso, (lo, hi), d_star, part, ev, None if iso else int(mismatch[0]), rebuilt
    )


def verify_reconstruction(
    w: str, x, y, n: Optional[int] = None, sigma=None, max_i: Optional[int] = None
) -> ReconstructionReport:
    """Build ``alpha(w, x, y)`` of length n and reconstruct it from its first relation row.

    ``sigma`` is the exact frequency of ``<``, i.e. the density of 0 in ``w``.
    """
    if sigma is None:
        raise PreconditionError("the exact '<' frequency sigma must be supplied")
    n = len(w) + 1 if n is None else n
    if n > len(w) + 1:
        raise PreconditionError(f"word of length {len(w)} gives at most {len(w) + 1} entries")
    alpha = build_from_word(w[: n - 1], x, y, 0)
    return reconstruct(alpha, sigma, max_i)


# -- adjustedness ----------------------------------------------------------


@dataclass(frozen=True)
class AdjustReport:
    i: int
    j: int
    k: int
    adjusted: bool
    period: Optional[int] = None  # smallest multiple of i that works


def _periodic_on(prefix: PermutationPrefix, positions: np.ndarray, t: int) -> bool:
    N = len(prefix)
    src = positions[positions + t < N]
    if src.size < 2:
        return True
    r = prefix.ranks
    return bool(np.array_equal(np.argsort(r[src]), np.argsort(r[src + t])))


def _residue_positions(N: int, i: int, residues) -> np.ndarray:
    return np.sort(np.concatenate([np.arange(j, N, i) for j in residues]))


def are_adjusted(prefix: PermutationPrefix, i: int, j: int, k: int, max_period: int) -> AdjustReport:
    """Is the restriction to the union of residues j and k mod i periodic (from the start)?

    Periods are searched among multiples of i up to ``max_period`` and tested
    on the original indices.
    """
    if not (0 <= j < i and 0 <= k < i) or j == k:
        raise PreconditionError(f"need two distinct residues below {i}, got {j}, {k}")
    if max_period < i:
        raise PreconditionError(f"max_period {max_period} is below the difference {i}")
    if 3 * max_period > len(prefix):
        raise InsufficientEvidence(f"need N >= {3 * max_period}, have {len(prefix)}")
    pos = _residue_positions(len(prefix), i, (j, k))
    for t in range(i, max_period + 1, i):
        if _periodic_on(prefix, pos, t):
            return AdjustReport(i, j, k, True, t)
    return AdjustReport(i, j, k, False)


@dataclass
class Lemma2Report:
    i: int
    pairs: list
    all_adjusted: bool
    lcm_period: Optional[int]
    periodic: bool
    period: Optional[int]

    @property
    def agree(self) -> bool:
        return self.all_adjusted == self.periodic


def lemma2_check(prefix: PermutationPrefix, i: int, max_period: int) -> Lemma2Report:
    """Compare 'all residue pairs adjusted' with 'the whole prefix is periodic'.

    When every pair is adjusted with periods ``i * t_jk``, periodicity is
    tested at ``i * lcm(t_jk)``; otherwise any period up to ``max_period``
    is searched.
    """
    N = len(prefix)
    if 3 * max_period > N:
        raise InsufficientEvidence(f"need N >= {3 * max_period}, have {N}")
    if i == 1:
        pos = np.arange(N)
        t1 = next((t for t in range(1, max_period + 1) if _periodic_on(prefix, pos, t)), None)
        pairs = [AdjustReport(1, 0, 0, t1 is not None, t1)]
    else:
        pairs = [are_adjusted(prefix, i, j, k, max_period) for j in range(i) for k in range(j + 1, i)]
    all_adj = all(p.adjusted for p in pairs)
    lcm_period = None
    if all_adj:
        lcm_period = i * math.lcm(*(p.period // i for p in pairs))
        periodic = is_periodic_from(prefix, 0, lcm_period)
        period = lcm_period if periodic else None
    else:
        period = next((t for t in range(1, max_period + 1) if is_periodic_from(prefix, 0, t)), None)
        periodic = period is not None
    return Lemma2Report(i, pairs, all_adj, lcm_period, periodic, period)


# -- four-window witness ---------------------------------------------------


@dataclass(frozen=True)
class Lemma4Witness:
    window: Window
    positions: tuple[int, ...]
    patterns: tuple[tuple, ...]
    complexity: int
    roles: str  # "direct" (chi = residue 0) or "swapped" (chi = residue r)
    l: int
    m: int
    ks: tuple[int, ...]


def _first_below(Y: np.ndarray, ys: int, X: np.ndarray, xs: int) -> Optional[int]:
    # smallest k >= 0 with Y[ys + k] < X[xs + k]
    n = min(len(Y) - ys, len(X) - xs)
    if n <= 0:
        return None
    hits = np.flatnonzero(Y[ys : ys + n] < X[xs : xs + n])
    return int(hits[0]) if hits.size else None


def _lemma4_search(X, Y, budget):
    tries = 0
    for l in range(1, len(Y)):
        if X[1] > Y[l]:
            continue
        tries += 1
        if tries > budget:
            return None
        k1 = _first_below(Y, l, X, 1)
        k2 = _first_below(Y, l, X, 0)
        if k1 is None or k2 is None:
            continue
        m = None
        for cand in range(l + 1, len(Y) - max(k1, k2)):
            tries += 1
            if tries > budget:
                return None
            if X[1 + k1] < Y[cand + k1] and X[1 + k2] < Y[cand + k2]:
                m = cand
                break
        if m is None:
            continue
        k3 = _first_below(Y, m, X, 1)
        k4 = _first_below(Y, m, X, 0)
        if k3 is None or k4 is None:
            continue
        yield l, m, (0, k1, k2, k3, k4)


def find_lemma4_window(
    prefix: PermutationPrefix, t: int, r: int, max_search: int = 10**4
) -> Optional[Lemma4Witness]:
    """Search for a 4-window with at least five patterns from two increasing progressions.

    ``chi`` and ``psi`` are the subsequences at positions ``it`` and ``it + r``.
    The search follows the construction: pick ``l`` with ``chi_1 < psi_l``,
    ``k1`` minimal with ``psi_{l+k1} < chi_{1+k1}``, ``k2`` with
    ``psi_{l+k2} < chi_{k2}``, then ``m > l`` and ``k3, k4`` likewise, giving
    the window ``(0, t, lt + r, mt + r)`` at positions ``k t``.  If that
    orientation yields nothing the roles of the two progressions are swapped,
    giving ``(0, t, lt - r, mt - r)`` at positions ``k t + r``.
    """
    if not 0 < r < t:
        raise PreconditionError(f"need 0 < r < t, got r={r}, t={t}")
    ranks = prefix.ranks
    A, B = ranks[0::t], ranks[r::t]
    if len(A) < 3 or len(B) < 3:
        raise InsufficientEvidence("progressions too short")
    if np.any(np.diff(A) < 0) or np.any(np.diff(B) < 0):
        raise PreconditionError("both progressions must be increasing on the prefix")
    N = len(prefix)
    for roles, X, Y in (("direct", A, B), ("swapped", B, A)):
        for l, m, ks in _lemma4_search(X, Y, max_search):
            if roles == "direct":
                offs, base = (0, t, l * t + r, m * t + r), [k * t for k in ks]
            else:
                if l * t - r <= t:
                    continue
                offs, base = (0, t, l * t - r, m * t - r), [k * t + r for k in ks]
            T = Window(offs)
            if any(b + T.span >= N for b in base):
                continue
            pats = tuple(t_factor(prefix, T, b) for b in base)
            if len(set(pats)) < 5:
                continue
            return Lemma4Witness(T, tuple(base), pats, pattern_complexity(prefix, T), roles, l, m, ks)
    return None


# -- orchestration ---------------------------------------------------------


@dataclass
class SuiteConfig:
    k_max: int = 4
    max_offset: int = 20
    max_preperiod: Optional[int] = None
    max_period: Optional[int] = None
    max_i: Optional[int] = None
    min_evidence: int = 64
    lemma4_budget: int = 10**4

    def resolved(self, N: int) -> SuiteConfig:
        return SuiteConfig(
            k_max=self.k_max,
            max_offset=min(self.max_offset, N - 2),
            max_preperiod=min(50, N // 4) if self.max_preperiod is None else self.max_preperiod,
            max_period=min(80, N // 6) if self.max_period is None else self.max_period,
            max_i=min(20, N // (self.min_evidence + 1)) if self.max_i is None else self.max_i,
            min_evidence=self.min_evidence,
            lemma4_budget=self.lemma4_budget,
        )


def _verdict(theorem: str, status: str, **detail) -> dict:
    return {"id": theorem, "verdict": status, **detail}


def theorem_suite(
    prefix: PermutationPrefix, config: Optional[SuiteConfig] = None, sigma=None, rho=None
) -> dict:
    """Run periodicity, complexity, classification and reconstruction checks.

    Returns a JSON-ready report; ``report["ok"]`` is False when any check fails.
    ``sigma`` (the exact frequency of ``<``) enables the S/M and
    reconstruction checks, ``rho`` additionally the rotation-rule check.
    """
    N = len(prefix)
    cfg = (config or SuiteConfig()).resolved(N)
    sigma = None if sigma is None else exact(sigma)
    report: dict = {
        "schema": 1,
        "origin": prefix.origin,
        "length": N,
        "bounds": {
            "k_max": cfg.k_max,
            "max_offset": cfg.max_offset,
            "max_preperiod": cfg.max_preperiod,
            "max_period": cfg.max_period,
            "max_i": cfg.max_i,
            "min_evidence": cfg.min_evidence,
        },
    }
    theorems = []

    period = detect_permutation_period(prefix, cfg.max_preperiod, cfg.max_period)
    report["periodicity"] = (
        {"verdict": "periodic" if period[0] == 0 else "ultimately_periodic", "preperiod": period[0], "period": period[1]}
        if period
        else {"verdict": "aperiodic"}
    )

    pstar = []
    for k in range(1, cfg.k_max + 1):
        value, witness = max_pattern_complexity_bounded(prefix, k, cfg.max_offset)
        pstar.append({"k": k, "max_offset": cfg.max_offset, "p_star_bounded": value, "witness_window": list(witness)})
    report["p_star_bounded"] = pstar
    fa_max = min(cfg.max_offset + 1, N)
    fa = [factor_complexity(prefix, n) for n in range(1, fa_max + 1)]
    report["factor_complexity"] = fa
    values = [row["p_star_bounded"] for row in pstar]
    equals_k = all(v == k for k, v in enumerate(values, 1))

    if period:
        bound = period[0] + period[1]
        ok = max(values) <= bound and max(fa) <= bound
        theorems.append(_verdict("theorem2", "pass" if ok else "fail", bound=bound))
        theorems.append(_verdict("theorem4", "pass" if ok else "fail", direction="periodic", bound=bound))
    else:
        theorems.append(_verdict("theorem2", "not_applicable"))
        ok = all(v >= k for k, v in enumerate(values, 1))
        theorems.append(_verdict("theorem4", "pass" if ok else "fail", direction="aperiodic"))

    gamma: dict = {}
    first = None
    if N // 2 - 1 >= cfg.min_evidence:
        first = classify_gamma(prefix, 1, cfg.min_evidence)
        gamma["gamma_1"] = str(first.residues[0].word_class)
    report["gamma"] = gamma

    sturmian_rows = first is not None and first.aggregate == "sturmian"
    recon_ok = False
    report["sm"] = report["reconstruction"] = report["lemma4"] = None
    if sturmian_rows:
        classes = {}
        bad = []
        for i in range(1, cfg.max_i + 1):
            c = classify_gamma(prefix, i, cfg.min_evidence)
            classes[str(i)] = c.aggregate
            if c.violations or c.aggregate not in ("sturmian", "monotone_inc", "monotone_dec"):
                bad.append(i)
        gamma["classes"] = classes
        theorems.append(_verdict("claims1_4", "fail" if bad else "pass", offending=bad))
    if sturmian_rows and sigma is not None:
        try:
            part = sm_partition(prefix, sigma, cfg.max_i, cfg.min_evidence)
        except (Inconclusive, ThresholdViolation) as exc:
            theorems.append(_verdict("claim7", "fail", error=str(exc)))
        else:
            closure = verify_closure(part)
            qid = verify_q_identity(sigma, 200)
            report["sm"] = {
                "S": sorted(part.S),
                "M": sorted(part.M),
                "direction": part.direction,
                "d_interval": [str(part.d_interval[0]), str(part.d_interval[1])],
            }
            theorems.append(_verdict("claim7", "pass" if not claim7_pairs(part) else "fail"))
            theorems.append(_verdict("closure", "pass" if closure.ok else "fail", violations=closure.violations))
            theorems.append(_verdict("q_identity", "pass" if qid.ok else "fail", checked=qid.checked))
            if rho is not None and lattice_hits(sigma, rho, N):
                theorems.append(_verdict("claim6", "not_applicable", reason="lattice hit in the prefix"))
            elif rho is not None:
                c6 = [verify_claim6(prefix, sigma, rho, i, part) for i in sorted(part.S)]
                theorems.append(
                    _verdict("claim6", "pass" if all(c.ok for c in c6) else "fail", differences=sorted(part.S))
                )
            try:
                rec = reconstruct(prefix, sigma, cfg.max_i, cfg.min_evidence)
            except (EmptyInterval, ThresholdViolation, PreconditionError) as exc:
                theorems.append(_verdict("reconstruction", "fail", error=str(exc)))
            else:
                recon_ok = rec.isomorphic
                report["reconstruction"] = {
                    "isomorphic": rec.isomorphic,
                    "d_interval": [str(rec.d_interval[0]), str(rec.d_interval[1])],
                    "d_star": str(rec.d_star),
                    "first_mismatch": rec.first_mismatch,
                }
                theorems.append(_verdict("reconstruction", "pass" if rec.isomorphic else "fail"))

    if recon_ok:
        ok = equals_k and all(f == n for n, f in enumerate(fa, 1))
        theorems.append(_verdict("theorem5", "pass" if ok else "fail"))
    else:
        theorems.append(_verdict("theorem5", "not_applicable"))
    if sigma is not None or not sturmian_rows:
        # p* = k up to k_max without a Sturmian reconstruction says nothing about larger k
        status = "pass" if equals_k == recon_ok else ("inconclusive" if equals_k else "fail")
        theorems.append(
            _verdict(
                "theorem6",
                status,
                p_star_equals_k=equals_k,
                sturmian_reconstruction=recon_ok,
            )
        )

    if first is not None and first.residues[0].verdict == "periodic":
        tp = first.residues[0].word_class.period
        witness = None
        for r in range(1, tp):
            try:
                witness = find_lemma4_window(prefix, tp, r, cfg.lemma4_budget)
            except (PreconditionError, InsufficientEvidence):
                continue
            if witness:
                break
        if witness:
            report["lemma4"] = {
                "t": tp,
                "window": list(witness.window),
                "positions": list(witness.positions),
                "complexity": witness.complexity,
            }
            theorems.append(_verdict("lemma4", "pass" if witness.complexity >= 5 else "fail"))
        else:
            theorems.append(_verdict("lemma4", "not_applicable"))

    report["theorems"] = theorems
    report["ok"] = all(t["verdict"] != "fail" for t in theorems)
    return report
