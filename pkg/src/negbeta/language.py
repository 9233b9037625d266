"""Admissible words, periodic points and counting for bounded shift spaces.

A shift is specified by an alphabet, an upper bound sequence b (the digit
expansion of 1, or any sequence dominating its shifts in the alternating
order) and, in the purely-odd-periodic case, a derived lower bound.  A word
is admissible when every suffix stays within the bounds compared against
the corresponding bound prefix; ties at the end of a finite comparison are
within bounds.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import HorizonExhausted, NotOddPeriodic, SpecPrefixTooShort
from .numeric import BetaValue, classify_d1, expand
from .order import (GT, LT, BoundSeq, EvPeriodicSeq, Word, alt_cmp_seq,
                    bound_digit, bound_len, is_alt_shift_maximal, rotations,
                    word)

YES, NO, UNDETERMINED = "yes", "no", "undetermined"


def derived_lower_bound(upper: EvPeriodicSeq) -> EvPeriodicSeq:
    """The lower bound attached to a purely periodic upper bound of odd
    period n: the periodic sequence with block 1 b_1 ... b_{n-1} (b_n - 1)."""
    if upper.preperiod or len(upper.period) % 2 == 0:
        raise NotOddPeriodic(str(upper))
    per = upper.period
    if per[-1] < 2:
        raise ValueError("last period digit must exceed 1")
    return EvPeriodicSeq.make((), (1,) + per[:-1] + (per[-1] - 1,))


@dataclass(frozen=True)
class ShiftSpec:
    """Defining data of a shift: alphabet size, upper bound sequence and an
    optional lower bound (present exactly in the odd-period case)."""

    alphabet: int
    upper: BoundSeq
    lower: Optional[EvPeriodicSeq] = None
    origin: Optional[BetaValue] = field(default=None, compare=False)

    @staticmethod
    def make(upper, lower=None, alphabet=None, origin=None) -> "ShiftSpec":
        """One-sided spec by default; pass lower="derived" for the two-sided
        odd-period semantics, or an explicit lower bound sequence."""
        if not isinstance(upper, EvPeriodicSeq):
            upper = word(upper)
        check = is_alt_shift_maximal(upper, alphabet)
        if check.status == "no":
            raise ValueError(
                f"upper bound is not alternately shift maximal (shift {check.witness})")
        first = bound_digit(upper, 1)
        alph = alphabet if alphabet is not None else first
        if first != alph:
            raise ValueError("first digit of the upper bound must be the alphabet maximum")
        if lower == "derived":
            lower = derived_lower_bound(upper)
        if lower is not None and not isinstance(lower, EvPeriodicSeq):
            raise TypeError("lower bound must be eventually periodic")
        return ShiftSpec(alph, upper, lower, origin)

    @staticmethod
    def golden() -> "ShiftSpec":
        """The shift bounded by 2(1)^inf, i.e. base (1+sqrt 5)/2."""
        return ShiftSpec.make(EvPeriodicSeq.make((2,), (1,)),
                              origin=BetaValue.golden())

    @staticmethod
    def from_beta(beta: BetaValue, horizon: int = 256,
                  prefix_len: int = 64) -> "ShiftSpec":
        """Build the spec for a base: classify the expansion of 1 and use a
        periodic bound when certified, otherwise a certified prefix."""
        cls = classify_d1(beta, horizon)
        if cls.purely_periodic:
            upper = EvPeriodicSeq.make((), cls.digits[: cls.period])
            lower = "derived" if cls.kind == "periodic_odd" else None
            return ShiftSpec.make(upper, lower=lower, origin=beta)
        if cls.kind == "eventually_periodic":
            upper = EvPeriodicSeq.make(cls.digits[: cls.preperiod],
                                       cls.digits[cls.preperiod: cls.preperiod + cls.period])
            return ShiftSpec.make(upper, origin=beta)
        got = expand(beta, 1, prefix_len)
        return ShiftSpec.make(got.digits[: got.certified], origin=beta)

    @property
    def two_sided(self) -> bool:
        return self.lower is not None

    @property
    def prefix_mode(self) -> bool:
        return not isinstance(self.upper, EvPeriodicSeq)

    def upper_digit(self, i: int) -> Optional[int]:
        return bound_digit(self.upper, i)

    def upper_len(self) -> float:
        return bound_len(self.upper)

    def describe(self) -> str:
        side = "two-sided" if self.two_sided else "one-sided"
        return f"{side} shift over 1..{self.alphabet}, upper {self.upper}"


def _suffix_vs_upper(spec: ShiftSpec, s: Word) -> Optional[bool]:
    """True if the suffix certainly exceeds the upper bound, False if it
    certainly stays within, None if the known prefix cannot decide."""
    for i, a in enumerate(s, start=1):
        d = spec.upper_digit(i)
        if d is None:
            return None
        if a != d:
            s_ = (a > d) - (a < d)
            if i % 2 == 0:
                s_ = -s_
            return s_ > 0
    return False


def _suffix_vs_lower(lower: EvPeriodicSeq, s: Word) -> bool:
    """True if the suffix falls strictly below the lower bound."""
    for i, a in enumerate(s, start=1):
        d = lower.digit(i)
        if a != d:
            s_ = (a > d) - (a < d)
            if i % 2 == 0:
                s_ = -s_
            return s_ < 0
    return False


def is_admissible(spec: ShiftSpec, w) -> str:
    """Membership test: "yes", "no" or (prefix specs only) "undetermined".

    One-sided: exact whenever the upper bound is known to length |w|.
    Two-sided: a definite violation of either bound is "no"; otherwise
    "yes" under the conservative finite-word semantics (violation-freeness;
    validated against completion searches in the tests).
    """
    w = word(w)
    if any(d > spec.alphabet for d in w):
        return NO
    undecided = False
    for i in range(len(w)):
        s = w[i:]
        over = _suffix_vs_upper(spec, s)
        if over is True:
            return NO
        if over is None:
            undecided = True
        if spec.two_sided and _suffix_vs_lower(spec.lower, s):
            return NO
    return UNDETERMINED if undecided else YES


def _violation_tables(spec: ShiftSpec):
    """Closures deciding, for a live tie of length ell, whether appending
    digit a breaks a bound at position ell+1, plus the digit streams."""
    up = spec.upper_digit
    lo = spec.lower.digit if spec.two_sided else None

    def upper_viol(ell: int, a: int) -> bool:
        p = ell + 1
        d = up(p)
        if d is None:
            raise SpecPrefixTooShort(f"upper bound needed at index {p}")
        return a > d if p % 2 == 1 else a < d

    def lower_viol(ell: int, a: int) -> bool:
        p = ell + 1
        d = lo(p)
        return a < d if p % 2 == 1 else a > d

    return upper_viol, (lower_viol if spec.two_sided else None), up, lo


def iter_words(spec: ShiftSpec, n: int) -> Iterator[Word]:
    """All admissible words of length n, in lexicographic order.

    Words are grown digit by digit; a prefix is extended only by digits
    that break no bound at any live suffix tie, which is the incremental
    arrangement of the per-suffix membership rule.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    upper_viol, lower_viol, up, lo = _violation_tables(spec)
    alphabet = range(1, spec.alphabet + 1)

    def rec(prefix: list[int], ties_up: tuple[int, ...], ties_lo: tuple[int, ...]):
        depth = len(prefix)
        for a in alphabet:
            bad = False
            for ell in (0, *ties_up):
                if upper_viol(ell, a):
                    bad = True
                    break
            if bad:
                continue
            if lower_viol is not None:
                for ell in (0, *ties_lo):
                    if lower_viol(ell, a):
                        bad = True
                        break
                if bad:
                    continue
            new_up = tuple(ell + 1 for ell in (*ties_up, 0) if up(ell + 1) == a)
            new_lo = (tuple(ell + 1 for ell in (*ties_lo, 0) if lo(ell + 1) == a)
                      if lower_viol is not None else ())
            prefix.append(a)
            if depth + 1 == n:
                yield tuple(prefix)
            else:
                yield from rec(prefix, new_up, new_lo)
            prefix.pop()

    yield from rec([], (), ())


def enumerate_words(spec: ShiftSpec, n: int) -> list[Word]:
    return list(iter_words(spec, n))


@dataclass
class CountTable:
    """Per-length exact counts of admissible words and periodic blocks."""

    rows: list[dict]  # n, count_words, count_per (optional), exact

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "count_L", "count_Per", "exact"])
        for r in self.rows:
            per = r.get("count_per")
            writer.writerow([r["n"], r["count_words"],
                             "" if per is None else per, int(r["exact"])])
        return buf.getvalue()


def count_words(spec: ShiftSpec, nmax: int, with_per: bool = False) -> CountTable:
    """Exact word counts for every length up to nmax (one pruned search)."""
    counts = [0] * (nmax + 1)
    upper_viol, lower_viol, up, lo = _violation_tables(spec)
    alphabet = range(1, spec.alphabet + 1)

    def rec(depth: int, ties_up, ties_lo):
        for a in alphabet:
            ok = True
            for ell in (0, *ties_up):
                if upper_viol(ell, a):
                    ok = False
                    break
            if ok and lower_viol is not None:
                for ell in (0, *ties_lo):
                    if lower_viol(ell, a):
                        ok = False
                        break
            if not ok:
                continue
            counts[depth + 1] += 1
            if depth + 1 < nmax:
                new_up = tuple(ell + 1 for ell in (*ties_up, 0) if up(ell + 1) == a)
                new_lo = (tuple(ell + 1 for ell in (*ties_lo, 0) if lo(ell + 1) == a)
                          if lower_viol is not None else ())
                rec(depth + 1, new_up, new_lo)

    rec(0, (), ())
    rows = []
    for n in range(1, nmax + 1):
        row = {"n": n, "count_words": counts[n], "exact": True}
        if with_per:
            row["count_per"] = per_count(spec, n)
        rows.append(row)
    return CountTable(rows)


def _seq_leq_upper(spec: ShiftSpec, s: EvPeriodicSeq) -> bool:
    if isinstance(spec.upper, EvPeriodicSeq):
        return alt_cmp_seq(s, spec.upper) != GT
    horizon = len(spec.upper)
    for i in range(1, horizon + 1):
        a, d = s.digit(i), spec.upper[i - 1]
        if a != d:
            sg = (a > d) - (a < d)
            if i % 2 == 0:
                sg = -sg
            return sg < 0
    raise HorizonExhausted(
        f"{s} ties the {horizon}-digit upper prefix; extend the prefix")


def per_points(spec: ShiftSpec, n: int) -> list[Word]:
    """Blocks of the points fixed by the n-th shift power: all w of length
    n whose every rotation, repeated periodically, stays within bounds.

    Blocks of non-least period are included, matching sigma^n x = x.
    """
    return [w for w in iter_words(spec, n) if periodic_block_ok(spec, w)]


def per_count(spec: ShiftSpec, n: int) -> int:
    return len(per_points(spec, n))


def entropy_profile(table: CountTable) -> list[dict]:
    """Finite-size growth estimates (1/n) log count for each table row."""
    rows = []
    for r in table.rows:
        n = r["n"]
        est = math.log(r["count_words"]) / n if r["count_words"] > 0 else 0.0
        row = {"n": n, "words_estimate": est}
        per = r.get("count_per")
        if per is not None:
            row["per_estimate"] = math.log(per) / n if per > 0 else 0.0
        rows.append(row)
    return rows


def mixing_witness(spec: ShiftSpec, v, w, nmax: int) -> Optional[int]:
    """Least n <= nmax such that some admissible word carries v as a prefix
    and w at positions n+1 .. n+|w|; None when the search bound is hit."""
    v, w = word(v), word(w)
    if is_admissible(spec, v) != YES or is_admissible(spec, w) != YES:
        raise ValueError("v and w must be admissible")
    upper_viol, lower_viol, up, lo = _violation_tables(spec)

    for n in range(nmax + 1):
        forced: dict[int, int] = {}
        conflict = False
        for i, d in enumerate(v, start=1):
            forced[i] = d
        for i, d in enumerate(w, start=1):
            pos = n + i
            if forced.get(pos, d) != d:
                conflict = True
                break
            forced[pos] = d
        if conflict:
            continue
        total = max(len(v), n + len(w))

        def rec(depth: int, ties_up, ties_lo) -> bool:
            want = forced.get(depth + 1)
            digits = (want,) if want is not None else range(1, spec.alphabet + 1)
            for a in digits:
                ok = True
                for ell in (0, *ties_up):
                    if upper_viol(ell, a):
                        ok = False
                        break
                if ok and lower_viol is not None:
                    for ell in (0, *ties_lo):
                        if lower_viol(ell, a):
                            ok = False
                            break
                if not ok:
                    continue
                if depth + 1 == total:
                    return True
                new_up = tuple(ell + 1 for ell in (*ties_up, 0) if up(ell + 1) == a)
                new_lo = (tuple(ell + 1 for ell in (*ties_lo, 0) if lo(ell + 1) == a)
                          if lower_viol is not None else ())
                if rec(depth + 1, new_up, new_lo):
                    return True
            return False

        if rec(0, (), ()):
            return n
    return None


def _ties_of(spec: ShiftSpec, w: Word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Live suffix ties of an admissible word against both bounds."""
    upper_viol, lower_viol, up, lo = _violation_tables(spec)
    ties_up: tuple[int, ...] = ()
    ties_lo: tuple[int, ...] = ()
    for a in w:
        for ell in (0, *ties_up):
            if upper_viol(ell, a):
                raise ValueError(f"{w} is not admissible")
        if lower_viol is not None:
            for ell in (0, *ties_lo):
                if lower_viol(ell, a):
                    raise ValueError(f"{w} is not admissible")
        ties_up = tuple(ell + 1 for ell in (*ties_up, 0) if up(ell + 1) == a)
        if lower_viol is not None:
            ties_lo = tuple(ell + 1 for ell in (*ties_lo, 0) if lo(ell + 1) == a)
    return ties_up, ties_lo


def follower_words(spec: ShiftSpec, w, depth: int) -> list[Word]:
    """All length-`depth` words u with w u admissible."""
    w = word(w)
    ties_up, ties_lo = _ties_of(spec, w)
    upper_viol, lower_viol, up, lo = _violation_tables(spec)
    out: list[Word] = []

    def rec(acc: list[int], tu, tl):
        for a in range(1, spec.alphabet + 1):
            ok = True
            for ell in (0, *tu):
                if upper_viol(ell, a):
                    ok = False
                    break
            if ok and lower_viol is not None:
                for ell in (0, *tl):
                    if lower_viol(ell, a):
                        ok = False
                        break
            if not ok:
                continue
            acc.append(a)
            if len(acc) == depth:
                out.append(tuple(acc))
            else:
                new_up = tuple(ell + 1 for ell in (*tu, 0) if up(ell + 1) == a)
                new_lo = (tuple(ell + 1 for ell in (*tl, 0) if lo(ell + 1) == a)
                          if lower_viol is not None else ())
                rec(acc, new_up, new_lo)
            acc.pop()

    if depth >= 1:
        rec([], ties_up, ties_lo)
    return out


def periodic_block_ok(spec: ShiftSpec, p) -> bool:
    """Exact check that the periodic repetition of block p lies in the
    shift: every rotation, repeated, stays within the bounds."""
    p = word(p)
    for r in rotations(p):
        seq = EvPeriodicSeq.make((), r)
        if not _seq_leq_upper(spec, seq):
            return False
        if spec.two_sided and alt_cmp_seq(seq, spec.lower) == LT:
            return False
    return True


def seq_within_bounds(spec: ShiftSpec, seq: EvPeriodicSeq) -> bool:
    """Exact membership of an eventually periodic point: every shift stays
    within the bounds.  Distinct shifts are finite in number."""
    for k in range(len(seq.preperiod) + len(seq.period)):
        s = seq.shift(k)
        if not _seq_leq_upper(spec, s):
            return False
        if spec.two_sided and alt_cmp_seq(s, spec.lower) == LT:
            return False
    return True


def eventually_periodic_completion(spec: ShiftSpec, w, max_extra: int = 6,
                                   max_period: int = 3) -> Optional[EvPeriodicSeq]:
    """Certify that w occurs in the shift by completing it to an eventually
    periodic point: w, a short bridge, then a repeated admissible block.

    Sound but not complete: a certificate proves membership, absence proves
    nothing.
    """
    w = word(w)
    periods: list[Word] = []
    for k in range(1, max_period + 1):
        periods.extend(per_points(spec, k))
    for extra in range(max_extra + 1):
        for u in _extensions(spec, w, extra):
            for p in periods:
                cand = EvPeriodicSeq.make(u, p)
                if cand.prefix(len(w)) != w:
                    continue
                if seq_within_bounds(spec, cand):
                    return cand
    return None


def periodic_completion(spec: ShiftSpec, w, max_extra: int = 20) -> Optional[Word]:
    """Search for a block extending w whose periodic repetition is within
    bounds, certifying that w occurs in a genuine point of the shift."""
    w = word(w)
    for extra in range(max_extra + 1):
        for u in _extensions(spec, w, extra):
            if periodic_block_ok(spec, u):
                return u
    return None


def _extensions(spec: ShiftSpec, w: Word, extra: int) -> Iterator[Word]:
    if extra == 0:
        if is_admissible(spec, w) != NO:
            yield w
        return
    for tail in iter_words(spec, extra):
        cand = w + tail
        if is_admissible(spec, cand) != NO:
            yield cand
