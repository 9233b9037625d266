"""Periodic-orbit measures, entropy estimators and Gibbs-type diagnostics.

The measure of order n puts equal weight on every point fixed by the n-th
shift power; cylinder masses are exact rationals (counts over the set of
period blocks), and logarithms only appear in reports.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyPer
from .language import ShiftSpec, count_words, per_points
from .order import Word, word


@dataclass
class EmpiricalMeasure:
    """Uniform measure on period-n blocks with cylinder masses up to length m.

    mass([w]) is the fraction of blocks whose periodic repetition starts
    with w; only nonzero masses are stored.
    """

    n: int
    m: int
    per_count: int
    masses: dict[Word, Fraction]

    def mass(self, w) -> Fraction:
        w = word(w)
        if len(w) == 0:
            return Fraction(1)
        if len(w) > self.m:
            raise ValueError(f"cylinder longer than table depth {self.m}")
        return self.masses.get(w, Fraction(0))

    def level(self, length: int) -> dict[Word, Fraction]:
        return {w: q for w, q in self.masses.items() if len(w) == length}

    def check_normalization(self) -> bool:
        return all(sum(self.level(ell).values()) == 1
                   for ell in range(1, self.m + 1))

    def check_consistency(self) -> bool:
        """mass([w]) must equal the sum of the masses of its one-digit
        extensions, exactly."""
        for ell in range(1, self.m):
            for w, q in self.level(ell).items():
                ext = sum(q2 for w2, q2 in self.level(ell + 1).items()
                          if w2[:ell] == w)
                if ext != q:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "per_count": self.per_count,
            "masses": {"".join(map(str, w)): f"{q.numerator}/{q.denominator}"
                       for w, q in sorted(self.masses.items())},
        }


def mu_n(spec: ShiftSpec, n: int, m: int) -> EmpiricalMeasure:
    """The order-n periodic-orbit measure with cylinders up to length m."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    blocks = per_points(spec, n)
    if not blocks:
        raise EmptyPer(f"no period-{n} blocks")
    N = len(blocks)
    masses: dict[Word, Fraction] = {}
    for p in blocks:
        for ell in range(1, m + 1):
            w = p[:ell]
            masses[w] = masses.get(w, Fraction(0)) + Fraction(1, N)
    return EmpiricalMeasure(n, m, N, masses)


def mu_n_rotation_averaged(spec: ShiftSpec, n: int, m: int) -> EmpiricalMeasure:
    """Companion diagnostic: average cylinder masses over all rotations of
    each block.  The block set is rotation-closed, so this agrees exactly
    with mu_n; a mismatch signals an enumeration bug."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    blocks = per_points(spec, n)
    if not blocks:
        raise EmptyPer(f"no period-{n} blocks")
    N = len(blocks)
    masses: dict[Word, Fraction] = {}
    for p in blocks:
        doubled = p + p
        for j in range(n):
            for ell in range(1, m + 1):
                w = doubled[j: j + ell]
                masses[w] = masses.get(w, Fraction(0)) + Fraction(1, N * n)
    return EmpiricalMeasure(n, m, N, masses)


@dataclass
class EntropyEstimate:
    value: float                     # (1/nmax) log #L_nmax
    nmax: int
    word_counts: list[int]
    per_counts: list[int]
    word_estimates: list[float]
    per_estimates: list[Optional[float]]
    last_delta: float                # change in the word estimate at nmax

    def to_json(self) -> dict:
        return {
            "value": self.value, "nmax": self.nmax,
            "word_counts": self.word_counts, "per_counts": self.per_counts,
            "word_estimates": self.word_estimates,
            "per_estimates": self.per_estimates,
            "last_delta": self.last_delta,
        }


def htop_estimate(spec: ShiftSpec, nmax: int, per_nmax: Optional[int] = None) -> EntropyEstimate:
    """Finite-size topological entropy estimate from exact word counts,
    with the periodic-block growth sequence as a secondary diagnostic."""
    if nmax < 2:
        raise ValueError("nmax >= 2 required")
    table = count_words(spec, nmax)
    counts = [r["count_words"] for r in table.rows]
    west = [math.log(c) / n if c > 0 else 0.0
            for n, c in enumerate(counts, start=1)]
    pn = per_nmax if per_nmax is not None else min(nmax, 12)
    pcounts = [len(per_points(spec, n)) for n in range(1, pn + 1)]
    pest = [math.log(c) / n if c > 0 else None
            for n, c in enumerate(pcounts, start=1)]
    return EntropyEstimate(west[-1], nmax, counts, pcounts, west, pest,
                           west[-1] - west[-2])


@dataclass
class GibbsReport:
    """Cylinder-mass ratios against e^{-n h}: the upper ratio scans every
    word, the lower only the designated good words."""

    h: float
    max_ratio: float
    max_word: Word
    min_good_ratio: Optional[float]
    min_good_word: Optional[Word]
    zero_mass_good: list[Word]
    implied_K: float
    rows: list[dict]

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "max_ratio": self.max_ratio,
            "max_word": "".join(map(str, self.max_word)),
            "min_good_ratio": self.min_good_ratio,
            "min_good_word": ("".join(map(str, self.min_good_word))
                              if self.min_good_word else None),
            "zero_mass_good": ["".join(map(str, w)) for w in self.zero_mass_good],
            "implied_K": self.implied_K,
            "rows": self.rows,
        }


def gibbs_check(measure: EmpiricalMeasure, gwords: Sequence, h: float) -> GibbsReport:
    """Compute mass * e^{|w| h} over all cylinders (upper side) and over the
    good words (lower side); the implied constant is the worse of the two.

    A good word of zero mass is flagged rather than crashing: it makes the
    lower bound fail at that length.
    """
    max_ratio, max_word = 0.0, ()
    rows = []
    for ell in range(1, measure.m + 1):
        level = measure.level(ell)
        scale = math.exp(ell * h)
        worst = max(level.items(), key=lambda kv: kv[1])
        ratio = float(worst[1]) * scale
        rows.append({"length": ell, "max_ratio": ratio,
                     "max_word": "".join(map(str, worst[0]))})
        if ratio > max_ratio:
            max_ratio, max_word = ratio, worst[0]
    min_good: Optional[float] = None
    min_good_word = None
    zero_mass = []
    for g in gwords:
        g = word(g)
        q = measure.mass(g)
        if q == 0:
            zero_mass.append(g)
            continue
        ratio = float(q) * math.exp(len(g) * h)
        if min_good is None or ratio < min_good:
            min_good, min_good_word = ratio, g
    implied = max(max_ratio, (1.0 / min_good) if min_good else math.inf, 1.0)
    return GibbsReport(h, max_ratio, max_word, min_good, min_good_word,
                       zero_mass, implied, rows)


@dataclass
class WeakStarTable:
    m: int
    ns: list[int]
    skipped: list[int]
    masses: dict[Word, list[Optional[Fraction]]]
    deviations: list[float]    # successive sup-distances over the table

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["word"] + [f"mu_{n}" for n in self.ns])
        for w in sorted(self.masses):
            row = ["".join(map(str, w))]
            for q in self.masses[w]:
                row.append("" if q is None else f"{q.numerator}/{q.denominator}")
            writer.writerow(row)
        return buf.getvalue()


def weakstar_diagnostic(spec: ShiftSpec, ns: Sequence[int], m: int) -> WeakStarTable:
    """Track cylinder masses along a list of orders; the successive maximum
    deviations indicate (but do not prove) weak-star convergence."""
    tables = []
    used, skipped = [], []
    for n in ns:
        try:
            tables.append(mu_n(spec, n, m))
            used.append(n)
        except EmptyPer:
            skipped.append(n)
    words = sorted({w for t in tables for w in t.masses})
    masses = {w: [t.masses.get(w, Fraction(0)) for t in tables] for w in words}
    deviations = []
    for a, b in zip(tables, tables[1:]):
        dev = max(abs(a.masses.get(w, Fraction(0)) - b.masses.get(w, Fraction(0)))
                  for w in words)
        deviations.append(float(dev))
    return WeakStarTable(m, used, skipped, masses, deviations)


def measure_entropy_estimate(measure: EmpiricalMeasure, m: int) -> float:
    """(1/m) sum -mass log mass over length-m cylinders (0 log 0 = 0)."""
    if not 1 <= m <= measure.m:
        raise ValueError("m beyond the cylinder table")
    total = 0.0
    for q in measure.level(m).values():
        if q > 0:
            total -= float(q) * math.log(float(q))
    return total / m
