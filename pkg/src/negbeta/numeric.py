"""Certified computation for negative-base transformations.

The map is x -> -bx + floor(bx) + 1 on (0, 1], extended by 0 -> 1.  Bases
are exact rationals (preferred: every orbit value is an exact Fraction) or
real intervals refined on demand, e.g. the golden ratio.  Interval results
are only reported when the enclosure determines them; nothing is rounded
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import AmbiguousDigit, DomainError, UndecidableOrder
from .order import EvPeriodicSeq, Word, word

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class IntervalValue:
    """A closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> Optional[Fraction]:
        return self.lo if self.lo == self.hi else None

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


UnitPoint = Union[Fraction, IntervalValue]

Refiner = Callable[[int], tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class BetaValue:
    """A base beta > 1, exact or enclosed in a refinable interval."""

    exact: Optional[Fraction] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    bits: int = 64
    refiner: Optional[Refiner] = field(default=None, compare=False)
    label: Optional[str] = None

    @staticmethod
    def from_rational(value) -> "BetaValue":
        v = Fraction(value)
        if v <= 1:
            raise DomainError(f"beta must exceed 1, got {v}")
        return BetaValue(exact=v, lo=v, hi=v)

    @staticmethod
    def golden(bits: int = 64) -> "BetaValue":
        def refine(b: int) -> tuple[Fraction, Fraction]:
            s = math.isqrt(5 << (2 * b))
            return (1 + Fraction(s, 1 << b)) / 2, (1 + Fraction(s + 1, 1 << b)) / 2

        lo, hi = refine(bits)
        return BetaValue(lo=lo, hi=hi, bits=bits, refiner=refine, label="golden")

    @staticmethod
    def parse(text: str, bits: int = 64) -> "BetaValue":
        """Parse "p/q", a decimal like "1.3" (read exactly), or "golden"."""
        text = text.strip()
        if text == "golden":
            return BetaValue.golden(bits)
        return BetaValue.from_rational(Fraction(text))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def bounds(self, bits: Optional[int] = None) -> tuple[Fraction, Fraction]:
        if self.exact is not None:
            return self.exact, self.exact
        if bits is not None and bits != self.bits and self.refiner is not None:
            return self.refiner(bits)
        return self.lo, self.hi

    def with_bits(self, bits: int) -> "BetaValue":
        if self.exact is not None or self.refiner is None:
            return self
        lo, hi = self.refiner(bits)
        return BetaValue(lo=lo, hi=hi, bits=bits, refiner=self.refiner,
                         label=self.label)

    def floor(self) -> int:
        """floor(beta); for intervals the enclosure must decide it."""
        lo, hi = self.bounds()
        f = math.floor(lo)
        if math.floor(hi) != f:
            raise AmbiguousDigit(self.bits)
        return f

    @property
    def alphabet(self) -> int:
        return self.floor() + 1

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.exact is not None:
            return str(self.exact)
        return f"[{self.lo},{self.hi}]@{self.bits}b"


@dataclass(frozen=True)
class CertifiedDigits:
    """An expansion prefix together with how much of it is certified."""

    digits: Word
    certified: int
    status: tuple  # ("complete",) or ("precision_exhausted", failed_index)

    @property
    def complete(self) -> bool:
        return self.status[0] == "complete"


def _check_unit(x: UnitPoint, allow_zero: bool) -> None:
    if isinstance(x, IntervalValue):
        lo, hi = x.lo, x.hi
    else:
        lo = hi = Fraction(x)
    if hi > 1 or lo < 0 or (not allow_zero and hi <= 0):
        raise DomainError(f"point {x} outside the unit interval")


def step(beta: BetaValue, x: UnitPoint) -> tuple[int, UnitPoint]:
    """One application of the transformation: returns (digit, next point).

    digit = floor(beta*x) + 1 with the endpoint conventions of the cell
    partition (interior cells closed on the left, x = 1 in the top cell).
    Exact in, exact out; interval inputs raise AmbiguousDigit when the
    enclosure straddles a cell boundary.
    """
    if isinstance(x, int):
        x = Fraction(x)
    _check_unit(x, allow_zero=False)
    if beta.is_exact and isinstance(x, Fraction):
        if x <= 0:
            raise DomainError(f"x = {x} not in (0, 1]")
        t = beta.exact * x
        d = math.floor(t) + 1
        return d, d - t
    blo, bhi = beta.bounds()
    if isinstance(x, Fraction):
        xlo = xhi = x
    else:
        xlo, xhi = x.lo, x.hi
    if xlo <= 0 and xhi <= 0:
        raise DomainError("x = 0 is handled by the extended map only")
    tlo, thi = blo * xlo, bhi * xhi
    flo, fhi = math.floor(tlo), math.floor(thi)
    if flo != fhi:
        raise AmbiguousDigit(beta.bits)
    d = flo + 1
    nxt = IntervalValue(d - thi, d - tlo)
    return d, nxt


def step_extended(beta: BetaValue, x: UnitPoint) -> tuple[Optional[int], UnitPoint]:
    """The extension to [0, 1]: 0 maps to 1 without emitting a digit."""
    if isinstance(x, int):
        x = Fraction(x)
    _check_unit(x, allow_zero=True)
    zero = (x == 0) if isinstance(x, Fraction) else (x.lo == 0 and x.hi == 0)
    if zero:
        return None, ONE
    return step(beta, x)


def expand(beta: BetaValue, x: UnitPoint, n: int, max_bits: int = 4096) -> CertifiedDigits:
    """First n expansion digits of x.

    Rational base and point: all n digits exact.  Interval mode: on an
    ambiguous digit the precision is doubled (re-running from the start)
    up to max_bits; the result then records the certified prefix and an
    exhausted status.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    if isinstance(x, int):
        x = Fraction(x)
    if beta.is_exact and isinstance(x, Fraction):
        digits = []
        cur = x
        for _ in range(n):
            d, cur = step(beta, cur)
            digits.append(d)
        return CertifiedDigits(tuple(digits), n, ("complete",))

    bits = beta.bits
    best: list[int] = []
    while True:
        b = beta.with_bits(bits)
        digits = []
        cur: UnitPoint = x
        failed_at = None
        for i in range(n):
            try:
                d, cur = step(b, cur)
            except AmbiguousDigit:
                failed_at = i
                break
            digits.append(d)
        if failed_at is None:
            return CertifiedDigits(tuple(digits), n, ("complete",))
        if digits[: len(best)] != best[: len(digits)]:
            raise AssertionError("certified digits changed under refinement")
        if len(digits) > len(best):
            best = digits
        if bits >= max_bits or beta.refiner is None:
            return CertifiedDigits(tuple(best), len(best),
                                   ("precision_exhausted", failed_at))
        bits *= 2


@dataclass(frozen=True)
class D1Classification:
    """Cycle structure of the digit expansion of 1.

    kind is one of "periodic_odd", "periodic_even", "eventually_periodic"
    or "no_cycle".  Periods are certified only in exact rational mode, by
    literal repetition of an orbit value; interval mode never certifies.
    """

    kind: str
    period: Optional[int]
    preperiod: Optional[int]
    horizon: int
    digits: Word

    @property
    def purely_periodic(self) -> bool:
        return self.kind in ("periodic_odd", "periodic_even")


def classify_d1(beta: BetaValue, horizon: int) -> D1Classification:
    """Detect (pure or eventual) periodicity of the expansion of 1."""
    if horizon < 1:
        raise ValueError("horizon >= 1 required")
    if not beta.is_exact:
        got = expand(beta, ONE, horizon)
        return D1Classification("no_cycle", None, None, horizon, got.digits)
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    cur = ONE
    for t in range(horizon):
        if cur in seen:
            s = seen[cur]
            p = t - s
            if s == 0:
                kind = "periodic_odd" if p % 2 == 1 else "periodic_even"
                return D1Classification(kind, p, 0, horizon, tuple(digits))
            return D1Classification("eventually_periodic", p, s, horizon,
                                    tuple(digits))
        seen[cur] = t
        d, cur = step(beta, cur)
        digits.append(d)
    return D1Classification("no_cycle", None, None, horizon, tuple(digits))


GOLDEN_UPPER = EvPeriodicSeq.make((2,), (1,))


def golden_test(beta: BetaValue, horizon: int = 64, max_bits: int = 4096) -> str:
    """Decide whether the expansion of 1 sits below 2(1)^inf, equivalently
    whether beta < (1+sqrt 5)/2.  Returns "below" or "at_or_above".

    The expansion prefix decides almost always; a full tie falls back to an
    exact square comparison for rational beta, and to the constructor label
    for the golden base itself.
    """
    got = expand(beta, ONE, horizon, max_bits=max_bits)
    for i in range(1, got.certified + 1):
        a = got.digits[i - 1]
        t = GOLDEN_UPPER.digit(i)
        if a != t:
            s = (a > t) - (a < t)
            if i % 2 == 0:
                s = -s
            return "below" if s < 0 else "at_or_above"
    if beta.label == "golden":
        return "at_or_above"
    if beta.is_exact:
        p, q = beta.exact.numerator, beta.exact.denominator
        return "below" if (2 * p - q) ** 2 < 5 * q * q else "at_or_above"
    raise UndecidableOrder(f"prefix of length {got.certified} ties 2(1)^inf")


def _interval_pow_recip(blo: Fraction, bhi: Fraction, i: int) -> tuple[Fraction, Fraction]:
    # enclosure of beta^(-i) for beta in [blo, bhi], blo > 1
    return 1 / bhi**i, 1 / blo**i


def psi_value(beta: BetaValue, seq) -> IntervalValue:
    """Value of the alternating digit series sum_i s_i * (-1)^(i+1) * beta^(-i).

    Exact (degenerate interval) for an eventually periodic sequence over an
    exact base, via geometric summation.  A finite word yields the partial
    sum bracketed by the tail bound  max_digit / (beta^m (beta-1)).
    """
    blo, bhi = beta.bounds()
    if isinstance(seq, EvPeriodicSeq):
        if beta.is_exact:
            v = _psi_ev_exact(beta.exact, seq)
            return IntervalValue(v, v)
        v0 = _psi_ev_exact(blo, seq)
        v1 = _psi_ev_exact(bhi, seq)
        # The series is not monotone in beta; pad the endpoint values by the
        # width times the derivative bound m / (blo - 1)^2.
        m = seq.max_digit
        pad = (bhi - blo) * m / (blo - 1) ** 2
        return IntervalValue(min(v0, v1) - pad, max(v0, v1) + pad)
    w = word(seq)
    m = len(w)
    if m == 0:
        raise ValueError("empty word")
    maxd = max(w)
    if beta.is_exact:
        b = beta.exact
        partial = sum(Fraction(d) * (-1) ** (i + 1) / b**i
                      for i, d in enumerate(w, start=1))
        tail = Fraction(maxd) / (b**m * (b - 1))
        return IntervalValue(partial - tail, partial + tail)
    lo = hi = ZERO
    for i, d in enumerate(w, start=1):
        plo, phi = _interval_pow_recip(blo, bhi, i)
        if i % 2 == 1:
            lo, hi = lo + d * plo, hi + d * phi
        else:
            lo, hi = lo - d * phi, hi - d * plo
    tlo, thi = _interval_pow_recip(blo, bhi, m)
    tail = maxd * thi / (blo - 1)
    return IntervalValue(lo - tail, hi + tail)


def _psi_ev_exact(b: Fraction, seq: EvPeriodicSeq) -> Fraction:
    pre, per = seq.preperiod, seq.period
    p, L = len(pre), len(per)
    head = sum(Fraction(d) * (-1) ** (i + 1) / b**i
               for i, d in enumerate(pre, start=1))
    block = sum(Fraction(d) * (-1) ** (j + 1) / b**j
                for j, d in enumerate(per, start=1))
    r = Fraction((-1) ** L) / b**L
    tail = block / (1 - r)
    return head + Fraction((-1) ** p) / b**p * tail


# ---------------------------------------------------------------------------
# Exact interval-set iteration for the locally-eventually-onto search.
# ---------------------------------------------------------------------------

# A piece is (lo, lo_closed, hi, hi_closed) with Fraction endpoints; a point
# is lo == hi with both flags True.
Piece = tuple[Fraction, bool, Fraction, bool]

FULL: tuple[Piece, ...] = ((ZERO, False, ONE, True),)


def _piece_ok(p: Piece) -> bool:
    lo, lc, hi, hc = p
    return lo < hi or (lo == hi and lc and hc)


def _normalize(pieces: list[Piece]) -> tuple[Piece, ...]:
    pieces = [p for p in pieces if _piece_ok(p)]
    pieces.sort(key=lambda p: (p[0], not p[1]))
    out: list[Piece] = []
    for p in pieces:
        if not out:
            out.append(p)
            continue
        lo, lc, hi, hc = out[-1]
        plo, plc, phi, phc = p
        touching = plo < hi or (plo == hi and (hc or plc))
        if touching:
            if phi > hi or (phi == hi and phc and not hc):
                out[-1] = (lo, lc, phi, phc)
        else:
            out.append(p)
    return tuple(out)


def _intersect(p: Piece, q: Piece) -> Optional[Piece]:
    lo = max(p[0], q[0])
    hi = min(p[2], q[2])
    lc = (p[1] if p[0] == lo else True) and (q[1] if q[0] == lo else True)
    hc = (p[3] if p[2] == hi else True) and (q[3] if q[2] == hi else True)
    piece = (lo, lc, hi, hc)
    return piece if _piece_ok(piece) else None


def _cells(b: Fraction) -> list[tuple[Piece, int]]:
    """The digit partition of (0, 1] for an exact base."""
    fl = math.floor(b)
    cuts = [Fraction(i) / b for i in range(1, fl + 1)]
    cells: list[tuple[Piece, int]] = [((ZERO, False, cuts[0], False), 1)]
    for i in range(2, fl + 1):
        cells.append(((cuts[i - 2], True, cuts[i - 1], False), i))
    cells.append(((cuts[fl - 1], True, ONE, True), fl + 1))
    return cells


def _map_piece(b: Fraction, piece: Piece, digit: int) -> Piece:
    # x -> digit - b*x is decreasing: endpoints swap, flags follow them.
    lo, lc, hi, hc = piece
    return (digit - b * hi, hc, digit - b * lo, lc)


def leo_witness(beta: BetaValue, a, b, nmax: int,
                lo_closed: bool = False, hi_closed: bool = False) -> Optional[int]:
    """Smallest n <= nmax with the n-th image of the interval (a, b) under
    the extended map equal to (0, 1]; None if not reached by nmax.

    Exact rational propagation of interval unions across the partition, so
    a returned witness is a certificate, and None is only a search bound.
    """
    if not beta.is_exact:
        raise DomainError("interval bases not supported; use an exact rational")
    bq = beta.exact
    a, b = Fraction(a), Fraction(b)
    if not (0 <= a < b <= 1):
        raise DomainError(f"({a}, {b}) is not a positive-length subinterval of [0, 1]")
    cells = _cells(bq)
    cur = _normalize([(a, lo_closed, b, hi_closed)])
    seen: set = set()
    for n in range(nmax + 1):
        if cur == FULL:
            return n
        if cur in seen:
            # the image sets repeat exactly: the full interval is never
            # reached (happens for bases below the golden ratio)
            return None
        seen.add(cur)
        nxt: list[Piece] = []
        for piece in cur:
            if piece[0] == ZERO and piece[1]:  # extended map: 0 -> 1
                nxt.append((ONE, True, ONE, True))
            for cell, digit in cells:
                hit = _intersect(piece, cell)
                if hit is not None:
                    nxt.append(_map_piece(bq, hit, digit))
        cur = _normalize(nxt)
    return None
