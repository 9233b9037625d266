"""Sliding block codes onto the staircase shift and their verification.

The target shift consists of 1^inf, 2^inf, and every 1-run followed by a
2-tail; its length-n language is the n+1 monotone words.  Two window maps
land on it: one sends a window to 1 exactly on the all-ones block (bases
below the golden ratio), the other sends a window to 2 exactly on the
cyclic blocks of the bound sequence (purely odd-periodic expansions).
All defining claims are re-checked by exhaustive enumeration at a chosen
depth, and the findings are returned as a structured report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (NotOddPeriodic, OddOneRun, PatternMismatch, TooShort)
from .language import (NO, UNDETERMINED, YES, ShiftSpec, is_admissible,
                       iter_words)
from .numeric import golden_test
from .order import EvPeriodicSeq, Word, word


def x_language(n: int) -> list[Word]:
    """Length-n words of the target shift: 1-runs then 2-runs, n+1 of them."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return [(1,) * i + (2,) * (n - i) for i in range(n, -1, -1)]


def in_x_language(w) -> bool:
    w = word(w)
    seen_two = False
    for d in w:
        if d == 2:
            seen_two = True
        elif d == 1:
            if seen_two:
                return False
        else:
            return False
    return True


@dataclass(frozen=True)
class SlidingBlockCode:
    """A window map to {1, 2} applied at every position."""

    window: int
    kind: str                      # "ones_window" | "bound_blocks"
    detect: frozenset = frozenset()  # bound_blocks: windows mapped to 2

    def symbol(self, block: Word) -> int:
        if len(block) != self.window:
            raise TooShort(f"window is {self.window}, got {len(block)}")
        if self.kind == "ones_window":
            return 1 if block == (1,) * self.window else 2
        return 2 if block in self.detect else 1

    def apply(self, w) -> Word:
        w = word(w)
        if len(w) < self.window:
            raise TooShort(f"need at least {self.window} digits")
        return tuple(self.symbol(w[i: i + self.window])
                     for i in range(len(w) - self.window + 1))


def build_case1_code(spec: ShiftSpec, horizon: int = 64) -> SlidingBlockCode:
    """Window map for a base below the golden ratio.

    The expansion of 1 must read 2 1^k 2 with k even (and k >= 2 for
    genuine bases); the window is k+1 and only the all-ones window maps
    to 1.
    """
    if spec.origin is not None:
        if golden_test(spec.origin, horizon=horizon) != "below":
            raise PatternMismatch("base is not below the golden ratio")
    digits = [spec.upper_digit(i) for i in range(1, horizon + 1)]
    digits = [d for d in digits if d is not None]
    if not digits or digits[0] != 2:
        raise PatternMismatch(f"expansion must start with 2, got {digits[:4]}")
    k = 0
    for d in digits[1:]:
        if d == 1:
            k += 1
        else:
            break
    else:
        raise PatternMismatch("no second 2 within the known prefix")
    if k == 0:
        raise PatternMismatch("expansion reads 22..; not of the form 2 1^k 2")
    if k % 2 == 1:
        raise OddOneRun(f"leading run of ones has odd length {k}")
    return SlidingBlockCode(window=k + 1, kind="ones_window")


def build_case2_code(spec: ShiftSpec) -> SlidingBlockCode:
    """Window map for a purely periodic expansion of odd period n: windows
    of length 3n map to 2 exactly on the n cyclic blocks of the bound."""
    up = spec.upper
    if not (isinstance(up, EvPeriodicSeq) and not up.preperiod
            and len(up.period) % 2 == 1):
        raise NotOddPeriodic(f"upper bound {up} is not purely odd-periodic")
    if not spec.two_sided:
        raise NotOddPeriodic("odd-period shifts carry a lower bound")
    n = len(up.period)
    if up.digit(n) == 1:
        raise PatternMismatch("last digit of the period must exceed 1")
    blocks = frozenset(tuple(up.digit(i + j) for j in range(3 * n))
                       for i in range(1, n + 1))
    return SlidingBlockCode(window=3 * n, kind="bound_blocks", detect=blocks)


def apply_code(code: SlidingBlockCode, w) -> Word:
    return code.apply(w)


@dataclass
class ClaimResult:
    claim: str
    status: str                      # "pass" | "fail" | "inconclusive"
    detail: str = ""
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class FactorReport:
    kind: str
    window: int
    depth: int
    claims: list[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.claims)

    def to_json(self) -> dict:
        return {"kind": self.kind, "window": self.window, "depth": self.depth,
                "passed": self.passed,
                "claims": [c.to_json() for c in self.claims]}


def _fmt(w: Word) -> str:
    return "".join(map(str, w))


def verify_factor(code: SlidingBlockCode, spec: ShiftSpec, depth: int) -> FactorReport:
    """Exhaustively re-check the factor-map claims at the given depth:
    image containment, the no-1-after-2 shape, shift equivariance, the
    code-specific word equations, and surjectivity onto the target
    language."""
    if depth < code.window:
        raise TooShort("depth must reach the window length")
    claims: list[ClaimResult] = []
    words_at_depth = list(iter_words(spec, depth))

    image = set()
    bad_contain = bad_monotone = bad_equivariance = None
    for w in words_at_depth:
        img = code.apply(w)
        image.add(img)
        if not in_x_language(img):
            bad_contain = bad_contain or w
        if any(a == 2 and b == 1 for a, b in zip(img, img[1:])):
            bad_monotone = bad_monotone or w
        if code.apply(w[1:]) != img[1:]:
            bad_equivariance = bad_equivariance or w
    claims.append(ClaimResult(
        "image_containment",
        "fail" if bad_contain else "pass",
        f"{len(words_at_depth)} admissible words of length {depth}",
        _fmt(bad_contain) if bad_contain else None))
    claims.append(ClaimResult(
        "monotone_twos",
        "fail" if bad_monotone else "pass",
        "no 1 after a 2 in any image",
        _fmt(bad_monotone) if bad_monotone else None))
    claims.append(ClaimResult(
        "equivariance",
        "fail" if bad_equivariance else "pass",
        "dropping the first input digit commutes with the code",
        _fmt(bad_equivariance) if bad_equivariance else None))

    if code.kind == "ones_window":
        claims.append(check_ones_tail_forbidden(code, spec, depth))
    else:
        claims.append(check_singleton_cylinder(code, spec, depth))
        claims.append(check_shifted_block_mismatch(code, spec))

    expected = set(x_language(depth - code.window + 1))
    missing = sorted(expected - image)
    claims.append(ClaimResult(
        "surjectivity_onto_target",
        "pass" if not missing else "fail",
        f"image covers all {len(expected)} target words of length "
        f"{depth - code.window + 1}",
        _fmt(missing[0]) if missing else None))
    claims.append(_check_named_witnesses(code, spec, depth))
    return FactorReport(code.kind, code.window, depth, claims)


def check_ones_tail_forbidden(code: SlidingBlockCode, spec: ShiftSpec,
                              depth: int) -> ClaimResult:
    """No word other than an all-ones word extends by the all-ones window."""
    n = code.window
    ones = (1,) * n
    for length in range(1, depth - n + 1):
        for w in iter_words(spec, length):
            if w == (1,) * length:
                continue
            if is_admissible(spec, w + ones) != NO:
                return ClaimResult("ones_tail_forbidden", "fail",
                                   f"w 1^{n} admissible at |w|={length}",
                                   _fmt(w))
    return ClaimResult("ones_tail_forbidden", "pass",
                       f"w 1^{n} inadmissible for every non-ones w up to "
                       f"length {depth - n}")


def check_singleton_cylinder(code: SlidingBlockCode, spec: ShiftSpec,
                             depth: int) -> ClaimResult:
    """Every admissible extension of a detector block follows the periodic
    continuation of the bound sequence, digit for digit.

    Any undetermined membership aborts the claim as inconclusive instead of
    counting as a pass.
    """
    up = spec.upper
    n = code.window // 3
    saw_undetermined = False
    for i in range(1, n + 1):
        base = tuple(up.digit(i + j) for j in range(code.window))
        expected = tuple(up.digit(i + j) for j in range(depth))
        stack = [base]
        while stack:
            w = stack.pop()
            if len(w) >= depth:
                continue
            for a in range(1, spec.alphabet + 1):
                cand = w + (a,)
                status = is_admissible(spec, cand)
                if status == NO:
                    continue
                if status == UNDETERMINED:
                    saw_undetermined = True
                if cand != expected[: len(cand)]:
                    return ClaimResult("singleton_cylinder", "fail",
                                       f"unexpected extension of {_fmt(base)}",
                                       _fmt(cand))
                stack.append(cand)
    if saw_undetermined:
        return ClaimResult("singleton_cylinder", "inconclusive",
                           "bound prefix too short to decide all extensions")
    return ClaimResult("singleton_cylinder", "pass",
                       f"detector blocks extend uniquely up to length {depth}")


def check_shifted_block_mismatch(code: SlidingBlockCode,
                                 spec: ShiftSpec) -> ClaimResult:
    """1^j followed by the bound prefix never equals a detector block."""
    up = spec.upper
    n = code.window // 3
    for j in range(1, 3 * n + 1):
        cand = (1,) * j + tuple(up.digit(r) for r in range(1, 3 * n - j + 1))
        for i in range(1, n + 1):
            block = tuple(up.digit(i + t) for t in range(3 * n))
            if cand == block:
                return ClaimResult("shifted_block_mismatch", "fail",
                                   f"j={j}, i={i}", _fmt(cand))
    return ClaimResult("shifted_block_mismatch", "pass",
                       f"1^j prefixes differ from all {n} detector blocks")


def _check_named_witnesses(code: SlidingBlockCode, spec: ShiftSpec,
                           depth: int) -> ClaimResult:
    """Concrete preimages of the target points, checked on truncations:
    the all-ones word maps to all ones, the bound prefix to all twos, and
    for each k <= depth/2 some admissible word maps to 1^k 2...."""
    m = code.window
    ones = (1,) * depth
    if is_admissible(spec, ones) == NO:
        return ClaimResult("witnesses", "fail", "all-ones word inadmissible")
    if set(code.apply(ones)) != {1}:
        return ClaimResult("witnesses", "fail", "image of 1^depth is not all ones")
    bprefix = tuple(spec.upper_digit(i) for i in range(1, depth + 1))
    if None in bprefix:
        return ClaimResult("witnesses", "inconclusive", "bound prefix too short")
    if set(code.apply(bprefix)) != {2}:
        return ClaimResult("witnesses", "fail",
                           "image of the bound prefix is not all twos")
    for k in range(1, depth // 2 + 1):
        target = (1,) * k + (2,) * (depth - m + 1 - k)
        witness = _preimage_of_staircase(code, spec, k, depth)
        if witness is None or code.apply(witness) != target:
            return ClaimResult("witnesses", "fail",
                               f"no preimage found for 1^{k} 2...", None)
    return ClaimResult("witnesses", "pass",
                       f"explicit preimages found for every 1^k tail, k <= {depth // 2}")


def _preimage_of_staircase(code: SlidingBlockCode, spec: ShiftSpec, k: int,
                           depth: int) -> Optional[Word]:
    """A depth-long admissible word mapping to 1^k 2^(rest)."""
    m = code.window
    if code.kind == "ones_window":
        # 1^(k+m-1) then the bound prefix: the first k windows are all ones,
        # every later window contains a non-one bound digit.
        head = (1,) * (k + m - 1)
        tail_len = depth - len(head)
        if tail_len < 1:
            return None
        tail = tuple(spec.upper_digit(i) for i in range(1, tail_len + 1))
        if None in tail:
            return None
        cand = head + tail
    else:
        # 1^(k-1), a middle digit keeping every shift above the lower bound,
        # then the bound tail; the right middle digit is found by trying.
        up = spec.upper
        tail_len = depth - k
        if tail_len < 1:
            return None
        target = (1,) * k + (2,) * (depth - m + 1 - k)
        for mid in range(2, spec.alphabet + 1):
            cand = ((1,) * (k - 1) + (mid,)
                    + tuple(up.digit(i) for i in range(1, tail_len + 1)))
            if is_admissible(spec, cand) == YES and code.apply(cand) == target:
                return cand
        return None
    return cand if is_admissible(spec, cand) == YES else None
