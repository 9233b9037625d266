"""Truncated labelled-graph presentation of a one-sided bounded shift.

Vertices V_0, V_1, ... index the length of the longest suffix of the word
read so far that is a prefix of the bound sequence b.  Each vertex V_i has
the spine edge V_i -> V_{i+1} labelled b_{i+1}; the remaining out-edges
carry digits on the admissible side of b_{i+1} (above it when i is odd,
below when i is even) and drop back to the suffix-match state of the
extended word.  Labelled paths from V_0 are exactly the admissible words.

The slice stores vertices 0..K only.  Operations never extrapolate: walks
and counts that would leave the slice raise TruncationInsufficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (PrefixTooShort, TruncationInsufficient,
                     TwoSidedUnsupported)
from .language import ShiftSpec, follower_words, is_admissible
from .order import (BoundSeq, EvPeriodicSeq, Word, bound_digit, bound_len,
                    word)


def _failure_table(digits: list[int]) -> list[int]:
    n = len(digits)
    fail = [0] * (n + 1)
    k = 0
    for i in range(2, n + 1):
        while k > 0 and digits[k] != digits[i - 1]:
            k = fail[k]
        if digits[k] == digits[i - 1]:
            k += 1
        fail[i] = k
    return fail


class _Matcher:
    """Incremental suffix-prefix matching against a fixed pattern prefix."""

    def __init__(self, digits: list[int]):
        self.digits = digits
        self.fail = _failure_table(digits)

    def transition(self, state: int, a: int) -> int:
        if state >= len(self.digits):
            raise PrefixTooShort(
                f"match length {state} reaches the end of the known pattern")
        d = self.digits
        while state > 0 and d[state] != a:
            state = self.fail[state]
        return state + 1 if d[state] == a else 0

    def borders(self, state: int) -> Iterator[int]:
        """All positive suffix-prefix match lengths compatible with a full
        match of length `state` (the failure chain)."""
        while state > 0:
            yield state
            state = self.fail[state]


def k_of(bprefix: BoundSeq, w) -> int:
    """Length of the longest suffix of w equal to a prefix of the bound
    sequence; 0 when there is none.  Amortized constant per symbol.

    A finite bound prefix is accepted as long as no full-prefix match makes
    the answer depend on unknown digits; otherwise PrefixTooShort.
    """
    w = word(w)
    if isinstance(bprefix, EvPeriodicSeq):
        digits = [bprefix.digit(i) for i in range(1, len(w) + 2)]
    else:
        digits = list(word(bprefix))
    m = _Matcher(digits)
    state = 0
    for a in w:
        state = m.transition(state, a)
    if state == len(digits) and state < len(w):
        raise PrefixTooShort(
            f"suffix matches the entire {state}-digit prefix; longer matches unknown")
    return state


@dataclass(frozen=True)
class GraphSlice:
    """Vertices 0..K of the presentation with all in-slice edges."""

    K: int
    spine: Word            # b_1 .. b_{K+1}: spine[i] labels V_i -> V_{i+1}
    out: tuple             # per vertex: dict label -> target (spine from V_K omitted)
    complete: tuple        # per vertex: all out-edges present in the slice
    alphabet: int

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        es = []
        for src, table in enumerate(self.out):
            for label, dst in table.items():
                es.append((src, dst, label))
        es.sort()
        return es

    def spine_label(self, i: int) -> int:
        return self.spine[i]

    def to_dot(self, header: str = "") -> str:
        lines = ["digraph slice {"]
        if header:
            lines.insert(0, f"// {header}")
        lines.append("  rankdir=LR;")
        for i in range(self.K + 1):
            shape = "circle" if self.complete[i] else "doublecircle"
            lines.append(f'  V{i} [shape={shape}];')
        for src, dst, label in self.edges:
            lines.append(f'  V{src} -> V{dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "alphabet": self.alphabet,
            "spine_labels": list(self.spine),
            "complete": [bool(c) for c in self.complete],
            "edges": [{"src": s, "dst": d, "label": l} for s, d, l in self.edges],
        }


def build_graph(b: BoundSeq, K: int) -> GraphSlice:
    """Build the slice V_0..V_K from a bound sequence known to at least
    K + 2 digits, so every in-slice edge target is determined."""
    if K < 0:
        raise ValueError("K >= 0 required")
    avail = bound_len(b)
    if avail < K + 2:
        raise PrefixTooShort(f"need {K + 2} digits, have {avail}")
    digits = [bound_digit(b, i) for i in range(1, K + 2)]
    m = _Matcher(digits)
    alphabet = digits[0]
    out: list[dict[int, int]] = [dict() for _ in range(K + 1)]
    for i in range(K + 1):
        nxt = digits[i]  # b_{i+1}
        if i < K:
            out[i][nxt] = i + 1
        if i % 2 == 1:
            candidates = range(nxt + 1, alphabet + 1)
        else:
            candidates = range(1, nxt)
        for a in candidates:
            # b_1..b_i followed by a must stay admissible: test every live
            # suffix tie (the border chain of i) against the bound digit.
            ok = True
            for ell in (0, *m.borders(i)):
                p = ell + 1
                d = digits[p - 1]
                if (a > d) if p % 2 == 1 else (a < d):
                    ok = False
                    break
            if not ok:
                continue
            j = m.transition(i, a)
            if j > i:
                raise AssertionError("non-spine edge may not climb")
            out[i][a] = j
    complete = tuple(i < K for i in range(K + 1))
    return GraphSlice(K, tuple(digits), tuple({k: v for k, v in sorted(t.items())}
                                              for t in out), complete, alphabet)


def build_graph_for_spec(spec: ShiftSpec, K: int) -> GraphSlice:
    if spec.two_sided:
        raise TwoSidedUnsupported(
            "the graph presentation covers one-sided shifts only")
    return build_graph(spec.upper, K)


def walk(graph: GraphSlice, w, start: int = 0) -> Optional[list[int]]:
    """Vertex sequence of the unique labelled path reading w from `start`,
    or None when some digit has no edge (the word is rejected)."""
    w = word(w)
    cur = start
    seq = [cur]
    for a in w:
        table = graph.out[cur]
        if a in table:
            cur = table[a]
        elif not graph.complete[cur] and a == graph.spine_label(cur):
            raise TruncationInsufficient(
                f"walk leaves the slice at V_{cur} on digit {a}")
        else:
            return None
        seq.append(cur)
    return seq


def path_count(graph: GraphSlice, n: int, start: int = 0) -> int:
    """Number of length-n labelled paths from `start` (exact, big integers)."""
    if n < 0:
        raise ValueError(n)
    if start + n > graph.K:
        raise TruncationInsufficient(
            f"length-{n} paths from V_{start} can leave the K={graph.K} slice")
    vec = {start: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for v, c in vec.items():
            for dst in graph.out[v].values():
                nxt[dst] = nxt.get(dst, 0) + c
        vec = nxt
    return sum(vec.values())


def path_words(graph: GraphSlice, n: int, start: int = 0) -> Iterator[Word]:
    """All length-n labelled path words from `start`, lexicographically."""
    if start + n > graph.K:
        raise TruncationInsufficient(
            f"length-{n} paths from V_{start} can leave the K={graph.K} slice")

    def rec(v: int, depth: int, acc: list[int]) -> Iterator[Word]:
        if depth == n:
            yield tuple(acc)
            return
        for label in sorted(graph.out[v]):
            acc.append(label)
            yield from rec(graph.out[v][label], depth + 1, acc)
            acc.pop()

    yield from rec(start, 0, [])


def shortest_path_to_v0(graph: GraphSlice, i: int) -> tuple[int, Word]:
    """Shortest in-slice path from V_i to V_0 and its lexicographically
    least label word; raises TruncationInsufficient when V_0 is unreachable
    inside the slice."""
    if not 0 <= i <= graph.K:
        raise ValueError(i)
    dist = _dist_to_v0(graph)
    if dist[i] is None:
        raise TruncationInsufficient(
            f"no path from V_{i} to V_0 inside the K={graph.K} slice")
    labels: list[int] = []
    cur = i
    while cur != 0:
        for label in sorted(graph.out[cur]):
            dst = graph.out[cur][label]
            if dist[dst] is not None and dist[dst] == dist[cur] - 1:
                labels.append(label)
                cur = dst
                break
        else:
            raise AssertionError("distance table inconsistent")
    return dist[i], tuple(labels)


def _dist_to_v0(graph: GraphSlice) -> list[Optional[int]]:
    radj: list[list[int]] = [[] for _ in range(graph.K + 1)]
    for src, dst, _label in graph.edges:
        if src != dst or dst == 0:
            radj[dst].append(src)
    dist: list[Optional[int]] = [None] * (graph.K + 1)
    dist[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for u in radj[v]:
                if dist[u] is None:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def gap_scan(graph: GraphSlice, N: int) -> Optional[int]:
    """Least L with no out-edge from any V_k, L <= k <= K, dropping by at
    most N (self-loops count as drop 0).  None when V_K itself violates.

    The answer is certified only within the slice; higher vertices are not
    inspected.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    violators = [src for src, dst, _ in graph.edges if 0 <= src - dst <= N]
    if not violators:
        return 0
    L = max(violators) + 1
    return L if L <= graph.K else None


@dataclass(frozen=True)
class FollowerReport:
    w: Word
    w2: Word
    k: int
    depth: int
    equal: bool
    counterexample: Optional[Word]
    sizes: tuple[int, int]


def follower_equiv_check(spec: ShiftSpec, w, w2, depth: int) -> FollowerReport:
    """Brute-force check that two words with the same suffix-match state
    admit exactly the same depth-bounded continuations."""
    w, w2 = word(w), word(w2)
    if is_admissible(spec, w) != "yes" or is_admissible(spec, w2) != "yes":
        raise ValueError("both words must be admissible")
    kw = k_of(spec.upper, w)
    kw2 = k_of(spec.upper, w2)
    if kw != kw2:
        raise ValueError(f"suffix-match states differ: {kw} vs {kw2}")
    f1 = set(follower_words(spec, w, depth))
    f2 = set(follower_words(spec, w2, depth))
    if f1 == f2:
        return FollowerReport(w, w2, kw, depth, True, None, (len(f1), len(f2)))
    diff = sorted(f1.symmetric_difference(f2))[0]
    return FollowerReport(w, w2, kw, depth, False, diff, (len(f1), len(f2)))


def parse_bound_file(text: str) -> BoundSeq:
    """Parse a bound sequence file: digits separated by whitespace/commas,
    with an optional "PRE | PER" split marking an eventually periodic tail."""
    cleaned = text.strip()
    if "|" in cleaned:
        pre_part, per_part = cleaned.split("|", 1)
        pre = _parse_digits(pre_part)
        per = _parse_digits(per_part)
        if not per:
            raise ValueError("empty period")
        return EvPeriodicSeq.make(pre, per)
    digits = _parse_digits(cleaned)
    if not digits:
        raise ValueError("no digits found")
    return tuple(digits)


def _parse_digits(part: str) -> tuple[int, ...]:
    tokens = part.replace(",", " ").split()
    out = []
    for tok in tokens:
        if tok.isdigit() and len(tok) > 1 and all(c in "123456789" for c in tok):
            # a run like "3232133" is a digit string
            out.extend(int(c) for c in tok)
        else:
            out.append(int(tok))
    return tuple(out)
