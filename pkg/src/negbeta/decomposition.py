"""Language decomposition into low-return and high-excursion words,
tail-entropy profiles, path-count bounds, and periodic gluing.

For a cutoff L, a word belongs to the good set G when its walk from V_0
ends at a vertex below L; the complement piece C collects b_L followed by
the labels of a path from V_L that never revisits vertices below L.  Every
admissible word splits as (good)(excursion).  Gluing concatenates good
words with equal-length connectors so that the result repeats into an
admissible periodic point; connectors come from shortest paths back to
V_0 padded with ones, or from a verified bounded search when V_0 is
unreachable (eventually periodic bound sequences).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .errors import (GlueFailed, NoLFound, NoSelfLoop, NotInGM,
                     TruncationInsufficient)
from .graph import GraphSlice, gap_scan, shortest_path_to_v0, walk
from .language import ShiftSpec, is_admissible, periodic_block_ok
from .order import Word, word


def c_words(graph: GraphSlice, L: int, n: int) -> list[Word]:
    """The excursion words of length n for cutoff L: b_L followed by the
    labels of a path from V_L of length n-1 avoiding V_0 .. V_{L-1}."""
    _check_c_args(graph, L, n)
    first = graph.spine_label(L - 1)  # b_L
    out: list[Word] = []

    def rec(v: int, acc: list[int]):
        if len(acc) == n - 1:
            out.append((first, *acc))
            return
        for label in sorted(graph.out[v]):
            dst = graph.out[v][label]
            if dst >= L:
                acc.append(label)
                rec(dst, acc)
                acc.pop()

    rec(L, [])
    return out


def c_count(graph: GraphSlice, L: int, n: int) -> int:
    _check_c_args(graph, L, n)
    vec = {L: 1}
    for _ in range(n - 1):
        nxt: dict[int, int] = {}
        for v, c in vec.items():
            for dst in graph.out[v].values():
                if dst >= L:
                    nxt[dst] = nxt.get(dst, 0) + c
        vec = nxt
    return sum(vec.values())


def _check_c_args(graph: GraphSlice, L: int, n: int) -> None:
    if not 1 <= L <= graph.K:
        raise ValueError(f"L must be within 1..{graph.K}")
    if n < 1:
        raise ValueError("n >= 1 required")
    if L + n - 1 > graph.K:
        raise TruncationInsufficient(
            f"excursions of length {n} from V_{L} can leave the K={graph.K} slice")


@dataclass
class CProfile:
    """Per-(L, n) excursion counts and growth estimates, with the selected
    cutoff whose tail estimates stay under the target."""

    epsilon: float
    nmax: int
    rows: list[dict]           # L, n, count, estimate
    selected_L: Optional[int]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["L", "n", "count", "estimate"])
        for r in self.rows:
            writer.writerow([r["L"], r["n"], r["count"], f"{r['estimate']:.6f}"])
        return buf.getvalue()


def c_entropy_profile(graph: GraphSlice, Lmax: int, nmax: int,
                      epsilon: float) -> CProfile:
    """Tabulate (1/n) log #C_n for L = 1..Lmax and pick the least L whose
    estimates for n in the upper half of the range all stay <= epsilon."""
    rows = []
    selected = None
    tail_start = max(1, (nmax + 1) // 2)
    for L in range(1, Lmax + 1):
        tail_ok = True
        for n in range(1, nmax + 1):
            cnt = c_count(graph, L, n)
            est = math.log(cnt) / n if cnt >= 1 else 0.0
            rows.append({"L": L, "n": n, "count": cnt, "estimate": est})
            if n >= tail_start and est > epsilon:
                tail_ok = False
        if tail_ok and selected is None:
            selected = L
    return CProfile(epsilon, nmax, rows, selected)


def require_profile_cutoff(profile: CProfile) -> int:
    if profile.selected_L is None:
        raise NoLFound(f"no cutoff with tail estimates <= {profile.epsilon}")
    return profile.selected_L


@dataclass
class CountMatrix:
    """Path counts between high vertices: index 1 is V_{L-1}, and edges
    into V_{L-1} are removed, so row-1 sums count the excursion words."""

    L: int
    size: int
    adjacency: list[list[int]]  # 0/1 entries

    @staticmethod
    def from_graph(graph: GraphSlice, L: int) -> "CountMatrix":
        if not 1 <= L <= graph.K:
            raise ValueError(f"L must be within 1..{graph.K}")
        size = graph.K - L + 2     # W_1 .. W_size  <->  V_{L-1} .. V_K
        adj = [[0] * (size + 1) for _ in range(size + 1)]
        for src, dst, _label in graph.edges:
            if src >= L - 1 and dst >= L:
                adj[src - L + 2][dst - L + 2] = 1
        return CountMatrix(L, size, adj)

    def row_sums(self, nmax: int) -> list[list[int]]:
        """a_i^(n) for n = 1..nmax as exact integers; a_i^(n) counts the
        length-n paths out of W_i inside the high subgraph."""
        sums = []
        vecs = [None] + [dict([(i, 1)]) for i in range(1, self.size + 1)]
        for _n in range(1, nmax + 1):
            row = [0] * (self.size + 1)
            nxt = [None] * (self.size + 1)
            for i in range(1, self.size + 1):
                cur = vecs[i]
                new: dict[int, int] = {}
                for v, c in cur.items():
                    arow = self.adjacency[v]
                    for j in range(1, self.size + 1):
                        if arow[j]:
                            new[j] = new.get(j, 0) + c
                nxt[i] = new
                row[i] = sum(new.values())
            vecs = nxt
            sums.append(row)
        return sums


@dataclass
class BoundReport:
    """Computed counting bounds a_1^(qN+1) <= b^(2q-3) N^(2q-3)."""

    L: int
    N: int
    alphabet: int
    window: int
    far_edge_certified: bool
    monotone_ok: bool
    rows: list[dict]     # q, n, a1, bound, ok, margin
    epsilon_for_N: float

    @property
    def all_ok(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "L": self.L, "N": self.N, "alphabet": self.alphabet,
            "window": self.window,
            "far_edge_certified": self.far_edge_certified,
            "monotone_ok": self.monotone_ok,
            "epsilon_for_N": self.epsilon_for_N,
            "rows": self.rows, "all_ok": self.all_ok,
        }


def bound_check(graph: GraphSlice, L: int, N: int, qmax: int) -> BoundReport:
    """Verify the excursion-count bounds on computed exact counts.

    Checks a_1^(2N+1) <= bN, and a_1^(qN+1) <= b^(2q-3) N^(2q-3) for
    q <= qmax, as far as the slice window allows.  Violations are reported,
    not raised: on a correctly built graph they would indicate a bug.
    """
    b = graph.alphabet
    cm = CountMatrix.from_graph(graph, L)
    window = graph.K - (L - 1)
    sums = cm.row_sums(window)
    scan = gap_scan(graph, N)
    far_ok = scan is not None and scan <= L
    monotone_ok = True
    for n in range(1, window):
        # a_i^(n) <= a_i^(n+1) is only meaningful while both windows fit
        for i in range(1, cm.size + 1):
            if (L - 1) + (i - 1) + (n + 1) <= graph.K:
                if sums[n - 1][i] > sums[n][i]:
                    monotone_ok = False
    rows = []
    for q in range(2, qmax + 1):
        n = q * N + 1
        if n > window:
            break
        a1 = sums[n - 1][1]
        bound = b ** (2 * q - 3) * N ** (2 * q - 3)
        rows.append({"q": q, "n": n, "a1": a1, "bound": bound,
                     "ok": a1 <= bound, "margin": bound - a1})
    eps = (2 / N) * (math.log(b) + math.log(N))
    return BoundReport(L, N, b, window, far_ok, monotone_ok, rows, eps)


def split(graph: GraphSlice, L: int, w) -> tuple[Word, Word]:
    """Split an admissible word as (good)(excursion): cut after the last
    walk position at a vertex below L."""
    w = word(w)
    if not 1 <= L <= graph.K:
        raise ValueError(f"L must be within 1..{graph.K}")
    vseq = walk(graph, w)
    if vseq is None:
        raise ValueError(f"{w} is not admissible")
    last_low = max(j for j, v in enumerate(vseq) if v <= L - 1)
    return w[:last_low], w[last_low:]


def t_gap(graph: GraphSlice, M: int, L: int) -> int:
    """Largest shortest-path length back to V_0 over vertices 0..M+L-1."""
    if M < 0 or L < 1:
        raise ValueError("M >= 0 and L >= 1 required")
    if M + L - 1 > graph.K:
        raise TruncationInsufficient("M + L - 1 exceeds the slice")
    best = 0
    for i in range(M + L):
        dist, _ = shortest_path_to_v0(graph, i)
        best = max(best, dist)
    return best


@dataclass
class GlueResult:
    words: list[Word]
    connectors: list[Word]
    gap: int
    x: Word              # w^1 v^1 ... v^(m-1) w^m
    block: Word          # x followed by the final connector
    least_period: int
    route: str           # "paths" (shortest paths + one-padding) | "search"
    verified: str        # "exact" | f"horizon:{H}"

    def to_json(self) -> dict:
        return {
            "words": ["".join(map(str, w)) for w in self.words],
            "connectors": ["".join(map(str, v)) for v in self.connectors],
            "gap": self.gap,
            "x": "".join(map(str, self.x)),
            "block": "".join(map(str, self.block)),
            "least_period": self.least_period,
            "route": self.route,
            "verified": self.verified,
        }


def _least_period(w: Word) -> int:
    n = len(w)
    for r in range(1, n + 1):
        if n % r == 0 and w == w[:r] * (n // r):
            return r
    return n


def _assemble(words: list[Word], connectors: list[Word]) -> tuple[Word, Word]:
    x: tuple[int, ...] = ()
    for i, w in enumerate(words):
        x += w
        if i < len(words) - 1:
            x += connectors[i]
    block = x + connectors[-1]
    return x, block


def glue(graph: GraphSlice, spec: ShiftSpec, L: int, M: int, words_in,
         t: Optional[int] = None, t_cap: int = 12,
         search_limit: int = 200000) -> GlueResult:
    """Glue good words into an admissible periodic block.

    Each input word must walk from V_0 to a vertex below M + L.  The
    connectors all have one common length (the gap): first choice is the
    shortest-path-to-V_0 label word padded with ones to the uniform gap
    value; when V_0 is unreachable inside the slice the gap and connectors
    are searched (smallest gap first, lexicographic connectors), and every
    candidate block is verified exactly before being returned.
    """
    words = [word(w) for w in words_in]
    if not words:
        raise ValueError("nothing to glue")
    ends = []
    for w in words:
        vseq = walk(graph, w)
        if vseq is None:
            raise NotInGM(f"{w} is not admissible")
        if vseq[-1] > M + L - 1:
            raise NotInGM(f"{w} ends at V_{vseq[-1]} > {M + L - 1}")
        ends.append(vseq[-1])
    if graph.out[0].get(1) != 0:
        raise NoSelfLoop("gluing pads with ones; needs the 1-loop at V_0")

    verified = "exact" if not spec.prefix_mode else f"horizon:{len(spec.upper)}"
    if t is None:
        try:
            gap = t_gap(graph, M, L)
            connectors = []
            for end in ends:
                dist, labels = shortest_path_to_v0(graph, end)
                connectors.append(labels + (1,) * (gap - dist))
            x, block = _assemble(words, connectors)
            if periodic_block_ok(spec, block):
                return GlueResult(words, connectors, gap, x, block,
                                  _least_period(block), "paths", verified)
        except TruncationInsufficient:
            pass

    gaps = [t] if t is not None else list(range(t_cap + 1))
    budget = [search_limit]
    for gap in gaps:
        got = _search_connectors(graph, spec, words, gap, budget)
        if got is not None:
            connectors = got
            x, block = _assemble(words, connectors)
            return GlueResult(words, connectors, gap, x, block,
                              _least_period(block), "search", verified)
    raise GlueFailed(f"no admissible glue found with gap <= {gaps[-1]}")


def _search_connectors(graph: GraphSlice, spec: ShiftSpec, words: list[Word],
                       gap: int, budget: list[int]) -> Optional[list[Word]]:
    m = len(words)
    digits = range(1, spec.alphabet + 1)
    candidates = [()] if gap == 0 else list(product(digits, repeat=gap))

    def viable(i: int, v: Word) -> bool:
        nxt = words[(i + 1) % m]
        return is_admissible(spec, words[i] + v + nxt) != "no"

    pruned = []
    for i in range(m):
        slot = [v for v in candidates if viable(i, v)]
        if not slot:
            return None
        pruned.append(slot)

    chosen: list[Word] = []

    def rec(i: int) -> bool:
        if budget[0] <= 0:
            return False
        if i == m:
            budget[0] -= 1
            _x, block = _assemble(words, chosen)
            return periodic_block_ok(spec, block)
        for v in pruned[i]:
            chosen.append(v)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    return list(chosen) if rec(0) else None
