import random

import pytest

from negbeta import oracle
from negbeta.errors import (PrefixTooShort, TruncationInsufficient,
                            TwoSidedUnsupported)
from negbeta.graph import (build_graph, build_graph_for_spec,
                           follower_equiv_check, gap_scan, k_of,
                           parse_bound_file, path_count, path_words,
                           shortest_path_to_v0, walk)
from negbeta.language import ShiftSpec, enumerate_words, iter_words
from negbeta.numeric import BetaValue
from negbeta.order import EvPeriodicSeq, word

GOLDEN = ShiftSpec.golden()
FIG = ShiftSpec.make(EvPeriodicSeq.make((), word("3232133")))
GS = build_graph_for_spec(GOLDEN, 20)
FS = build_graph_for_spec(FIG, 16)


def test_k_of_examples():
    b = word("3232133")
    assert k_of(b, word("3232")) == 4
    assert k_of(b, word("321")) == 0
    assert k_of(b, ()) == 0


def test_k_of_prefix_guard():
    # the whole prefix matches and the word is longer: the answer would
    # depend on unknown digits
    with pytest.raises(PrefixTooShort):
        k_of(word("32"), word("132"))
    assert k_of(word("32"), word("32")) == 2    # exact: k cannot exceed |w|


def test_k_of_matches_naive():
    rng = random.Random(20260809)
    for b in (GOLDEN.upper, FIG.upper):
        bpfx = tuple(b.digit(i) for i in range(1, 40))
        for _ in range(2000):
            n = rng.randint(1, 30)
            w = tuple(rng.randint(1, 3) for _ in range(n))
            assert k_of(b, w) == oracle.naive_k(bpfx, w)


def test_golden_graph_shape():
    gs = build_graph(GOLDEN.upper, 3)
    assert gs.edges == [(0, 0, 1), (0, 1, 2), (1, 1, 2), (1, 2, 1), (2, 3, 1),
                        (3, 1, 2)]
    assert gs.spine == (2, 1, 1, 1)
    assert gs.complete == (True, True, True, False)


def test_figure_slice_shape():
    gs = build_graph(word("3232133"), 5)
    assert gs.edges == [(0, 0, 1), (0, 0, 2), (0, 1, 3),
                        (1, 1, 3), (1, 2, 2),
                        (2, 0, 1), (2, 0, 2), (2, 3, 3),
                        (3, 1, 3), (3, 4, 2),
                        (4, 5, 1)]
    # the periodic extension agrees on the slice the prefix determines
    ps = build_graph(FIG.upper, 5)
    assert ps.edges == gs.edges


def test_build_guards():
    with pytest.raises(PrefixTooShort):
        build_graph(word("3232133"), 6)
    b2 = ShiftSpec.from_beta(BetaValue.from_rational(2))
    with pytest.raises(TwoSidedUnsupported):
        build_graph_for_spec(b2, 4)


def test_edge_parity_invariant():
    for gs in (GS, FS):
        for src, dst, label in gs.edges:
            if dst == src + 1:
                assert label == gs.spine_label(src)
            elif src % 2 == 1:
                assert label >= gs.spine_label(src) + 1
            else:
                assert label <= gs.spine_label(src) - 1


def test_walk_examples():
    assert walk(GS, word("21")) == [0, 1, 2]
    assert walk(GS, word("22")) == [0, 1, 1]
    assert walk(GS, word("12")) == [0, 0, 1]
    assert walk(GS, word("212")) is None
    small = build_graph(GOLDEN.upper, 2)
    with pytest.raises(TruncationInsufficient):
        walk(small, word("2111"))


def test_walk_final_vertex_is_match_length():
    for spec, gs in ((GOLDEN, GS), (FIG, FS)):
        for n in range(1, 11):
            for w in iter_words(spec, n):
                assert walk(gs, w)[-1] == k_of(spec.upper, w)


def test_path_words_match_language():
    for spec, gs, nmax in ((GOLDEN, GS, 12), (FIG, FS, 10)):
        for n in range(1, nmax + 1):
            assert list(path_words(gs, n)) == enumerate_words(spec, n)


def test_path_words_match_unpruned_oracle():
    small = build_graph(GOLDEN.upper, 7)
    for n in range(1, 7):
        assert set(path_words(small, n)) == oracle.naive_path_words(small, n)


def test_path_count():
    assert path_count(GS, 0) == 1
    assert path_count(GS, 1) == 2
    assert path_count(GS, 2) == 4
    assert [path_count(GS, n) for n in range(1, 11)] == \
        [len(enumerate_words(GOLDEN, n)) for n in range(1, 11)]
    with pytest.raises(TruncationInsufficient):
        path_count(GS, 21)


def test_shortest_paths():
    assert shortest_path_to_v0(FS, 0) == (0, ())
    assert shortest_path_to_v0(FS, 2) == (1, (1,))
    dist, labels = shortest_path_to_v0(FS, 5)
    assert dist == len(labels)
    assert walk(FS, labels, start=5)[-1] == 0
    # no vertex above 0 reaches the root in the golden graph
    with pytest.raises(TruncationInsufficient):
        shortest_path_to_v0(GS, 1)


def test_gap_scan():
    assert gap_scan(GS, 1) == 2
    assert gap_scan(GS, 4) == 6
    assert gap_scan(FS, 1) == 2
    ones = build_graph(EvPeriodicSeq.constant(1), 6)   # pure spine
    assert gap_scan(ones, 3) == 0
    with pytest.raises(ValueError):
        gap_scan(GS, 0)


def test_follower_equivalence():
    r = follower_equiv_check(GOLDEN, word("1"), word("11"), 6)
    assert r.equal and r.k == 0
    r = follower_equiv_check(GOLDEN, word("2"), word("12"), 6)
    assert r.equal and r.k == 1
    r = follower_equiv_check(FIG, word("32"), word("3232132"), 5)
    assert r.equal and r.k == 2
    same = follower_equiv_check(FIG, word("321"), word("321"), 4)
    assert same.equal
    with pytest.raises(ValueError):
        follower_equiv_check(GOLDEN, word("2"), word("1"), 3)  # states differ


def test_follower_property_across_state_classes():
    # words sharing a suffix-match state share depth-bounded futures
    from collections import defaultdict
    for spec, nmax, depth in ((GOLDEN, 8, 6), (FIG, 7, 5)):
        by_state = defaultdict(list)
        for n in range(1, nmax + 1):
            for w in iter_words(spec, n):
                by_state[k_of(spec.upper, w)].append(w)
        from negbeta.language import follower_words
        for state, members in by_state.items():
            if len(members) < 2:
                continue
            ref = set(follower_words(spec, members[0], depth))
            for other in members[1:3]:
                assert set(follower_words(spec, other, depth)) == ref


def test_exports_and_bound_file():
    dot = GS.to_dot()
    assert dot.startswith("digraph") or dot.startswith("//")
    assert 'V0 -> V1 [label="2"];' in dot
    js = GS.to_json()
    assert js["K"] == 20 and js["alphabet"] == 2
    assert parse_bound_file("3232133") == word("3232133")
    assert parse_bound_file("3 2 3, 2 1 3 3") == word("3232133")
    assert parse_bound_file("2 | 1") == EvPeriodicSeq.make((2,), (1,))
    assert parse_bound_file("| 3 2 3 2 1 3 3") == EvPeriodicSeq.make((), word("3232133"))
