from fractions import Fraction as F

import pytest

from negbeta.decomposition import (CountMatrix, bound_check, c_count,
                                   c_entropy_profile, c_words, glue,
                                   require_profile_cutoff, split, t_gap)
from negbeta.errors import (GlueFailed, NoLFound, NoSelfLoop, NotInGM,
                            TruncationInsufficient)
from negbeta.graph import build_graph_for_spec, walk
from negbeta.language import (ShiftSpec, is_admissible, iter_words,
                              periodic_block_ok)
from negbeta.numeric import BetaValue
from negbeta.order import EvPeriodicSeq, alt_cmp_seq, word

GOLDEN = ShiftSpec.golden()
GS = build_graph_for_spec(GOLDEN, 24)
FIG = ShiftSpec.make(EvPeriodicSeq.make((), word("3232133")))
FS = build_graph_for_spec(FIG, 16)
BRANCHY = ShiftSpec.make(EvPeriodicSeq.make((), word("3123111312")))
BS = build_graph_for_spec(BRANCHY, 30)


def test_c_words_examples():
    assert c_words(GS, 1, 1) == [word("2")]
    assert [c_count(GS, 1, n) for n in range(1, 10)] == [1, 2, 3, 5, 8, 13, 21, 34, 55]
    # above the cutoff the golden graph is a bare spine
    assert all(c_count(GS, 2, n) == 1 for n in range(1, 12))
    assert c_words(GS, 2, 3) == [word("111")]
    with pytest.raises(TruncationInsufficient):
        c_count(GS, 3, 23)


def test_c_words_are_excursions():
    for L in (1, 2, 3):
        for n in range(1, 7):
            for w in c_words(FS, L, n):
                assert w[0] == FS.spine_label(L - 1)
                assert is_admissible(FIG, w) != "no"
                vseq = walk(FS, w, start=L - 1)
                assert vseq is not None and all(v >= L for v in vseq[1:])


def test_c_count_matches_count_matrix():
    for gs, Ls in ((GS, (1, 2, 3)), (FS, (1, 2, 3)), (BS, (2, 6))):
        for L in Ls:
            cm = CountMatrix.from_graph(gs, L)
            window = gs.K - (L - 1)
            sums = cm.row_sums(window)
            for n in range(1, window + 1):
                assert sums[n - 1][1] == c_count(gs, L, n)


def test_entropy_profile_selects_cutoff():
    prof = c_entropy_profile(GS, 8, 12, 0.3)
    assert prof.selected_L == 2
    assert require_profile_cutoff(prof) == 2
    tail = [r for r in prof.rows if r["L"] == 2 and r["n"] >= 6]
    assert all(r["estimate"] <= 0.3 for r in tail)
    # level 1 keeps full golden growth, far above the target
    lvl1 = [r for r in prof.rows if r["L"] == 1 and r["n"] == 12]
    assert lvl1[0]["estimate"] > 0.4
    csv_text = prof.to_csv()
    assert csv_text.splitlines()[0] == "L,n,count,estimate"


def test_entropy_profile_no_cutoff():
    prof = c_entropy_profile(GS, 1, 12, 0.05)
    assert prof.selected_L is None
    with pytest.raises(NoLFound):
        require_profile_cutoff(prof)


def test_bound_check_branching_fixture():
    report = bound_check(BS, 6, 4, 3)
    assert report.far_edge_certified
    assert report.monotone_ok
    assert report.all_ok
    rows = {r["q"]: r for r in report.rows}
    assert rows[2]["n"] == 9 and rows[2]["a1"] == 2 and rows[2]["bound"] == 12
    assert rows[3]["n"] == 13 and rows[3]["a1"] == 2 and rows[3]["bound"] == 1728
    # the high region genuinely branches: counts exceed the bare spine
    cm = CountMatrix.from_graph(BS, 6)
    assert any(row[1] >= 2 for row in cm.row_sums(BS.K - 5))


def test_bound_check_spine_only_region():
    report = bound_check(GS, 2, 4, 3)
    assert report.all_ok
    assert all(r["a1"] == 1 for r in report.rows)


def test_split_examples():
    assert split(GS, 1, word("21111")) == ((), word("21111"))
    assert split(GS, 2, word("21111")) == (word("2"), word("1111"))
    assert split(GS, 1, word("11")) == (word("11"), ())
    # a bound prefix splits right before the cutoff spine digit
    assert split(FS, 3, word("323213")) == (word("32"), word("3213"))
    with pytest.raises(ValueError):
        split(GS, 2, word("212"))


def test_split_soundness():
    for spec, gs, L in ((GOLDEN, GS, 2), (FIG, FS, 2), (FIG, FS, 3)):
        for n in range(1, 12):
            for w in iter_words(spec, n):
                u, v = split(gs, L, w)
                assert u + v == w
                assert walk(gs, u)[-1] <= L - 1
                if v:
                    assert v[0] == gs.spine_label(L - 1)
                    tail = walk(gs, v, start=L - 1)
                    assert all(x >= L for x in tail[1:])


def test_t_gap():
    assert t_gap(FS, 4, 2) == 4
    assert t_gap(FS, 0, 1) == 0
    with pytest.raises(TruncationInsufficient):
        t_gap(GS, 4, 2)      # the golden graph never returns to the root
    with pytest.raises(TruncationInsufficient):
        t_gap(FS, 20, 2)


def test_glue_golden_fallback_search():
    res = glue(GS, GOLDEN, 2, 4, ["2", "2"])
    assert res.route == "search" and res.gap == 0
    assert res.block == word("22")
    assert periodic_block_ok(GOLDEN, res.block)
    res = glue(GS, GOLDEN, 2, 4, ["2", "21", "112"])
    assert len(set(len(v) for v in res.connectors)) == 1
    assert len(res.block) == len(res.x) + res.gap
    assert res.block[: len(res.words[0])] == res.words[0]
    upper = GOLDEN.upper
    for i in range(len(res.block)):
        rot = res.block[i:] + res.block[:i]
        assert alt_cmp_seq(EvPeriodicSeq.make((), rot), upper) <= 0


def test_glue_all_ones():
    res = glue(GS, GOLDEN, 2, 4, ["1", "1"])
    assert set(res.block) == {1}
    assert periodic_block_ok(GOLDEN, res.block)


def test_glue_paths_route():
    spec52 = ShiftSpec.from_beta(BetaValue.from_rational(F(5, 2)), prefix_len=60)
    gs52 = build_graph_for_spec(spec52, 24)
    res = glue(gs52, spec52, 2, 4, ["3", "32"])
    assert res.route == "paths"
    assert res.gap == t_gap(gs52, 4, 2) == 2
    assert res.verified.startswith("horizon")
    assert len(res.block) == len(res.x) + res.gap
    res_fig = glue(FS, FIG, 2, 3, ["3", "32"])
    assert res_fig.route == "paths"
    assert res_fig.verified == "exact"
    assert periodic_block_ok(FIG, res_fig.block)


def test_glue_guards():
    with pytest.raises(NotInGM):
        glue(GS, GOLDEN, 2, 1, ["2111111"])     # walks past M + L - 1
    with pytest.raises(NotInGM):
        glue(GS, GOLDEN, 2, 4, ["212"])         # not admissible
    ones_spec = ShiftSpec.make(EvPeriodicSeq.constant(1))
    ones_graph = build_graph_for_spec(ones_spec, 6)
    with pytest.raises(NoSelfLoop):
        glue(ones_graph, ones_spec, 1, 1, ["1"])


def test_glue_explicit_gap():
    res = glue(GS, GOLDEN, 2, 4, ["2", "2"], t=2)
    assert res.gap == 2
    assert periodic_block_ok(GOLDEN, res.block)
    with pytest.raises(GlueFailed):
        # without connectors the wrap-around run of ones has odd length
        glue(GS, GOLDEN, 2, 4, ["2", "21"], t=0)


def test_profile_estimates_nonincreasing_in_cutoff_observed():
    # observed property, reported rather than asserted: at fixed n the
    # excursion growth estimate does not increase with the cutoff
    violations = []
    for gs in (GS, FS):
        prof = c_entropy_profile(gs, 4, 10, 0.3)
        table = {(r["L"], r["n"]): r["estimate"] for r in prof.rows}
        for L in range(1, 4):
            for n in range(1, 11):
                if table[(L + 1, n)] > table[(L, n)] + 1e-12:
                    violations.append((L, n, table[(L, n)], table[(L + 1, n)]))
    if violations:
        print(f"\nnonmonotone excursion estimates observed: {violations}")
    assert isinstance(violations, list)
