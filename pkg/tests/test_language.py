import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negbeta import oracle
from negbeta.errors import NotOddPeriodic, SpecPrefixTooShort
from negbeta.language import (CountTable, ShiftSpec, count_words,
                              derived_lower_bound, entropy_profile,
                              enumerate_words, eventually_periodic_completion,
                              follower_words, is_admissible, iter_words,
                              mixing_witness, per_count, per_points,
                              periodic_block_ok, seq_within_bounds)
from negbeta.numeric import BetaValue
from negbeta.order import EvPeriodicSeq, word

GOLDEN = ShiftSpec.golden()
FIG = ShiftSpec.make(EvPeriodicSeq.make((), word("3232133")))
B2 = ShiftSpec.from_beta(BetaValue.from_rational(2))


def test_spec_construction():
    assert GOLDEN.alphabet == 2 and not GOLDEN.two_sided
    assert B2.alphabet == 3 and B2.two_sided
    assert B2.lower == EvPeriodicSeq.make((), (1, 2))
    with pytest.raises(ValueError):
        ShiftSpec.make(EvPeriodicSeq.make((1,), (2,)))  # not shift maximal
    with pytest.raises(NotOddPeriodic):
        derived_lower_bound(EvPeriodicSeq.make((2,), (1,)))


def test_admissibility_examples():
    assert is_admissible(GOLDEN, word("2111")) == "yes"
    # the even-position reversal makes 22 admissible: 22 precedes 21 here
    assert is_admissible(GOLDEN, word("22")) == "yes"
    assert is_admissible(GOLDEN, word("212")) == "no"
    assert is_admissible(B2, word("3331")) == "no"
    assert is_admissible(B2, word("13")) == "no"      # falls below the lower bound
    assert is_admissible(B2, word("23")) == "yes"


def test_enumeration_examples():
    assert enumerate_words(GOLDEN, 1) == [word("1"), word("2")]
    assert enumerate_words(GOLDEN, 2) == [word("11"), word("12"), word("21"), word("22")]
    assert enumerate_words(B2, 1) == [word("1"), word("2"), word("3")]


def test_golden_language_matches_forbidden_factor_rule():
    # a word is admissible iff no 2 is followed by an odd run of ones
    # capped by another 2
    def clean(w):
        runs = []
        count = None
        for d in w:
            if d == 2:
                if count is not None:
                    runs.append(count)
                count = 0
            elif count is not None:
                count += 1
        return all(r % 2 == 0 for r in runs)

    import itertools
    for n in range(1, 12):
        expected = [w for w in itertools.product((1, 2), repeat=n) if clean(w)]
        assert enumerate_words(GOLDEN, n) == expected


def test_admissible_matches_naive_oracle():
    import itertools
    for spec, alpha, nmax in ((GOLDEN, 2, 9), (FIG, 3, 6), (B2, 3, 6)):
        for n in range(1, nmax + 1):
            for w in itertools.product(range(1, alpha + 1), repeat=n):
                assert is_admissible(spec, w) == oracle.naive_admissible(spec, w), w


@given(st.integers(1, 10), st.data())
@settings(max_examples=200, deadline=None)
def test_closure_properties(n, data):
    spec = data.draw(st.sampled_from([GOLDEN, FIG, B2]))
    words = enumerate_words(spec, n)
    w = data.draw(st.sampled_from(words))
    assert is_admissible(spec, w[1:] or w) == "yes"     # suffix closure
    assert is_admissible(spec, w[:-1] or w) == "yes"    # prefix closure


def test_prefix_spec_undetermined():
    spec13 = ShiftSpec.from_beta(BetaValue.from_rational(F(13, 10)), prefix_len=6)
    # a word tying the whole 6-digit prefix cannot be decided
    assert is_admissible(spec13, word("2112222")) == "undetermined"
    with pytest.raises(SpecPrefixTooShort):
        enumerate_words(spec13, 7)


def test_per_points_examples():
    assert per_points(GOLDEN, 1) == [word("1"), word("2")]
    assert per_points(GOLDEN, 2) == [word("11"), word("22")]
    assert per_points(B2, 1) == [word("1"), word("2"), word("3")]
    three = ShiftSpec.make(EvPeriodicSeq.constant(3))
    assert word("3") in per_points(three, 1)


def test_per_points_match_naive():
    for spec, nmax in ((GOLDEN, 10), (B2, 6), (FIG, 6)):
        for n in range(1, nmax + 1):
            assert per_points(spec, n) == [tuple(p) for p in oracle.naive_per(spec, n)]


def test_per_points_rotation_closed():
    for n in range(1, 9):
        blocks = set(per_points(GOLDEN, n))
        for b in blocks:
            assert all(b[i:] + b[:i] in blocks for i in range(n))


def test_golden_per_counts_follow_trace_formula():
    # Period-n blocks have even cyclic runs of ones between twos, plus the
    # all-ones block.  A two-state run-parity trace gives the Lucas number
    # L(n); the all-ones block is counted twice for even n and missed for
    # odd n, so the block count is L(n) - (-1)^n.
    lucas = [2, 1]
    while len(lucas) < 14:
        lucas.append(lucas[-1] + lucas[-2])
    for n in range(1, 13):
        assert per_count(GOLDEN, n) == lucas[n] - (-1) ** n
    assert [per_count(GOLDEN, n) for n in range(1, 9)] == [2, 2, 5, 6, 12, 17, 30, 46]


def test_count_table_and_entropy_profile():
    table = count_words(GOLDEN, 14, with_per=True)
    counts = [r["count_words"] for r in table.rows]
    assert counts == [2, 4, 7, 12, 20, 33, 54, 88, 143, 232, 376, 609, 986, 1596]
    prof = entropy_profile(table)
    assert abs(prof[-1]["words_estimate"] - 0.4812) < 0.1
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "n,count_L,count_Per,exact"
    assert csv_text.splitlines()[1] == "1,2,2,1"


def test_entropy_profile_trivial_rows():
    full = CountTable([{"n": n, "count_words": 2 ** n, "exact": True}
                       for n in range(1, 8)])
    assert all(abs(r["words_estimate"] - math.log(2)) < 1e-12
               for r in entropy_profile(full))
    linear = CountTable([{"n": n, "count_words": n + 1, "exact": True}
                         for n in range(1, 30)])
    rows = entropy_profile(linear)
    assert rows[-1]["words_estimate"] < 0.12


def test_mixing_witness():
    assert mixing_witness(GOLDEN, "2", "2", 10) == 0
    assert mixing_witness(B2, "2", "1", 10) == 1
    assert mixing_witness(B2, "1", "2", 10) == 1
    # the top cylinder of an odd-periodic shift never reaches a 1: the
    # sequence is trapped, so the search bound is hit
    assert mixing_witness(B2, "3", "1", 10) is None
    with pytest.raises(ValueError):
        mixing_witness(GOLDEN, "212", "1", 5)


def test_follower_words():
    f1 = follower_words(GOLDEN, word("1"), 3)
    f2 = follower_words(GOLDEN, word("11"), 3)
    assert f1 == f2 and len(f1) == 7
    assert follower_words(GOLDEN, word("2"), 3) == follower_words(GOLDEN, word("12"), 3)


def test_periodic_block_ok():
    assert periodic_block_ok(GOLDEN, word("211"))
    assert not periodic_block_ok(GOLDEN, word("21"))
    assert periodic_block_ok(B2, word("12"))
    assert not periodic_block_ok(B2, word("23"))  # 3 forces 3 forever


def test_two_sided_conservative_rule_certified():
    # every conservatively admissible short word occurs in a genuine
    # eventually periodic point; discrepancies would be reported here
    missing = []
    for n in range(1, 8):
        for w in iter_words(B2, n):
            if eventually_periodic_completion(B2, w) is None:
                missing.append(w)
    assert missing == [], f"uncertified words: {missing}"


def test_seq_within_bounds():
    assert seq_within_bounds(B2, EvPeriodicSeq.make((2,), (3,)))
    assert not seq_within_bounds(B2, EvPeriodicSeq.make((1,), (3,)))
    assert seq_within_bounds(GOLDEN, EvPeriodicSeq.make((2,), (1,)))


def test_per_points_prefix_mode_horizon():
    spec13 = ShiftSpec.from_beta(BetaValue.from_rational(F(13, 10)), prefix_len=40)
    # both one-digit branches have genuine fixed points below the bound
    assert per_points(spec13, 1) == [word("1"), word("2")]
    assert per_points(spec13, 2) == [word("11"), word("22")]
