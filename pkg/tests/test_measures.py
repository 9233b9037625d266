import math
from fractions import Fraction as F

import pytest

from negbeta.errors import EmptyPer
from negbeta.language import ShiftSpec
from negbeta.measures import (EmpiricalMeasure, gibbs_check, htop_estimate,
                              measure_entropy_estimate, mu_n,
                              mu_n_rotation_averaged, weakstar_diagnostic)
from negbeta.numeric import BetaValue
from negbeta.order import EvPeriodicSeq, word

GOLDEN = ShiftSpec.golden()
B2 = ShiftSpec.from_beta(BetaValue.from_rational(2))
STAIRS = ShiftSpec.make(EvPeriodicSeq.constant(2))   # language is 1-runs then 2-runs


def test_mu_basic():
    m = mu_n(GOLDEN, 1, 1)
    assert m.per_count == 2
    assert m.mass(word("1")) == F(1, 2) and m.mass(word("2")) == F(1, 2)
    assert m.mass(()) == 1
    with pytest.raises(ValueError):
        mu_n(GOLDEN, 3, 5)


def test_mu_sanity_exact():
    for spec, n, m in ((GOLDEN, 10, 4), (GOLDEN, 13, 5), (B2, 8, 3)):
        mu = mu_n(spec, n, m)
        assert mu.check_normalization()
        assert mu.check_consistency()


def test_rotation_average_agrees():
    for spec, n, m in ((GOLDEN, 9, 3), (GOLDEN, 12, 4), (B2, 7, 3)):
        assert mu_n_rotation_averaged(spec, n, m).masses == mu_n(spec, n, m).masses


def test_htop_estimates():
    est = htop_estimate(GOLDEN, 18)
    assert abs(est.value - math.log((1 + 5 ** 0.5) / 2)) < 0.1
    assert est.word_counts[-1] == 10945
    # the staircase target shift has vanishing growth
    stairs = htop_estimate(STAIRS, 20)
    assert stairs.word_counts == [n + 1 for n in range(1, 21)]
    assert stairs.value < 0.16
    # the two-sided integer-base shift has clearly positive growth
    est2 = htop_estimate(B2, 12)
    assert est2.value > 0.5


def test_gibbs_uniform_measure():
    masses = {}
    for n in range(1, 4):
        for i in range(2 ** n):
            w = tuple(1 + (i >> (n - 1 - j) & 1) for j in range(n))
            masses[w] = F(1, 2 ** n)
    uniform = EmpiricalMeasure(3, 3, 8, masses)
    rep = gibbs_check(uniform, [word("1"), word("22")], math.log(2))
    assert abs(rep.max_ratio - 1.0) < 1e-12
    assert abs(rep.min_good_ratio - 1.0) < 1e-12
    assert abs(rep.implied_K - 1.0) < 1e-12


def test_gibbs_golden():
    est = htop_estimate(GOLDEN, 18)
    m16 = mu_n(GOLDEN, 16, 5)
    gwords = [w for length in range(1, 6)
              for w in __import__("negbeta.language", fromlist=["iter_words"])
              .iter_words(GOLDEN, length)]
    rep = gibbs_check(m16, gwords, est.value)
    assert rep.max_ratio <= 10
    assert rep.implied_K >= 1
    assert not rep.zero_mass_good or all(len(w) >= 4 for w in rep.zero_mass_good)


def test_gibbs_zero_mass_flagged():
    m4 = mu_n(GOLDEN, 4, 4)
    rep = gibbs_check(m4, [word("1112")], math.log(2))
    assert rep.zero_mass_good == [word("1112")]
    assert rep.min_good_ratio is None
    assert rep.implied_K == math.inf


def test_measure_entropy():
    masses = {w: F(1, 4) for w in [(1, 1), (1, 2), (2, 1), (2, 2)]}
    uniform = EmpiricalMeasure(2, 2, 4, masses)
    assert abs(measure_entropy_estimate(uniform, 2) - math.log(2)) < 1e-12
    point = EmpiricalMeasure(3, 3, 1, {(1,): F(1), (1, 1): F(1), (1, 1, 1): F(1)})
    assert measure_entropy_estimate(point, 3) == 0.0
    m16 = mu_n(GOLDEN, 16, 5)
    assert 0.55 < measure_entropy_estimate(m16, 5) < 0.62


def test_weakstar_table():
    table = weakstar_diagnostic(GOLDEN, [8, 10, 12, 14], 3)
    assert table.ns == [8, 10, 12, 14]
    assert not table.skipped
    assert len(table.deviations) == 3
    assert all(0 <= d <= 1 for d in table.deviations)
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "word,mu_8,mu_10,mu_12,mu_14"


def test_weakstar_skips_empty(monkeypatch):
    import negbeta.measures as M

    real = M.per_points

    def fake(spec, n):
        return [] if n == 5 else real(spec, n)

    monkeypatch.setattr(M, "per_points", fake)
    table = weakstar_diagnostic(GOLDEN, [4, 5, 6], 3)
    assert table.skipped == [5]
    assert table.ns == [4, 6]


def test_mu_empty_per(monkeypatch):
    import negbeta.measures as M
    monkeypatch.setattr(M, "per_points", lambda spec, n: [])
    with pytest.raises(EmptyPer):
        mu_n(GOLDEN, 4, 2)


def test_measure_json_round():
    m = mu_n(GOLDEN, 6, 3)
    js = m.to_json()
    assert js["per_count"] == m.per_count
    assert js["masses"]["11"] == f"{m.mass(word('11')).numerator}/{m.mass(word('11')).denominator}"
