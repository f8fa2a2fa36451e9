import math

import pytest
from scipy.stats import chi2 as chi2_dist
from scipy.stats import ttest_ind_from_stats

from argforecast.errors import DomainError, UndefinedTestError
from argforecast.stats import (
    ContingencyTable,
    GroupSummary,
    complexity_means,
    mcnemar,
    t_test_one_sided,
    tally_alignment,
)

# per-shape (aligned, not aligned) counts used by the crowd-study analysis
STUDY_COUNTS = {
    "s": (20, 26), "v": (7, 9), "b": (7, 6), "d": (9, 8),
    "db": (9, 9), "vd": (8, 3), "vb": (9, 8), "vdb": (27, 19),
}


class TestMcnemar:
    def test_study_table(self):
        chi2, p = mcnemar(ContingencyTable(44, 12, 76, 52))
        assert chi2 == pytest.approx(4096 / 88)
        assert p < 1e-5

    def test_symmetric_discordance(self):
        chi2, p = mcnemar(ContingencyTable(10, 5, 5, 10))
        assert chi2 == 0
        assert p == pytest.approx(1.0)

    def test_small_counts(self):
        chi2, _ = mcnemar(ContingencyTable(0, 3, 7, 0))
        assert chi2 == pytest.approx(1.6)

    def test_swap_symmetry_and_concordant_invariance(self):
        base = mcnemar(ContingencyTable(4, 12, 30, 9))[0]
        assert mcnemar(ContingencyTable(4, 30, 12, 9))[0] == pytest.approx(base)
        assert mcnemar(ContingencyTable(99, 12, 30, 0))[0] == pytest.approx(base)

    def test_zero_discordance_undefined(self):
        with pytest.raises(UndefinedTestError):
            mcnemar(ContingencyTable(10, 0, 0, 10))

    def test_negative_counts_rejected(self):
        with pytest.raises(DomainError):
            ContingencyTable(-1, 0, 0, 0)

    def test_tail_probability_matches_reference_distribution(self):
        # erfc identity vs the chi-square survival function, df=1
        for chi2 in (0.5, 1.0, 3.84, 10.83, 46.5, 100.0):
            expected = float(chi2_dist.sf(chi2, 1))
            got = math.erfc(math.sqrt(chi2 / 2))
            assert abs(got - expected) <= 1e-10


class TestComplexityMeans:
    def test_study_counts(self):
        result = complexity_means(STUDY_COUNTS)
        vote, breadth, depth = result["vote"], result["breadth"], result["depth"]
        assert vote[0].mean == pytest.approx(51 / 90)
        assert vote[1].mean == pytest.approx(45 / 94)
        assert breadth[0].mean == pytest.approx(52 / 94)
        assert breadth[1].mean == pytest.approx(44 / 90)
        assert depth[0].mean == pytest.approx(53 / 92)
        assert depth[1].mean == pytest.approx(43 / 92)

    def test_all_aligned(self):
        counts = {shape: (3, 0) for shape in STUDY_COUNTS}
        result = complexity_means(counts)
        for cx, plain in result.values():
            assert cx.mean == 1.0 and plain.mean == 1.0

    def test_missing_shape_rejected(self):
        with pytest.raises(DomainError, match="vdb"):
            complexity_means({k: v for k, v in STUDY_COUNTS.items() if k != "vdb"})

    def test_empty_group_undefined(self):
        counts = dict(STUDY_COUNTS, v=(0, 0), vb=(0, 0), vd=(0, 0), vdb=(0, 0))
        with pytest.raises(UndefinedTestError):
            complexity_means(counts)


class TestTTest:
    def test_identical_groups(self):
        g = GroupSummary(0.5, 0.1, 30)
        t, p = t_test_one_sided(g, g)
        assert t == 0.0
        assert p == pytest.approx(0.5)

    def test_separated_groups(self):
        t, p = t_test_one_sided(GroupSummary(1.0, 0.1, 30), GroupSummary(0.0, 0.1, 30))
        assert t == pytest.approx(1.0 / math.sqrt(2 * 0.01 / 30))
        assert p < 1e-12

    def test_matches_reference_implementation(self):
        cases = [
            (GroupSummary(0.58, 0.24, 92), GroupSummary(0.47, 0.25, 92)),
            (GroupSummary(2.1, 1.1, 13), GroupSummary(1.8, 0.3, 10)),
            (GroupSummary(10.0, 2.0, 5), GroupSummary(11.5, 4.0, 8)),
        ]
        for a, b in cases:
            t, p = t_test_one_sided(a, b)
            ref = ttest_ind_from_stats(a.mean, a.sd, a.n, b.mean, b.sd, b.n,
                                       equal_var=False, alternative="greater")
            assert t == pytest.approx(ref.statistic, abs=1e-12)
            assert p == pytest.approx(ref.pvalue, abs=1e-9)

    def test_monotone_in_mean_difference(self):
        b = GroupSummary(0.4, 0.2, 40)
        previous = 1.0
        for mean_a in (0.3, 0.4, 0.5, 0.6, 0.7):
            _, p = t_test_one_sided(GroupSummary(mean_a, 0.2, 40), b)
            assert p <= previous
            previous = p

    def test_zero_variance_undefined(self):
        with pytest.raises(UndefinedTestError):
            t_test_one_sided(GroupSummary(1.0, 0.0, 5), GroupSummary(0.5, 0.0, 5))

    def test_small_group_rejected(self):
        with pytest.raises(DomainError):
            GroupSummary(0.5, 0.1, 1)


def test_tally_alignment():
    samples = [(True, True)] * 2 + [(True, False)] * 3 + [(False, True)] * 4 + [(False, False)]
    table = tally_alignment(samples)
    assert (table.yy, table.yn, table.ny, table.nn) == (2, 3, 4, 1)
    assert table.total == 10
