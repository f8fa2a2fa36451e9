"""Study statistics: paired-nominal disagreement test, per-axis alignment
means over the eight debate shapes, and a one-sided two-sample t-test from
summary statistics (unequal variances)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from scipy.stats import t as t_dist

from .errors import DomainError, UndefinedTestError

# the eight debate shapes, keyed by their complexity letters
SHAPE_TOKENS = ("s", "v", "b", "d", "vb", "vd", "db", "vdb")
AXES = ("vote", "breadth", "depth")
_AXIS_LETTER = {"vote": "v", "breadth": "b", "depth": "d"}


@dataclass(frozen=True)
class ContingencyTable:
    """2x2 counts of model-coherent (rows) vs user-coherent (columns)."""

    yy: int
    yn: int
    ny: int
    nn: int

    def __post_init__(self) -> None:
        if min(self.yy, self.yn, self.ny, self.nn) < 0:
            raise DomainError("contingency counts must be non-negative")

    @property
    def total(self) -> int:
        return self.yy + self.yn + self.ny + self.nn


@dataclass(frozen=True)
class GroupSummary:
    mean: float
    sd: float
    n: int

    def __post_init__(self) -> None:
        if self.sd < 0 or not math.isfinite(self.sd):
            raise DomainError(f"standard deviation must be finite and >= 0, got {self.sd!r}")
        if self.n < 2:
            raise DomainError(f"group size must be >= 2, got {self.n!r}")


def tally_alignment(samples: Iterable[tuple[bool, bool]]) -> ContingencyTable:
    """Fold (model_coherent, user_coherent) pairs into a contingency table."""
    yy = yn = ny = nn = 0
    for model, user in samples:
        if model and user:
            yy += 1
        elif model:
            yn += 1
        elif user:
            ny += 1
        else:
            nn += 1
    return ContingencyTable(yy, yn, ny, nn)


def mcnemar(table: ContingencyTable) -> tuple[float, float]:
    """Uncorrected test on the discordant cells.

    chi2 = (ny - yn)^2 / (ny + yn); the p-value is the upper tail of the
    chi-square distribution with one degree of freedom, computed via
    p = erfc(sqrt(chi2 / 2)).
    """
    discordant = table.yn + table.ny
    if discordant == 0:
        raise UndefinedTestError("no discordant pairs; the test statistic is undefined")
    chi2 = (table.ny - table.yn) ** 2 / discordant
    p = math.erfc(math.sqrt(chi2 / 2.0))
    return chi2, p


def _group_of(samples: list[int]) -> GroupSummary:
    n = len(samples)
    if n < 2:
        raise UndefinedTestError("a group needs at least two samples")
    mean = sum(samples) / n
    var = sum((x - mean) ** 2 for x in samples) / (n - 1)
    return GroupSummary(mean=mean, sd=math.sqrt(var), n=n)


def complexity_means(
    counts: Mapping[str, tuple[int, int]],
) -> dict[str, tuple[GroupSummary, GroupSummary]]:
    """Per-axis alignment means from (aligned, not_aligned) counts per shape.

    ``counts`` must cover all eight shapes.  For each axis the shapes carrying
    that complexity letter form the complex group, the rest the non-complex
    group; samples are 1 for aligned and 0 for not.  Returns
    axis -> (complex summary, non-complex summary).
    """
    missing = [s for s in SHAPE_TOKENS if s not in counts]
    if missing:
        raise DomainError(f"missing shape counts: {missing}")
    unknown = [s for s in counts if s not in SHAPE_TOKENS]
    if unknown:
        raise DomainError(f"unknown shape tokens: {unknown}")

    result: dict[str, tuple[GroupSummary, GroupSummary]] = {}
    for axis in AXES:
        letter = _AXIS_LETTER[axis]
        complex_samples: list[int] = []
        plain_samples: list[int] = []
        for shape in SHAPE_TOKENS:
            aligned, not_aligned = counts[shape]
            if aligned < 0 or not_aligned < 0:
                raise DomainError(f"negative count for shape {shape!r}")
            bucket = complex_samples if letter in shape else plain_samples
            bucket.extend([1] * aligned)
            bucket.extend([0] * not_aligned)
        if not complex_samples or not plain_samples:
            raise UndefinedTestError(f"empty group for axis {axis!r}")
        result[axis] = (_group_of(complex_samples), _group_of(plain_samples))
    return result


def t_test_one_sided(a: GroupSummary, b: GroupSummary) -> tuple[float, float]:
    """Unequal-variance two-sample t-test from summary statistics.

    Tests H1: mean_a > mean_b; returns (t, upper-tail p) with
    Welch-Satterthwaite degrees of freedom.
    """
    va = a.sd**2 / a.n
    vb = b.sd**2 / b.n
    if va + vb == 0:
        raise UndefinedTestError("both groups have zero variance; the statistic is undefined")
    t = (a.mean - b.mean) / math.sqrt(va + vb)
    df = (va + vb) ** 2 / (va**2 / (a.n - 1) + vb**2 / (b.n - 1))
    p = float(t_dist.sf(t, df))
    return t, p
