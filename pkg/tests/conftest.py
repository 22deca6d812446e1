"""Shared corpus builders for the property tests.

Seeded stdlib RNG everywhere: failures reproduce exactly, and the corpora
are cheap enough to regenerate per module.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from icdof import DiscreteDist, as_scalar


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Reprint the per-criterion status lines where they survive capture."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


def random_rational_dist(
    rng: random.Random,
    min_support: int = 1,
    max_support: int = 12,
    value_span: int = 15,
) -> DiscreteDist:
    """Random distribution on distinct integers in [-span, span] with exact
    rational probabilities (random positive weights, normalized)."""
    size = rng.randint(min_support, max_support)
    support = rng.sample(range(-value_span, value_span + 1), size)
    weights = [rng.randint(1, 99) for _ in range(size)]
    total = sum(weights)
    return DiscreteDist(
        {as_scalar(v): Fraction(w, total) for v, w in zip(support, weights)}
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260816)
