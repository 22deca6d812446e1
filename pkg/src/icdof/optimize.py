"""Derivative-free maximization of the entropy-ratio objectives over
parametrized discrete distributions.

Candidates are log-weight vectors over a fixed integer support grid. Each
evaluation exponentiates (softmax style), rationalizes every weight with a
bounded-denominator continued-fraction approximation, normalizes exactly, and
scores the resulting distributions through the exact engine, so no floating
objective value is ever reported that the exact path did not produce.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from scipy.optimize import minimize

from .bounds import hlambda_bound, theorem3_ratio
from .channel import ChannelMatrix
from .dist import DiscreteDist
from .errors import ValidationError
from .scalar import ExactScalar

PROP4_BASE = Fraction(2, 25)
PROP4_PROBS = (
    PROP4_BASE**3,
    PROP4_BASE**2,
    PROP4_BASE,
    1 - PROP4_BASE - PROP4_BASE**2 - PROP4_BASE**3,
)


@dataclass(frozen=True)
class OptConfig:
    restarts: int = 8
    max_iters: int = 200
    seed: int = 0
    rationalization_denominator: int = 10**6
    threads: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError(f"need at least 1 restart, got {self.restarts}")
        if self.max_iters < 1:
            raise ValidationError(f"need at least 1 iteration, got {self.max_iters}")
        if self.rationalization_denominator < 2:
            raise ValidationError("rationalization denominator must be at least 2")


@dataclass(frozen=True)
class OptResult:
    best_value: float
    dists: tuple[DiscreteDist, ...]
    trace: tuple[dict, ...]
    seed: int

    @property
    def best_U(self) -> DiscreteDist:
        return self.dists[0]

    @property
    def best_V(self) -> DiscreteDist:
        return self.dists[1]


def integer_grid(n: int) -> tuple[ExactScalar, ...]:
    return tuple(ExactScalar.rational(i) for i in range(n))


def rationalize_weights(
    weights: Sequence[float], max_denominator: int
) -> tuple[Fraction, ...]:
    """Positive exact probabilities from positive float weights: each weight
    is approximated by a bounded-denominator fraction (floored at the
    smallest positive one so no atom dies), then normalized exactly."""
    approx = []
    floor = Fraction(1, max_denominator)
    for w in weights:
        q = Fraction(w).limit_denominator(max_denominator)
        approx.append(q if q > 0 else floor)
    total = sum(approx)
    return tuple(q / total for q in approx)


def dist_from_logweights(
    x: Sequence[float], support: Sequence[ExactScalar], max_denominator: int
) -> DiscreteDist:
    shift = max(x)
    weights = [math.exp(v - shift) for v in x]
    probs = rationalize_weights(weights, max_denominator)
    return DiscreteDist(dict(zip(support, probs)))


@dataclass
class _Tracker:
    """Best-so-far state for one restart; the objective updates it on every
    exact evaluation, so the reported best never depends on what the simplex
    happens to return."""

    value: float = -math.inf
    dists: Optional[tuple[DiscreteDist, ...]] = None
    evaluations: int = 0

    def record(self, value: float, dists: tuple[DiscreteDist, ...]) -> None:
        self.evaluations += 1
        if value > self.value:
            self.value = value
            self.dists = dists


def _run_restart(
    objective: Callable[[Sequence[float]], tuple[float, tuple[DiscreteDist, ...]]],
    x0: Sequence[float],
    config: OptConfig,
    warm: Optional[tuple[float, tuple[DiscreteDist, ...]]] = None,
) -> _Tracker:
    tracker = _Tracker()
    if warm is not None:
        tracker.record(*warm)

    def neg(x):
        value, dists = objective(x)
        tracker.record(value, dists)
        return -value

    start_value = -neg(x0)
    tracker.start_value = start_value  # type: ignore[attr-defined]
    minimize(
        neg,
        list(x0),
        method="Nelder-Mead",
        options={"maxiter": config.max_iters, "maxfev": 4 * config.max_iters},
    )
    return tracker


def _search(
    objective,
    dim: int,
    config: OptConfig,
    warm_start: Optional[tuple[Sequence[float], float, tuple[DiscreteDist, ...]]] = None,
    progress: Optional[Callable[[dict], None]] = None,
) -> OptResult:
    rng = random.Random(config.seed)
    starts = [[rng.gauss(0.0, 1.0) for _ in range(dim)] for _ in range(config.restarts)]
    warms: list[Optional[tuple[float, tuple[DiscreteDist, ...]]]] = [None] * config.restarts
    if warm_start is not None:
        x0, value, dists = warm_start
        starts[0] = list(x0)
        warms[0] = (value, dists)

    def job(index: int) -> _Tracker:
        return _run_restart(objective, starts[index], config, warm=warms[index])

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            trackers = list(pool.map(job, range(config.restarts)))
    else:
        trackers = [job(i) for i in range(config.restarts)]

    trace = []
    best_index = 0
    for i, t in enumerate(trackers):
        trace.append(
            {
                "restart": i,
                "start_value": getattr(t, "start_value", t.value),
                "best_value": t.value,
                "evaluations": t.evaluations,
            }
        )
        if progress is not None:
            progress(trace[-1])
        if t.value > trackers[best_index].value:
            best_index = i
    best = trackers[best_index]
    if best.dists is None:
        raise ValidationError("objective was degenerate at every candidate")
    return OptResult(
        best_value=best.value,
        dists=best.dists,
        trace=tuple(trace),
        seed=config.seed,
    )


def prop4_dist(n: int = 4) -> DiscreteDist:
    """The published near-4/3 construction: probabilities ((2/25)^3, (2/25)^2,
    2/25, remainder) on {0,1,2,3}, usable whenever the grid has n >= 4."""
    if n < 4:
        raise ValidationError("the warm-start construction needs n >= 4")
    return DiscreteDist(dict(zip(integer_grid(4), PROP4_PROBS)))


def optimize_hlambda(
    lam: Fraction | int,
    n: int,
    config: OptConfig = OptConfig(),
    progress: Optional[Callable[[dict], None]] = None,
) -> OptResult:
    """Maximize 2 - H(U+V)/H(U+lam*V) over pairs supported on {0..n-1}.

    With lam = -1 and n >= 4 the first restart is warm-started at the
    published construction, evaluated exactly, so its value is never
    regressed by rationalization noise.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValidationError("lambda must be nonzero")
    if n < 2:
        raise ValidationError(f"need a support of at least 2 points, got n={n}")
    support = integer_grid(n)
    max_den = config.rationalization_denominator

    def objective(x):
        U = dist_from_logweights(x[:n], support, max_den)
        V = dist_from_logweights(x[n:], support, max_den)
        return hlambda_bound(lam, U, V), (U, V)

    warm = None
    if lam == -1 and n >= 4:
        W4 = prop4_dist(n)
        pad = math.log(1e-9)
        logw = [float(math.log(float(p))) for p in PROP4_PROBS] + [pad] * (n - 4)
        warm = (logw + logw, hlambda_bound(lam, W4, W4), (W4, W4))
    return _search(objective, 2 * n, config, warm_start=warm, progress=progress)


def optimize_theorem3(
    H: ChannelMatrix,
    n: int,
    config: OptConfig = OptConfig(),
    progress: Optional[Callable[[dict], None]] = None,
) -> OptResult:
    """Maximize the output-entropy ratio over K input distributions supported
    on {0..n-1}. Candidates that make every output deterministic are skipped."""
    if n < 2:
        raise ValidationError(f"need a support of at least 2 points, got n={n}")
    support = integer_grid(n)
    max_den = config.rationalization_denominator
    K = H.K

    def objective(x):
        dists = tuple(
            dist_from_logweights(x[j * n : (j + 1) * n], support, max_den) for j in range(K)
        )
        try:
            return theorem3_ratio(H, dists), dists
        except ValidationError:
            return -math.inf, dists

    return _search(objective, K * n, config, progress=progress)
