"""Seeded sampling primitives.

All exponential quantities are parametrized by a *rate* lambda, i.e.
``Exp(lam)`` has CDF ``1 - exp(-lam * x)`` and mean ``1 / lam``.
Samplers are deterministic functions of the stream state, so replaying a
seed reproduces every draw bit for bit.

These samplers are not hardened against floating-point side channels
(discrete-Gaussian style); they are meant for benchmarking, not for
releasing data about real people.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .errors import InvalidParam


def _label_to_int(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFFFFFFFFFF
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


class RngStream:
    """Counter-based pseudorandom stream with labeled substreams.

    Substreams derived with distinct labels are statistically independent,
    so instrumentation code can draw randomness without perturbing the
    sample sequence of the algorithm under test.
    """

    def __init__(self, seed, _seq: np.random.SeedSequence | None = None):
        if _seq is not None:
            self._seq = _seq
        else:
            self._seq = np.random.SeedSequence(int(seed))
        self.gen = np.random.Generator(np.random.Philox(self._seq))

    def substream(self, label) -> "RngStream":
        """Derive an independent stream identified by ``label``."""
        child = np.random.SeedSequence(
            entropy=self._seq.entropy,
            spawn_key=tuple(self._seq.spawn_key) + (_label_to_int(label),),
        )
        return RngStream(None, _seq=child)


def exp_quantile(u: float, rate: float) -> float:
    """Inverse CDF of Exp(rate) at u in [0, 1)."""
    return -math.log1p(-u) / rate


def max_exp_quantile(u: float, k: int, rate: float) -> float:
    """Inverse CDF of the max of k iid Exp(rate) at u in [0, 1)."""
    # P[max <= x] = (1 - e^{-rate x})^k, so x = -ln(1 - u^{1/k}) / rate.
    return -math.log1p(-u ** (1.0 / k)) / rate


def sample_uniform01(rng: RngStream) -> float:
    return rng.gen.random()


def sample_exp(rng: RngStream, rate: float) -> float:
    if not rate > 0 or not math.isfinite(rate):
        raise InvalidParam(f"rate must be positive and finite, got {rate}")
    return exp_quantile(rng.gen.random(), rate)


def sample_max_exp(rng: RngStream, k: int, rate: float) -> float:
    """One draw of the maximum of k iid Exp(rate), via a single uniform."""
    if k < 1:
        raise InvalidParam(f"k must be >= 1, got {k}")
    if not rate > 0 or not math.isfinite(rate):
        raise InvalidParam(f"rate must be positive and finite, got {rate}")
    return max_exp_quantile(rng.gen.random(), k, rate)


def sample_binomial(rng: RngStream, trials: int, p: float) -> int:
    """Exact Binomial(trials, p) in expected O(trials * p + 1) time.

    Successes are counted by skipping geometric gaps between them, which
    keeps the sparse regime p ~ n^-4 at constant expected cost.
    """
    if trials < 0:
        raise InvalidParam(f"trials must be >= 0, got {trials}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParam(f"p must be in [0, 1], got {p}")
    if trials == 0 or p == 0.0:
        return 0
    if p == 1.0:
        return trials
    log1mp = math.log1p(-p)
    count = 0
    i = 0
    while True:
        # Gap to the next success: floor(log(1-U)/log(1-p)) ~ Geometric(p).
        gap = int(math.log1p(-rng.gen.random()) / log1mp)
        i += gap + 1
        if i > trials:
            return count
        count += 1


def sample_gaussian(rng: RngStream, sigma: float) -> float:
    if not sigma > 0:
        raise InvalidParam(f"sigma must be positive, got {sigma}")
    return rng.gen.normal(0.0, sigma)


def sample_laplace(rng: RngStream, scale: float) -> float:
    if not scale > 0:
        raise InvalidParam(f"scale must be positive, got {scale}")
    return rng.gen.laplace(0.0, scale)


def sample_uniform_index(rng: RngStream, n: int) -> int:
    """Unbiased uniform integer in [0, n)."""
    if n < 1:
        raise InvalidParam(f"n must be >= 1, got {n}")
    return int(rng.gen.integers(0, n))


def sample_distinct_indices(rng: RngStream, n: int, k: int) -> set[int]:
    """Uniform k-subset of {0..n-1} in expected O(k) time (Floyd)."""
    if k < 0 or k > n:
        raise InvalidParam(f"need 0 <= k <= n, got k={k}, n={n}")
    chosen: set[int] = set()
    for j in range(n - k, n):
        t = sample_uniform_index(rng, j + 1)
        if t in chosen:
            chosen.add(j)
        else:
            chosen.add(t)
    return chosen


def sample_exp_array(rng: RngStream, rate: float, size: int) -> np.ndarray:
    """Vectorized iid Exp(rate) draws; one logical sample per entry."""
    if not rate > 0 or not math.isfinite(rate):
        raise InvalidParam(f"rate must be positive and finite, got {rate}")
    return -np.log1p(-rng.gen.random(size)) / rate
