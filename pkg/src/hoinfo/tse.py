"""TSE complexity: integration/segregation balance across scales.

Two equivalent forms are implemented. The per-scale deficit form sums, for
every scale i in [1, k], the gap between the integration expected of a
proportionally integrated system, (i/k) TC(X), and the actual average total
correlation over all size-i subsets. The bipartition form averages the
mutual information between each part of a bipartition and its complement,
over scales 1..floor(k/2).

Convention (pinned by a brute-force pre-build comparison of both forms):
for even k the half-size scale enumerates every split twice, once from each
side, so its average enters with weight 1/2. With that weight the two forms
agree to machine precision at every size, including k = 2, where both give
half the pair mutual information.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ExactLimitExceeded, SingularSubmatrix
from .matrix import CorrelationMatrix, validate_subset
from .search_rng import rng_for

#: largest subset size for exhaustive enumeration (2^16 subsets)
DEFAULT_EXACT_LIMIT = 16


@dataclass(frozen=True)
class TseResult:
    """TSE value in nats plus the per-scale deficit terms that sum to it."""

    value: float
    mode: str
    per_scale_deficit: tuple[float, ...]
    samples_per_scale: int | None = None


def _scale_mean_tc(sub, scale, sampler=None):
    """Mean total correlation over size-``scale`` subsets of ``sub``.

    ``sampler`` = (rng, n_samples) switches from enumeration to sampling
    distinct subsets without replacement; if n_samples covers the scale the
    sample is exhaustive and the result equals the enumeration.
    """
    k = sub.shape[0]
    if scale == 1:
        return 0.0
    total = math.comb(k, scale)
    if sampler is None or sampler[1] >= total:
        combos = np.array(list(itertools.combinations(range(k), scale)), dtype=np.intp)
    else:
        rng, n_samples = sampler
        seen = set()
        while len(seen) < n_samples:
            pick = tuple(int(v) for v in np.sort(rng.choice(k, size=scale, replace=False)))
            seen.add(pick)
        combos = np.array(sorted(seen), dtype=np.intp)
    logdets = backend.kernels.batch_subset_logdet(sub, combos)
    if np.isnan(logdets).any():
        raise SingularSubmatrix(f"a size-{scale} subset is not positive definite")
    return float(np.mean(-0.5 * logdets))


def tse_complexity(
    cov: CorrelationMatrix,
    subset,
    mode: str = "exact",
    samples_per_scale: int | None = None,
    seed: int | None = None,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> TseResult:
    """TSE complexity of a subset, exact or Monte Carlo per scale.

    Exact mode enumerates every subset of every size (requires
    k <= exact_limit). Sampled mode draws ``samples_per_scale`` distinct
    subsets per scale with the given seed; scales smaller than the draw
    count are exhausted, so a large enough draw reproduces exact mode.
    """
    idx = validate_subset(subset, cov.dim)
    k = idx.size
    if mode == "exact":
        if k > exact_limit:
            raise ExactLimitExceeded(
                f"exact TSE on {k} nodes exceeds the limit of {exact_limit}; use sampled mode"
            )
        samplers = [None] * (k + 1)
        samples_per_scale = None
    elif mode == "sampled":
        if not samples_per_scale or samples_per_scale < 1:
            raise ValueError("sampled mode requires samples_per_scale >= 1")
        samplers = [((rng_for(seed or 0, scale)), samples_per_scale) for scale in range(k + 1)]
    else:
        raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")

    sub = cov.submatrix(idx)
    tc_full = -0.5 * backend.kernels.logdet_spd(sub)
    if math.isnan(tc_full):
        raise SingularSubmatrix("subset is not positive definite")
    deficits = []
    for scale in range(1, k + 1):
        actual = _scale_mean_tc(sub, scale, samplers[scale])
        deficits.append((scale / k) * tc_full - actual)
    return TseResult(
        value=float(sum(deficits)),
        mode=mode,
        per_scale_deficit=tuple(deficits),
        samples_per_scale=samples_per_scale,
    )


def tse_bipartition_form(
    cov: CorrelationMatrix,
    subset,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> float:
    """TSE complexity as average bipartition mutual information, in nats.

    Sums E[I(part; complement)] over part sizes 1..floor(k/2); at even k
    the half-size scale carries weight 1/2 (see module docstring). Used to
    cross-check the per-scale deficit form.
    """
    idx = validate_subset(subset, cov.dim)
    k = idx.size
    if k > exact_limit:
        raise ExactLimitExceeded(
            f"bipartition enumeration on {k} nodes exceeds the limit of {exact_limit}"
        )
    sub = cov.submatrix(idx)
    ld_full = backend.kernels.logdet_spd(sub)
    if math.isnan(ld_full):
        raise SingularSubmatrix("subset is not positive definite")
    total = 0.0
    members = range(k)
    for scale in range(1, k // 2 + 1):
        parts = np.array(list(itertools.combinations(members, scale)), dtype=np.intp)
        rest = np.array(
            [[j for j in members if j not in set(row)] for row in parts], dtype=np.intp
        )
        ld_parts = backend.kernels.batch_subset_logdet(sub, parts)
        ld_rest = backend.kernels.batch_subset_logdet(sub, rest)
        if np.isnan(ld_parts).any() or np.isnan(ld_rest).any():
            raise SingularSubmatrix(f"a size-{scale} bipartition is not positive definite")
        # joint-entropy MI: the (2*pi*e) factors cancel, leaving log-dets
        mi = 0.5 * (ld_parts + ld_rest - ld_full)
        weight = 0.5 if (k % 2 == 0 and scale == k // 2) else 1.0
        total += weight * float(np.mean(mi))
    return total
