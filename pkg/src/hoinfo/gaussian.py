"""Closed-form information measures for multivariate Gaussian systems.

All measures are computed from log-determinants of principal submatrices of
a correlation matrix (Cholesky-based, so non-PD selections are detected and
raised as ``SingularSubmatrix``). Entropic quantities are returned in nats;
``measure_report`` can convert a full bundle to bits.

Because the inputs are correlation matrices (unit diagonal), single-variable
entropies are the unit-variance Gaussian entropy and the total correlation
of a subset reduces to -log det / 2 of its correlation submatrix. The
measures themselves are invariant under per-variable rescaling of a Gaussian
system, so standardizing a covariance matrix to a correlation matrix on
ingestion is exactness-preserving.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace

import numpy as np

from . import backend
from .errors import (
    NonPositiveVariance,
    PerfectCorrelation,
    SingularSubmatrix,
    SubsetTooSmall,
    WrongArity,
)
from .matrix import CorrelationMatrix, validate_subset

LN_2PIE = math.log(2.0 * math.pi * math.e)
LN_2 = math.log(2.0)

#: measures mathematically >= 0 are clamped to exactly 0 when they land
#: within this slack below zero; anything worse raises SingularSubmatrix
NONNEG_SLACK = 1e-9

_clamp_lock = threading.Lock()
_clamp_events = 0


def clamp_events() -> int:
    """How many times a tiny negative measure was clamped to 0 (diagnostics)."""
    return _clamp_events


def _clamp_nonneg(value, what):
    global _clamp_events
    if value >= 0.0:
        return value
    if value >= -NONNEG_SLACK:
        with _clamp_lock:
            _clamp_events += 1
        return 0.0
    raise SingularSubmatrix(
        f"{what} = {value:.3e} is negative beyond numerical slack; "
        "submatrix is effectively singular"
    )


def gaussian_entropy(variance: float) -> float:
    """Differential entropy of a univariate Gaussian, ln(2*pi*e*variance)/2 nats."""
    if variance <= 0.0:
        raise NonPositiveVariance(f"variance must be > 0, got {variance}")
    return 0.5 * math.log(2.0 * math.pi * math.e * variance)


def gaussian_mutual_information(rho: float) -> float:
    """Mutual information of a correlated Gaussian pair, -ln(1 - rho^2)/2 nats."""
    if abs(rho) >= 1.0:
        raise PerfectCorrelation(f"|rho| must be < 1, got {rho}")
    return -0.5 * math.log1p(-rho * rho)


def _subset_logdet(cov: CorrelationMatrix, idx) -> float:
    ld = backend.kernels.subset_logdet(cov.values, idx)
    if math.isnan(ld):
        raise SingularSubmatrix(f"subset {list(map(int, idx))} is not positive definite")
    return ld


def _deletion_logdets(cov: CorrelationMatrix, idx):
    full, dels = backend.kernels.deletion_logdets(cov.values, idx)
    if math.isnan(full) or np.isnan(dels).any():
        raise SingularSubmatrix(f"subset {list(map(int, idx))} is not positive definite")
    return full, dels


def gaussian_joint_entropy(cov: CorrelationMatrix, subset) -> float:
    """Joint entropy of a subset, ln((2*pi*e)^k * det)/2 nats via Cholesky log-det."""
    idx = validate_subset(subset, cov.dim)
    return 0.5 * (idx.size * LN_2PIE + _subset_logdet(cov, idx))


def total_correlation(cov: CorrelationMatrix, subset) -> float:
    """Total correlation of a subset in nats.

    Equals sum of marginal entropies minus the joint entropy; for a
    correlation submatrix that collapses to -log det / 2. Zero for a
    single variable.
    """
    idx = validate_subset(subset, cov.dim)
    if idx.size == 1:
        return 0.0
    return _clamp_nonneg(-0.5 * _subset_logdet(cov, idx), "total correlation")


def dual_total_correlation(cov: CorrelationMatrix, subset) -> float:
    """Dual total correlation (shared entropy) of a subset in nats.

    Assembled as (1-k) H(X) + sum_i H(X without i) from joint entropies.
    """
    idx = validate_subset(subset, cov.dim, min_size=2)
    k = idx.size
    full, dels = _deletion_logdets(cov, idx)
    h_full = 0.5 * (k * LN_2PIE + full)
    h_dels = 0.5 * ((k - 1) * LN_2PIE + dels)
    return _clamp_nonneg((1.0 - k) * h_full + h_dels.sum(), "dual total correlation")


def o_information(cov: CorrelationMatrix, subset) -> float:
    """O-information of a subset: TC - DTC, in nats.

    Negative values mean the subset is synergy-dominated, positive values
    redundancy-dominated. Undefined below 3 nodes (TC - DTC is identically
    zero for a pair, which invites misreading it as "no structure").
    """
    idx = validate_subset(subset, cov.dim, min_size=3)
    k = idx.size
    full, dels = _deletion_logdets(cov, idx)
    tc = -0.5 * full
    h_full = 0.5 * (k * LN_2PIE + full)
    h_dels = 0.5 * ((k - 1) * LN_2PIE + dels)
    dtc = (1.0 - k) * h_full + h_dels.sum()
    return tc - dtc


def o_information_via_tc(cov: CorrelationMatrix, subset) -> float:
    """O-information assembled purely from total correlations.

    Independent code path, (2-k) TC(X) + sum_i TC(X without i), kept for
    cross-validating ``o_information``.
    """
    idx = validate_subset(subset, cov.dim, min_size=3)
    k = idx.size
    tc_full = total_correlation(cov, idx)
    tc_dels = 0.0
    for d in range(k):
        tc_dels += total_correlation(cov, np.delete(idx, d))
    return (2.0 - k) * tc_full + tc_dels


def s_information(cov: CorrelationMatrix, subset) -> float:
    """S-information (exogenous information) of a subset: TC + DTC, in nats."""
    idx = validate_subset(subset, cov.dim, min_size=2)
    k = idx.size
    full, dels = _deletion_logdets(cov, idx)
    tc = -0.5 * full
    h_full = 0.5 * (k * LN_2PIE + full)
    h_dels = 0.5 * ((k - 1) * LN_2PIE + dels)
    dtc = (1.0 - k) * h_full + h_dels.sum()
    return tc + dtc


def description_complexity(cov: CorrelationMatrix, subset) -> float:
    """Description complexity in nats: TC - TC/k - mean_i TC(X without i).

    The expected drop in integration from deleting one element versus the
    actual average drop. Analytically equal to DTC/k; computed here on the
    pruning form so that identity stays an executable cross-check.
    """
    idx = validate_subset(subset, cov.dim, min_size=2)
    k = idx.size
    full, dels = _deletion_logdets(cov, idx)
    tc_full = -0.5 * full
    tc_dels = -0.5 * dels
    return tc_full - tc_full / k - tc_dels.mean()


def co_information_3(cov: CorrelationMatrix, subset) -> float:
    """Co-information of a 3-node subset: I(X1;X2) - I(X1;X2|X3), in nats.

    The conditional term expands in joint entropies as
    H(X1,X3) + H(X2,X3) - H(X3) - H(X1,X2,X3). Symmetric in the three
    indices, and equal to the O-information at this size.
    """
    idx = validate_subset(subset, cov.dim)
    if idx.size != 3:
        raise WrongArity(f"co-information is defined for exactly 3 nodes, got {idx.size}")
    a, b, c = (int(i) for i in idx)
    mi_ab = gaussian_mutual_information(cov.values[a, b])
    cmi = (
        gaussian_joint_entropy(cov, (a, c))
        + gaussian_joint_entropy(cov, (b, c))
        - gaussian_entropy(1.0)
        - gaussian_joint_entropy(cov, (a, b, c))
    )
    return mi_ab - cmi


def normalized_o_information(cov: CorrelationMatrix, subset) -> float:
    """O-information divided by the subset size (per-element organization)."""
    idx = validate_subset(subset, cov.dim, min_size=3)
    return o_information(cov, idx) / idx.size


@dataclass(frozen=True)
class MeasureReport:
    """The full measure bundle for one subsystem, tagged with its log base."""

    subset: tuple[int, ...]
    joint_entropy: float
    total_correlation: float
    dual_total_correlation: float
    o_information: float
    s_information: float
    description_complexity: float
    normalized_o: float
    log_base: str = "nats"

    def value(self, name: str) -> float:
        value = getattr(self, name)
        if not isinstance(value, float):
            raise AttributeError(f"{name} is not a numeric measure field")
        return value

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "joint_entropy": self.joint_entropy,
            "total_correlation": self.total_correlation,
            "dual_total_correlation": self.dual_total_correlation,
            "o_information": self.o_information,
            "s_information": self.s_information,
            "description_complexity": self.description_complexity,
            "normalized_o": self.normalized_o,
            "log_base": self.log_base,
        }


#: numeric fields of MeasureReport usable as search objectives
MEASURE_FIELDS = (
    "joint_entropy",
    "total_correlation",
    "dual_total_correlation",
    "o_information",
    "s_information",
    "description_complexity",
    "normalized_o",
)


def convert_report(report: MeasureReport, log_base: str) -> MeasureReport:
    """Convert a report between 'nats' and 'bits' (all fields scale by ln 2)."""
    if log_base not in ("nats", "bits"):
        raise ValueError(f"log_base must be 'nats' or 'bits', got {log_base!r}")
    if log_base == report.log_base:
        return report
    scale = 1.0 / LN_2 if log_base == "bits" else LN_2
    return replace(
        report,
        joint_entropy=report.joint_entropy * scale,
        total_correlation=report.total_correlation * scale,
        dual_total_correlation=report.dual_total_correlation * scale,
        o_information=report.o_information * scale,
        s_information=report.s_information * scale,
        description_complexity=report.description_complexity * scale,
        normalized_o=report.normalized_o * scale,
        log_base=log_base,
    )


def measure_report(cov: CorrelationMatrix, subset, log_base: str = "nats") -> MeasureReport:
    """Compute the whole measure bundle from one deletion log-det pass.

    Requires at least 3 nodes (the O-information does). This is the hot-path
    entry point used by sampling and annealing.
    """
    idx = validate_subset(subset, cov.dim, min_size=3)
    k = idx.size
    full, dels = _deletion_logdets(cov, idx)
    h_full = 0.5 * (k * LN_2PIE + full)
    h_dels = 0.5 * ((k - 1) * LN_2PIE + dels)
    tc = _clamp_nonneg(-0.5 * full, "total correlation")
    dtc = _clamp_nonneg((1.0 - k) * h_full + h_dels.sum(), "dual total correlation")
    tc_dels = -0.5 * dels
    report = MeasureReport(
        subset=tuple(int(i) for i in idx),
        joint_entropy=h_full,
        total_correlation=tc,
        dual_total_correlation=dtc,
        o_information=tc - dtc,
        s_information=tc + dtc,
        description_complexity=tc - tc / k - tc_dels.mean(),
        normalized_o=(tc - dtc) / k,
        log_base="nats",
    )
    return convert_report(report, log_base)
