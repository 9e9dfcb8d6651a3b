"""Plug-in information measures over small finite joint distributions.

This module exists to provide exact oracles (most importantly the logical
XOR gate) that validate the measure definitions independently of the
Gaussian estimators. Everything is computed in bits on dense probability
tables; tables are capped at 2**20 cells because the intended use is small
hand-built systems, not estimation at scale.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import IndexOverlap, InvalidDistribution, ParseError, SubsetTooSmall

MAX_TABLE_CELLS = 2**20
_NORM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteJoint:
    """Joint probability table over N finite-alphabet variables.

    ``probabilities`` has one axis per variable; entry [x1, ..., xn] is
    P(X1=x1, ..., Xn=xn).
    """

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=np.float64)
        if p.ndim < 1:
            raise InvalidDistribution("table must have at least one variable axis")
        if p.size > MAX_TABLE_CELLS:
            raise InvalidDistribution(
                f"table has {p.size} cells, beyond the dense limit of {MAX_TABLE_CELLS}"
            )
        if np.any(p < 0.0):
            raise InvalidDistribution("probabilities must be non-negative")
        if abs(float(p.sum()) - 1.0) > _NORM_TOL:
            raise InvalidDistribution(f"probabilities sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @property
    def arity(self) -> int:
        return self.probabilities.ndim

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return self.probabilities.shape


def _marginal(joint: DiscreteJoint, keep) -> np.ndarray:
    keep = sorted(set(int(v) for v in keep))
    drop = tuple(ax for ax in range(joint.arity) if ax not in keep)
    return joint.probabilities.sum(axis=drop) if drop else joint.probabilities


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum())


def discrete_entropy(joint: DiscreteJoint, variables) -> float:
    """Shannon entropy in bits of the marginal over ``variables`` (0 log 0 = 0)."""
    variables = list(variables)
    if not variables:
        raise InvalidDistribution("variable set must be non-empty")
    bad = [v for v in variables if not 0 <= int(v) < joint.arity]
    if bad:
        raise InvalidDistribution(f"variable index {bad[0]} out of range")
    return _entropy_bits(_marginal(joint, variables))


def _entropy_of(joint, variables):
    # internal: empty set has zero entropy
    return discrete_entropy(joint, variables) if variables else 0.0


def discrete_tc(joint: DiscreteJoint) -> float:
    """Total correlation in bits: sum of marginal entropies minus joint entropy."""
    n = joint.arity
    if n < 2:
        raise SubsetTooSmall("total correlation needs at least 2 variables")
    marginals = sum(discrete_entropy(joint, [i]) for i in range(n))
    return marginals - discrete_entropy(joint, range(n))


def discrete_dtc(joint: DiscreteJoint) -> float:
    """Dual total correlation in bits: (1-N) H(X) + sum_i H(X without i)."""
    n = joint.arity
    if n < 2:
        raise SubsetTooSmall("dual total correlation needs at least 2 variables")
    h_full = discrete_entropy(joint, range(n))
    h_dels = sum(discrete_entropy(joint, [j for j in range(n) if j != i]) for i in range(n))
    return (1 - n) * h_full + h_dels


def discrete_o(joint: DiscreteJoint) -> float:
    """O-information in bits: TC - DTC. Needs at least 3 variables."""
    if joint.arity < 3:
        raise SubsetTooSmall("O-information needs at least 3 variables")
    return discrete_tc(joint) - discrete_dtc(joint)


def discrete_normalized_o(joint: DiscreteJoint) -> float:
    """O-information per element, TC - DTC divided by N."""
    return discrete_o(joint) / joint.arity


def discrete_description_complexity(joint: DiscreteJoint) -> float:
    """Description complexity in bits: TC - TC/N - mean_i TC(X without i)."""
    n = joint.arity
    if n < 2:
        raise SubsetTooSmall("description complexity needs at least 2 variables")
    tc_full = discrete_tc(joint)
    tc_dels = []
    for i in range(n):
        keep = [j for j in range(n) if j != i]
        if len(keep) == 1:
            tc_dels.append(0.0)
        else:
            marg = DiscreteJoint(_marginal(joint, keep))
            tc_dels.append(discrete_tc(marg))
    return tc_full - tc_full / n - float(np.mean(tc_dels))


def discrete_conditional_mi(joint: DiscreteJoint, i: int, j: int, given=()) -> float:
    """Conditional mutual information I(Xi; Xj | X_given) in bits.

    Expands as H(i,g) + H(j,g) - H(g) - H(i,j,g); an empty conditioning set
    yields the plain mutual information.
    """
    given = [int(v) for v in given]
    i, j = int(i), int(j)
    if i == j or i in given or j in given:
        raise IndexOverlap(f"indices must be disjoint: i={i}, j={j}, given={given}")
    return (
        _entropy_of(joint, [i] + given)
        + _entropy_of(joint, [j] + given)
        - _entropy_of(joint, given)
        - _entropy_of(joint, [i, j] + given)
    )


def xor_joint() -> DiscreteJoint:
    """The logical XOR gate: uniform mass on {000, 011, 101, 110}."""
    p = np.zeros((2, 2, 2))
    for x1, x2 in ((0, 0), (0, 1), (1, 0), (1, 1)):
        p[x1, x2, x1 ^ x2] = 0.25
    return DiscreteJoint(p)


def load_discrete_joint_csv(path, delimiter=",") -> DiscreteJoint:
    """Build a joint table from CSV rows of (outcome tuple..., probability).

    Alphabet sizes are inferred as 1 + the largest value seen per column;
    outcomes not listed get probability zero.
    """
    outcomes, probs = [], []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1):
            if not row:
                continue
            if len(row) < 2:
                raise ParseError(f"{path}: row {lineno} needs outcome columns plus a probability")
            try:
                outcomes.append(tuple(int(cell) for cell in row[:-1]))
                probs.append(float(row[-1]))
            except ValueError:
                raise ParseError(f"{path}: non-numeric cell in row {lineno}") from None
    if not outcomes:
        raise ParseError(f"{path}: empty joint table")
    arity = len(outcomes[0])
    if any(len(o) != arity for o in outcomes):
        raise ParseError(f"{path}: outcome rows have inconsistent arity")
    if any(v < 0 for o in outcomes for v in o):
        raise ParseError(f"{path}: outcome values must be non-negative integers")
    shape = tuple(max(o[ax] for o in outcomes) + 1 for ax in range(arity))
    table = np.zeros(shape)
    for outcome, p in zip(outcomes, probs):
        table[outcome] += p
    return DiscreteJoint(table)
