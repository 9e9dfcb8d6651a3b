"""Correlation matrices, subset handling, and matrix CSV interchange."""
from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .errors import (
    InvalidSubset,
    IrreparableMatrix,
    ParseError,
    ShapeMismatch,
    SubsetTooLarge,
    SubsetTooSmall,
)

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class CorrelationMatrix:
    """An N x N Pearson correlation matrix, the system under study.

    Immutable after construction (the value buffer is set read-only) and
    therefore safe to share across threads. Construction validates
    symmetry, the unit diagonal, and the [-1, 1] range of off-diagonal
    entries; positive definiteness is checked via Cholesky unless
    ``check_pd=False`` (used by the repair flow, which has to hold
    non-PD candidates).
    """

    values: np.ndarray
    node_names: tuple[str, ...] | None = None
    repaired: bool = False
    check_pd: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ShapeMismatch(f"expected a square matrix, got shape {values.shape}")
        n = values.shape[0]
        if n < 1:
            raise ShapeMismatch("matrix must have at least one node")
        if np.abs(values - values.T).max() > SYMMETRY_TOL:
            raise ShapeMismatch("matrix is not symmetric within 1e-12")
        if np.abs(np.diagonal(values) - 1.0).max() > SYMMETRY_TOL:
            raise ShapeMismatch("diagonal entries must equal 1 within 1e-12")
        off = values[~np.eye(n, dtype=bool)]
        if off.size and (off.min() < -1.0 or off.max() > 1.0):
            raise ShapeMismatch("off-diagonal correlations must lie in [-1, 1]")
        if self.node_names is not None:
            names = tuple(str(s) for s in self.node_names)
            if len(names) != n:
                raise ShapeMismatch(f"{len(names)} node names for {n} nodes")
            object.__setattr__(self, "node_names", names)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.check_pd and not self.is_positive_definite():
            from .errors import SingularSubmatrix

            raise SingularSubmatrix("matrix is not positive definite (Cholesky failed)")

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def is_positive_definite(self) -> bool:
        return not np.isnan(backend.kernels.logdet_spd(self.values))

    def submatrix(self, indices) -> np.ndarray:
        idx = validate_subset(indices, self.dim)
        return self.values[np.ix_(idx, idx)]


def validate_subset(indices, dim, min_size=1):
    """Normalize subset indices to a sorted intp array and validate them.

    Raises InvalidSubset on duplicates/out-of-range/empty input,
    SubsetTooSmall below ``min_size`` and SubsetTooLarge above ``dim``.
    """
    idx = np.asarray(list(indices), dtype=np.intp)
    if idx.size == 0:
        raise InvalidSubset("subset must be non-empty")
    if idx.size > dim:
        raise SubsetTooLarge(f"subset size {idx.size} exceeds system size {dim}")
    if idx.min() < 0 or idx.max() >= dim:
        bad = int(idx[(idx < 0) | (idx >= dim)][0])
        raise InvalidSubset(f"index {bad} out of range for a {dim}-node system")
    idx = np.sort(idx)
    if np.any(idx[1:] == idx[:-1]):
        dup = int(idx[1:][idx[1:] == idx[:-1]][0])
        raise InvalidSubset(f"duplicate index {dup} in subset")
    if idx.size < min_size:
        raise SubsetTooSmall(f"measure requires at least {min_size} nodes, got {idx.size}")
    return idx


@dataclass(frozen=True)
class ShrinkageConfig:
    """Repair parameters: shrink toward the identity and/or add diagonal jitter."""

    lam: float = 0.0
    jitter: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.lam < 1.0:
            raise ValueError("shrinkage intensity must lie in [0, 1)")
        if self.jitter < 0.0:
            raise ValueError("jitter must be non-negative")


def validate_or_repair(cov: CorrelationMatrix, cfg: ShrinkageConfig | None = None) -> CorrelationMatrix:
    """Return ``cov`` unchanged if PD, otherwise shrink toward identity and retry.

    Repair computes (1 - lam) * R + lam * I, adds ``jitter`` to the diagonal,
    and re-standardizes the diagonal back to 1. The returned matrix carries
    ``repaired=True`` when repair ran. Raises IrreparableMatrix if the result
    is still not positive definite.
    """
    cfg = cfg or ShrinkageConfig()
    if cov.is_positive_definite():
        return cov
    r = (1.0 - cfg.lam) * cov.values + cfg.lam * np.eye(cov.dim)
    if cfg.jitter:
        r = r + cfg.jitter * np.eye(cov.dim)
        d = np.sqrt(np.diagonal(r))
        r = r / np.outer(d, d)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    repaired = CorrelationMatrix(r, node_names=cov.node_names, repaired=True, check_pd=False)
    if not repaired.is_positive_definite():
        raise IrreparableMatrix(
            f"matrix still not PD after shrinkage lam={cfg.lam}, jitter={cfg.jitter}"
        )
    return repaired


def atomic_write_text(path, text):
    """Write a file atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-hoinfo-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_correlation_csv(cov: CorrelationMatrix, path, delimiter=",", header=True):
    """Write a matrix CSV at full precision (17 significant digits round-trips float64)."""
    lines = []
    if header and cov.node_names is not None:
        lines.append(delimiter.join(cov.node_names))
    for row in cov.values:
        lines.append(delimiter.join(f"{v:.17g}" for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_correlation_csv(path, delimiter=",", check_pd=True) -> CorrelationMatrix:
    """Read a matrix CSV (N rows x N columns, optional single header row of names)."""
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if not rows:
        raise ParseError(f"{path}: empty matrix file")
    names = None
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        names = tuple(cell.strip() for cell in rows[0])
        rows = rows[1:]
    n = len(rows)
    values = np.empty((n, n))
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"{path}: row {i + 1} has {len(row)} columns, expected {n}")
        for j, cell in enumerate(row):
            try:
                values[i, j] = float(cell)
            except ValueError:
                raise ParseError(f"{path}: non-numeric cell at row {i + 1}, column {j + 1}") from None
    if names is not None and len(names) != n:
        raise ParseError(f"{path}: header names {len(names)} columns, matrix has {n}")
    try:
        return CorrelationMatrix(values, node_names=names, check_pd=check_pd)
    except ShapeMismatch as exc:
        raise ParseError(f"{path}: {exc}") from exc
