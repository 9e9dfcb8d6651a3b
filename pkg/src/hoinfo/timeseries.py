"""Time-series ingestion, correlation aggregation, and node system labels."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateNode,
    EmptyInput,
    LabelMismatch,
    ParseError,
    ShapeMismatch,
    UnknownNode,
    ZeroVariance,
)
from .matrix import CorrelationMatrix


@dataclass(frozen=True)
class TimeSeriesPanel:
    """T frames x N nodes of samples from one run."""

    frames: np.ndarray
    node_names: tuple[str, ...] | None = None
    run_id: str = ""

    def __post_init__(self):
        frames = np.array(self.frames, dtype=np.float64)
        if frames.ndim != 2:
            raise ShapeMismatch(f"frames must be 2-d (T x N), got shape {frames.shape}")
        if frames.shape[0] < 2:
            raise ShapeMismatch("a panel needs at least 2 frames")
        if not np.isfinite(frames).all():
            t, n = np.argwhere(~np.isfinite(frames))[0]
            raise ParseError(f"non-finite value at frame {t + 1}, column {n + 1}")
        if self.node_names is not None and len(self.node_names) != frames.shape[1]:
            raise ShapeMismatch(
                f"{len(self.node_names)} node names for {frames.shape[1]} columns"
            )
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.frames.shape[1]


def load_timeseries(path, delimiter=",", header=False, run_id=None) -> TimeSeriesPanel:
    """Read a time-series CSV (rows = frames, columns = nodes).

    With ``header=True`` the first row supplies node names. Non-numeric or
    non-finite cells raise ParseError naming the offending row and column.
    """
    names = None
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        for lineno, row in enumerate(reader, start=1):
            if not row:
                continue
            if header and names is None and lineno == 1:
                names = tuple(cell.strip() for cell in row)
                continue
            rows.append((lineno, row))
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    width = len(rows[0][1])
    data = np.empty((len(rows), width))
    for out_row, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"{path}: row {lineno} has {len(row)} cells, expected {width}")
        for col, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: non-numeric cell at row {lineno}, column {col + 1}"
                ) from None
            if not np.isfinite(value):
                raise ParseError(f"{path}: non-finite value at row {lineno}, column {col + 1}")
            data[out_row, col] = value
    if names is not None and len(names) != width:
        raise ParseError(f"{path}: header has {len(names)} names, rows have {width} cells")
    return TimeSeriesPanel(data, node_names=names, run_id=run_id or str(path))


def _zscore_columns(frames, run_id):
    std = frames.std(axis=0, ddof=0)
    flat = np.flatnonzero(std == 0.0)
    if flat.size:
        raise ZeroVariance(f"node {flat[0]} is constant in run {run_id!r}")
    return (frames - frames.mean(axis=0)) / std


def correlation_from_panels(
    panels, method: str = "concatenate", zscore_runs: bool = True
) -> CorrelationMatrix:
    """Aggregate runs into one Pearson correlation matrix.

    The default concatenates frames across runs (z-scoring each run's
    columns first, so runs with different offsets/scales do not create
    spurious correlation; pass ``zscore_runs=False`` to concatenate raw).
    ``method='mean'`` instead averages the per-run correlation matrices.

    The result may be rank-deficient (e.g. duplicated columns); positive
    definiteness is deliberately not enforced here so the repair flow can
    decide what to do.
    """
    panels = list(panels)
    if not panels:
        raise EmptyInput("no panels given")
    n = panels[0].n_nodes
    names = panels[0].node_names
    for panel in panels[1:]:
        if panel.n_nodes != n:
            raise ShapeMismatch(f"panel {panel.run_id!r} has {panel.n_nodes} nodes, expected {n}")
        if panel.node_names != names:
            raise ShapeMismatch(f"panel {panel.run_id!r} disagrees on node names/order")
    if method == "concatenate":
        blocks = []
        for panel in panels:
            frames = panel.frames
            blocks.append(_zscore_columns(frames, panel.run_id) if zscore_runs else frames)
        combined = np.concatenate(blocks, axis=0)
        if combined.shape[0] < 3:
            raise ShapeMismatch("need at least 3 combined frames")
        std = combined.std(axis=0, ddof=0)
        flat = np.flatnonzero(std == 0.0)
        if flat.size:
            raise ZeroVariance(f"node {flat[0]} is constant across the concatenation")
        r = np.corrcoef(combined, rowvar=False)
    elif method == "mean":
        mats = []
        for panel in panels:
            _zscore_columns(panel.frames, panel.run_id)  # surfaces ZeroVariance per run
            mats.append(np.corrcoef(panel.frames, rowvar=False))
        r = np.mean(mats, axis=0)
    else:
        raise ValueError(f"method must be 'concatenate' or 'mean', got {method!r}")
    r = np.clip(0.5 * (r + r.T), -1.0, 1.0)
    np.fill_diagonal(r, 1.0)
    return CorrelationMatrix(r, node_names=names, check_pd=False)


@dataclass(frozen=True)
class NodeLabels:
    """Assignment of every node to one canonical system."""

    node_names: tuple[str, ...]
    systems: tuple[str, ...]

    def __post_init__(self):
        if len(self.node_names) != len(self.systems):
            raise LabelMismatch(
                f"{len(self.node_names)} nodes but {len(self.systems)} system labels"
            )
        if not self.node_names:
            raise LabelMismatch("label set must be non-empty")
        object.__setattr__(self, "node_names", tuple(self.node_names))
        object.__setattr__(self, "systems", tuple(self.systems))

    @property
    def system_names(self) -> tuple[str, ...]:
        seen = []
        for s in self.systems:
            if s not in seen:
                seen.append(s)
        return tuple(seen)

    def indices_by_system(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for i, s in enumerate(self.systems):
            out.setdefault(s, []).append(i)
        return out


def load_labels(path, node_names, delimiter=",") -> NodeLabels:
    """Read a two-column (node name, system) CSV and align it to ``node_names``.

    Every matrix node must appear exactly once; file entries that are not
    matrix nodes raise UnknownNode, repeats raise DuplicateNode.
    """
    node_names = tuple(str(s) for s in node_names)
    known = set(node_names)
    mapping: dict[str, str] = {}
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1):
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(f"{path}: row {lineno} must be 'node,system'")
            name, system = row[0].strip(), row[1].strip()
            if name not in known:
                raise UnknownNode(f"{path}: row {lineno} names unknown node {name!r}")
            if name in mapping:
                raise DuplicateNode(f"{path}: node {name!r} listed twice (row {lineno})")
            mapping[name] = system
    missing = [name for name in node_names if name not in mapping]
    if missing:
        raise UnknownNode(f"{path}: no system label for node {missing[0]!r}")
    return NodeLabels(node_names, tuple(mapping[name] for name in node_names))
