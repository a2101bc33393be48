"""Social digraph and sensed expectations.

Opinions are plain floats (or float arrays) constrained to [-1, 1]; the
helpers below validate them at the boundaries of the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np


class EdgeListError(ValueError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def check_opinion(value: float, name: str = "opinion") -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [-1, 1], got {value}")
    return value


def as_opinions(x: Iterable[float], name: str = "opinions") -> np.ndarray:
    """Copy ``x`` into a 1-d float array, rejecting values outside [-1, 1]."""
    arr = np.array(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(np.abs(arr) > 1.0):
        bad = int(np.flatnonzero(np.abs(arr) > 1.0)[0])
        raise ValueError(f"{name}[{bad}] = {arr[bad]} lies outside [-1, 1]")
    return arr


@dataclass(frozen=True)
class InfluenceGraph:
    """``n`` individuals and the nonnegative expectation weights ``w``.

    ``w[i, j]`` is the weight individual ``i`` places on ``j`` when forming
    their sensed expectation. Self-loops are allowed. The matrix is stored
    read-only.
    """

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise ValueError(f"weight matrix must be square with n >= 1, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if not np.all(np.isfinite(w.sum(axis=1))):
            raise ValueError("row sums of the weights overflow")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @cached_property
    def row_totals(self) -> np.ndarray:
        return self.w.sum(axis=1)

    @cached_property
    def mean_operator(self) -> np.ndarray:
        """Rows of ``w`` scaled to sum to one; all-zero rows stay zero."""
        totals = self.row_totals[:, None]
        op = np.divide(self.w, totals, out=np.zeros_like(self.w), where=totals > 0)
        op.setflags(write=False)
        return op

    @classmethod
    def empty(cls, n: int) -> "InfluenceGraph":
        return cls(np.zeros((n, n)))


def parse_edge_list(text: str, n: int) -> InfluenceGraph:
    """Build a graph from ``"i j w"`` lines with 0-based indices.

    Lines starting with ``#`` and blank lines are skipped. Unlisted entries
    are zero; listing the same ``(i, j)`` twice is an error.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    w = np.zeros((n, n))
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise EdgeListError(lineno, f"expected 'i j w', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            weight = float(parts[2])
        except ValueError:
            raise EdgeListError(lineno, f"cannot parse {raw!r}") from None
        for idx in (i, j):
            if not 0 <= idx < n:
                raise EdgeListError(lineno, f"index {idx} out of range for n={n}")
        if not math.isfinite(weight) or weight < 0:
            raise EdgeListError(lineno, f"weight must be finite and nonnegative, got {parts[2]}")
        if (i, j) in seen:
            raise EdgeListError(lineno, f"duplicate edge ({i}, {j}), first given on line {seen[i, j]}")
        seen[i, j] = lineno
        w[i, j] = weight
    return InfluenceGraph(w)


def read_edge_list(path, n: int) -> InfluenceGraph:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_edge_list(fh.read(), n)


def sensed_expectation(g: InfluenceGraph, x, i: int) -> float:
    """Weighted mean of the opinions individual ``i`` listens to.

    An individual with an all-zero weight row expects their own opinion.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"expected {g.n} opinions, got shape {x.shape}")
    if not 0 <= i < g.n:
        raise IndexError(f"individual {i} out of range for n={g.n}")
    row = g.w[i]
    total = row.sum()
    if total == 0:
        return float(x[i])
    # normalize before the dot product so tiny weights do not underflow
    return float((row / total) @ x)


def sensed_expectations(g: InfluenceGraph, x) -> np.ndarray:
    """Vectorized :func:`sensed_expectation` for every individual."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"expected {g.n} opinions, got shape {x.shape}")
    return np.where(g.row_totals > 0, g.mean_operator @ x, x)
