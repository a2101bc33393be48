"""Discrete-time opinion evolution with state-dependent bias weights.

Each step builds the mixed weight matrix from the current opinions, fixes the
resistance parameters ``alpha`` by row normalization, and moves every
individual to ``alpha_i * s_i + sum_j c'_ij * x_j``.

Normalization modes
-------------------
``strict``
    Use the weights as they are and set ``alpha_i = 1 - sum_j c_ij``. Fails
    when a row sums above one.
``rescale``
    Scale each nonzero row to sum to ``1 - alpha_target`` and set
    ``alpha_i = alpha_target``. This is the default.
``literal``
    ``alpha_i = 1 - sum_j c_ij x_j``. Kept as a diagnostic: the update then
    reduces to ``alpha_i s_i + 1 - alpha_i`` and opinions are not bounded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .bias import BiasFamily
from .network import InfluenceGraph, as_opinions, sensed_expectations

log = logging.getLogger(__name__)

NORM_MODES = ("strict", "rescale", "literal")


class ModelError(RuntimeError):
    pass


class InfeasibleNormalization(ModelError):
    """A row's weights sum above one in strict mode."""

    def __init__(self, row: int | None, total: float, step: int | None = None):
        who = f"row {row} weights" if row is not None else "weights"
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"{who} sum to {total!r} > 1{where}; strict normalization infeasible")
        self.row = row
        self.total = total
        self.step = step


@dataclass(frozen=True)
class ModelConfig:
    s: np.ndarray
    beta: np.ndarray
    conf: BiasFamily
    neg: BiasFamily
    norm_mode: str = "rescale"
    alpha_target: float = 0.2
    include_self: bool = True

    def __post_init__(self):
        s = as_opinions(self.s, "s")
        beta = np.array(self.beta, dtype=float)
        if beta.ndim == 0:
            beta = np.full(s.shape, float(beta))
        if beta.shape != s.shape:
            raise ValueError(f"beta has shape {beta.shape}, expected {s.shape}")
        if np.any((beta < 0) | (beta > 1)) or not np.all(np.isfinite(beta)):
            raise ValueError("every beta_i must lie in [0, 1]")
        if self.norm_mode not in NORM_MODES:
            raise ValueError(f"norm_mode must be one of {NORM_MODES}, got {self.norm_mode!r}")
        if self.norm_mode == "rescale" and not 0 <= self.alpha_target < 1:
            raise ValueError(f"alpha_target must lie in [0, 1), got {self.alpha_target}")
        for label, fam in (("conf", self.conf), ("neg", self.neg)):
            if fam.minimum() < 0:
                raise ValueError(f"{label} family {fam} takes negative values on [-1, 1]^2")
        s.setflags(write=False)
        beta.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return self.s.size


@dataclass
class Trajectory:
    """Opinions ``states[k]`` for ``k = 0..K`` and the ``alphas[k]`` that produced ``states[k + 1]``."""

    states: np.ndarray
    alphas: np.ndarray
    weights: np.ndarray | None = None
    converged_at: int | None = None

    @property
    def steps(self) -> int:
        return self.alphas.shape[0]


@dataclass(frozen=True)
class SimulationState:
    x: np.ndarray
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("step index must be nonnegative")


def _check_dims(cfg: ModelConfig, g: InfluenceGraph, x: np.ndarray):
    if cfg.n != g.n or x.shape != (g.n,):
        raise ValueError(f"dimension mismatch: config n={cfg.n}, graph n={g.n}, opinions {x.shape}")


def compute_weight_matrix(cfg: ModelConfig, g: InfluenceGraph, x) -> np.ndarray:
    """Mixed bias weights ``C[i, j]`` for the current opinions ``x``."""
    x = np.asarray(x, dtype=float)
    _check_dims(cfg, g, x)
    return _weights(cfg, g, x)


def _weights(cfg, g, x):
    beta = cfg.beta[:, None]
    row = x[None, :]
    C = beta * cfg.conf(x[:, None], row)
    if cfg.beta.min() < 1:
        xbar = sensed_expectations(g, x)
        C = C + (1 - beta) * cfg.neg(xbar[:, None], row)
    if not cfg.include_self:
        np.fill_diagonal(C, 0.0)
    return C


def normalize_row(
    row, mode: str = "rescale", alpha_target: float = 0.2, index: int | None = None
) -> tuple[float, np.ndarray]:
    """Return ``(alpha, scaled_row)`` for one row of bias weights.

    In literal mode alpha depends on the opinions and is computed in
    :func:`step`; this function then returns ``nan`` for it.
    """
    row = np.asarray(row, dtype=float)
    total = float(row.sum())
    if mode == "strict":
        if total > 1:
            raise InfeasibleNormalization(index, total)
        return 1.0 - total, row
    if mode == "rescale":
        if total == 0:
            return 1.0, row
        # divide first: (1 - alpha) / total overflows for subnormal totals
        return float(alpha_target), (row / total) * (1 - alpha_target)
    if mode == "literal":
        return float("nan"), row
    raise ValueError(f"unknown normalization mode {mode!r}")


def normalize_rows(C: np.ndarray, mode: str = "rescale", alpha_target: float = 0.2) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise :func:`normalize_row` on a full matrix."""
    totals = C.sum(axis=1)
    if mode == "strict":
        over = np.flatnonzero(totals > 1)
        if over.size:
            raise InfeasibleNormalization(int(over[0]), float(totals[over[0]]))
        return 1.0 - totals, C
    if mode == "rescale":
        nz = totals > 0
        W = np.divide(C, totals[:, None], out=np.zeros_like(C), where=nz[:, None])
        alpha = np.where(nz, alpha_target, 1.0)
        return alpha, W * (1 - alpha_target)
    if mode == "literal":
        return np.full(totals.shape, np.nan), C
    raise ValueError(f"unknown normalization mode {mode!r}")


def _advance(cfg: ModelConfig, g: InfluenceGraph, x: np.ndarray):
    C = _weights(cfg, g, x)
    alpha, W = normalize_rows(C, cfg.norm_mode, cfg.alpha_target)
    if cfg.norm_mode == "literal":
        drive = W @ x
        alpha = 1.0 - drive
        return alpha * cfg.s + drive, alpha, W
    # Written as displacements so that a consensus at s is reproduced bit for
    # bit; equal to alpha*s + W@x because alpha + sum_j W_ij = 1.
    new = x + alpha * (cfg.s - x) + (W * (x[None, :] - x[:, None])).sum(axis=1)
    # clip only absorbs rounding; the exact value is a convex combination
    return np.clip(new, -1.0, 1.0), alpha, W


def step(cfg: ModelConfig, g: InfluenceGraph, st: SimulationState) -> SimulationState:
    x = np.asarray(st.x, dtype=float)
    if cfg.norm_mode != "literal":
        x = as_opinions(x, "x")
    try:
        new, _, _ = _advance(cfg, g, x)
    except InfeasibleNormalization as exc:
        raise InfeasibleNormalization(exc.row, exc.total, st.k) from None
    return SimulationState(new, st.k + 1)


def run(
    cfg: ModelConfig,
    g: InfluenceGraph,
    x0,
    K: int,
    conv_tol: float = 0.0,
    *,
    record_weights: bool = False,
    stop_on_convergence: bool = False,
) -> Trajectory:
    """Iterate the model for ``K`` steps from ``x0``.

    ``converged_at`` is the first ``k`` with ``max_i |x_i(k+1) - x_i(k)| <= conv_tol``.
    The run continues to ``K`` unless ``stop_on_convergence`` is set.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    if conv_tol < 0:
        raise ValueError("conv_tol must be nonnegative")
    x = as_opinions(x0, "x0")
    _check_dims(cfg, g, x)
    states = [x]
    alphas, weights = [], []
    converged_at = None
    for k in range(K):
        try:
            new, alpha, W = _advance(cfg, g, x)
        except InfeasibleNormalization as exc:
            raise InfeasibleNormalization(exc.row, exc.total, k) from None
        states.append(new)
        alphas.append(alpha)
        if record_weights:
            weights.append(W)
        if converged_at is None and np.max(np.abs(new - x)) <= conv_tol:
            converged_at = k
            log.debug("converged at step %d", k)
            if stop_on_convergence:
                x = new
                break
        x = new
    n = g.n
    return Trajectory(
        states=np.array(states),
        alphas=np.array(alphas).reshape(-1, n),
        weights=np.array(weights).reshape(-1, n, n) if record_weights else None,
        converged_at=converged_at,
    )
