"""Influence-weight families and their mixture.

Every family is an immutable callable ``fam(a, b)`` that broadcasts over
numpy arrays. For a confirmation term ``a`` is the individual's own opinion,
for a negativity term it is their sensed expectation; ``b`` is the opinion
being weighed.

Families that can be written as ``g(|f(a) - f(b)|)`` expose the pair through
:meth:`decomposition`, which is what the theorem checkers in
:mod:`asymbias.verifier` consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar

import numpy as np

from .network import check_opinion

TANH1 = math.tanh(1.0)


class BiasFamily:
    """Base class. Subclasses are frozen dataclasses."""

    name: ClassVar[str] = ""

    def __call__(self, a, b):
        raise NotImplementedError

    def minimum(self) -> float:
        """Smallest value taken on [-1, 1]^2."""
        raise NotImplementedError

    def decomposition(self) -> tuple[Callable, Callable] | None:
        return None

    def params(self) -> dict:
        return {}

    def to_spec(self) -> dict:
        return {"family": self.name, "params": self.params()}


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class TanhQuadratic(BiasFamily):
    """``chi - gamma * (tanh a - tanh b)**2``, the asymmetric confirmation example."""

    chi: float
    gamma: float
    name: ClassVar[str] = "tanh-quadratic"

    def __post_init__(self):
        _require(self.chi > 0, f"chi must be > 0, got {self.chi}")
        _require(self.gamma >= 0, f"gamma must be >= 0, got {self.gamma}")
        _require(
            self.minimum() >= 0,
            f"chi={self.chi} < gamma*(2 tanh 1)^2 = {self.gamma * (2 * TANH1) ** 2}: "
            "weights would go negative on [-1, 1]^2",
        )

    def __call__(self, a, b):
        return self.chi - self.gamma * (np.tanh(a) - np.tanh(b)) ** 2

    def minimum(self):
        return self.chi - self.gamma * (2 * TANH1) ** 2

    def decomposition(self):
        chi, gamma = self.chi, self.gamma
        return np.tanh, lambda d: chi - gamma * np.asarray(d) ** 2

    def params(self):
        return {"chi": self.chi, "gamma": self.gamma}


def _cube(x):
    # x*x*x is exactly odd under negation; pow() need not be
    x = np.asarray(x, dtype=float)
    return x * x * x


@dataclass(frozen=True)
class CubicAbs(BiasFamily):
    """``chi - gamma * |a**3 - b**3|``."""

    chi: float
    gamma: float
    name: ClassVar[str] = "cubic-abs"

    def __post_init__(self):
        _require(self.chi > 0, f"chi must be > 0, got {self.chi}")
        _require(self.gamma >= 0, f"gamma must be >= 0, got {self.gamma}")
        _require(self.minimum() >= 0, f"chi={self.chi} < 2*gamma: weights would go negative")

    def __call__(self, a, b):
        return self.chi - self.gamma * np.abs(_cube(a) - _cube(b))

    def minimum(self):
        return self.chi - 2 * self.gamma

    def decomposition(self):
        chi, gamma = self.chi, self.gamma
        return _cube, (lambda d: chi - gamma * np.asarray(d))

    def params(self):
        return {"chi": self.chi, "gamma": self.gamma}


@dataclass(frozen=True)
class LinearSymmetric(BiasFamily):
    """Symmetric baseline ``beta - gamma * |a - b|`` with ``beta >= gamma >= 0``.

    Only the parameter ordering is enforced; with ``beta < 2 * gamma`` the
    weight is negative for far-apart opinions, and :class:`asymbias.dynamics.ModelConfig`
    refuses such a family.
    """

    beta: float
    gamma: float
    name: ClassVar[str] = "linear-symmetric"

    def __post_init__(self):
        _require(self.gamma >= 0, f"gamma must be >= 0, got {self.gamma}")
        _require(self.beta >= self.gamma, f"need beta >= gamma, got {self.beta} < {self.gamma}")

    def __call__(self, a, b):
        return self.beta - self.gamma * np.abs(np.asarray(a, dtype=float) - b)

    def minimum(self):
        return self.beta - 2 * self.gamma

    def decomposition(self):
        beta, gamma = self.beta, self.gamma
        return (lambda x: np.asarray(x, dtype=float)), (lambda d: beta - gamma * np.asarray(d))

    def params(self):
        return {"beta": self.beta, "gamma": self.gamma}


@dataclass(frozen=True)
class HKIndicator(BiasFamily):
    """Bounded-confidence entry: ``a`` if ``eps_lo <= x_i - x_j < eps_hi`` else 0.

    The raw in-band constant is returned; no row normalization.
    """

    eps_lo: float
    eps_hi: float
    a: float = 1.0
    name: ClassVar[str] = "hk-indicator"

    def __post_init__(self):
        _require(self.eps_lo < 0, f"eps_lo must be < 0, got {self.eps_lo}")
        _require(self.eps_hi > 0, f"eps_hi must be > 0, got {self.eps_hi}")
        _require(self.a > 0, f"a must be > 0, got {self.a}")

    def __call__(self, xi, xj):
        diff = np.asarray(xi, dtype=float) - xj
        return np.where((diff >= self.eps_lo) & (diff < self.eps_hi), self.a, 0.0)

    def minimum(self):
        return 0.0

    def params(self):
        return {"eps_lo": self.eps_lo, "eps_hi": self.eps_hi, "a": self.a}


@dataclass(frozen=True)
class NegTanhQuadratic(BiasFamily):
    """``chi + gamma * (tanh a - tanh b)**2``: more weight on outlying opinions."""

    chi: float
    gamma: float
    name: ClassVar[str] = "neg-tanh-quadratic"

    def __post_init__(self):
        _require(self.chi >= 0, f"chi must be >= 0, got {self.chi}")
        _require(self.gamma >= 0, f"gamma must be >= 0, got {self.gamma}")

    def __call__(self, a, b):
        return self.chi + self.gamma * (np.tanh(a) - np.tanh(b)) ** 2

    def minimum(self):
        return self.chi

    def decomposition(self):
        chi, gamma = self.chi, self.gamma
        return np.tanh, lambda d: chi + gamma * np.asarray(d) ** 2

    def params(self):
        return {"chi": self.chi, "gamma": self.gamma}


@dataclass(frozen=True)
class Decomposed(BiasFamily):
    """``g(|f(a) - f(b)|)`` for user-supplied ``f`` and ``g``.

    No conditions are imposed on ``f`` or ``g``; whether the pair models
    confirmation or negativity bias is for the verifier to decide.
    :meth:`minimum` is estimated on a 201-point grid.
    """

    f: Callable = field(compare=False)
    g: Callable = field(compare=False)
    name: ClassVar[str] = "decomposed"

    def __call__(self, a, b):
        return self.g(np.abs(self.f(np.asarray(a, dtype=float)) - self.f(np.asarray(b, dtype=float))))

    def minimum(self):
        x = np.linspace(-1.0, 1.0, 201)
        return float(np.min(self(x[:, None], x[None, :])))

    def decomposition(self):
        return self.f, self.g


FAMILIES: dict[str, type[BiasFamily]] = {
    cls.name: cls for cls in (TanhQuadratic, CubicAbs, LinearSymmetric, HKIndicator, NegTanhQuadratic)
}


def family_from_spec(name: str, params: dict) -> BiasFamily:
    """Construct a named family from a parameter mapping.

    >>> family_from_spec("tanh-quadratic", {"chi": 0.6, "gamma": 0.011})
    TanhQuadratic(chi=0.6, gamma=0.011)
    """
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return cls(**{k: float(v) for k, v in params.items()})
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None


def eval_conf(fam: BiasFamily, x_i: float, x_j: float) -> float:
    """Confirmation weight individual ``x_i`` puts on opinion ``x_j``."""
    return float(fam(check_opinion(x_i, "x_i"), check_opinion(x_j, "x_j")))


def eval_neg(fam: BiasFamily, xbar_i: float, x_j: float) -> float:
    """Negativity weight on ``x_j`` given the sensed expectation ``xbar_i``."""
    return float(fam(check_opinion(xbar_i, "xbar_i"), check_opinion(x_j, "x_j")))


@dataclass(frozen=True)
class CompositeBias:
    beta: float
    conf: BiasFamily
    neg: BiasFamily

    def __post_init__(self):
        _require(0.0 <= self.beta <= 1.0, f"beta must lie in [0, 1], got {self.beta}")

    def __call__(self, x_i, xbar_i, x_j):
        return (1 - self.beta) * self.neg(xbar_i, x_j) + self.beta * self.conf(x_i, x_j)


def composite_weight(cb: CompositeBias, x_i: float, xbar_i: float, x_j: float) -> float:
    """Mixture of negativity and confirmation weights.

    The endpoints collapse exactly: ``beta == 1`` returns the confirmation
    weight and ``beta == 0`` the negativity weight, bit for bit.
    """
    if cb.beta == 1.0:
        return eval_conf(cb.conf, x_i, x_j)
    if cb.beta == 0.0:
        return eval_neg(cb.neg, xbar_i, x_j)
    return (1 - cb.beta) * eval_neg(cb.neg, xbar_i, x_j) + cb.beta * eval_conf(cb.conf, x_i, x_j)


# Biased-assimilation baseline on the [0, 1] opinion domain.


def _dandekar_terms(w_ii, w_ij, b_i, x_i, x_j):
    _require(w_ii > 0, f"w_ii must be > 0, got {w_ii}")
    _require(w_ij >= 0, f"w_ij must be >= 0, got {w_ij}")
    _require(b_i >= 0, f"b_i must be >= 0, got {b_i}")
    for label, v in (("x_i", x_i), ("x_j", x_j)):
        _require(0.0 <= v <= 1.0, f"{label} must lie in [0, 1], got {v}")
    pos = x_i**b_i * w_ij
    denom = w_ii + pos * x_j + (1 - x_i) ** b_i * w_ij * (1 - x_j)
    if denom == 0:
        raise ZeroDivisionError("biased-assimilation denominator is zero")
    return pos, denom


def eval_dandekar_step(w_ii: float, w_ij: float, b_i: float, x_i: float, x_j: float) -> float:
    """One biased-assimilation update of ``x_i`` from a single neighbour ``x_j``."""
    pos, denom = _dandekar_terms(w_ii, w_ij, b_i, x_i, x_j)
    return (w_ii * x_i + pos * x_j) / denom


def dandekar_coefficient(w_ii: float, w_ij: float, b_i: float, x_i: float, x_j: float) -> float:
    """Multiplier applied to ``x_j`` in :func:`eval_dandekar_step`."""
    pos, denom = _dandekar_terms(w_ii, w_ij, b_i, x_i, x_j)
    return pos / denom
