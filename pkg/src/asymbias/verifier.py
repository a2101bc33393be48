"""Grid-exhaustive checks of the asymmetric bias conditions.

A weight function is evaluated once on the full grid; the conditions are
then tested over every grid pair or triple. Grid point ``k`` has the value
``k / m`` with integer ``k`` in ``[-m, m]``. Distance comparisons and sign
tests run on the integer numerators, so "equal distance" means exactly equal
on the grid rather than equal up to floating-point noise.

Item identifiers
----------------
Confirmation: ``7a-1`` closer same-sign opinion weighs more, ``7a-2`` at
equal distance the opinion further along the individual's side weighs more,
``7a-3-existence`` an opposite-sign opinion can outweigh a same-sign one,
``7b`` neutral individuals weigh mirror opinions equally.
Negativity: ``8a-1`` .. ``8b`` mirror these with "farther from expectation
weighs more". Theorem items ``11a`` .. ``11e`` and ``12a`` .. ``12e`` test an
``(f, g)`` decomposition directly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

ORIENTATIONS = ("as-written", "corrected")


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 41
    exclusion_band: float = 0.0

    def __post_init__(self):
        if self.resolution < 3 or self.resolution % 2 == 0:
            raise ValueError(f"resolution must be odd and >= 3, got {self.resolution}")
        if self.exclusion_band < 0:
            raise ValueError("exclusion_band must be >= 0")

    @property
    def half(self) -> int:
        return (self.resolution - 1) // 2

    @property
    def ints(self) -> np.ndarray:
        return np.arange(-self.half, self.half + 1)

    @property
    def values(self) -> np.ndarray:
        return self.ints / self.half

    def signs(self) -> np.ndarray:
        """Sign of each grid point, zero inside the exclusion band."""
        s = np.sign(self.ints)
        s[np.abs(self.values) <= self.exclusion_band] = 0
        return s


@dataclass
class ItemResult:
    item: str
    status: str
    checked: int
    violations: int = 0
    witnesses: list = field(default_factory=list)
    realizations: list | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class ConditionReport:
    condition: str
    resolution: int
    items: list
    orientation: str | None = None

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    def item(self, name: str) -> ItemResult:
        for it in self.items:
            if it.item == name:
                return it
        raise KeyError(name)

    def failing(self) -> list[str]:
        return [it.item for it in self.items if not it.passed]

    def to_dict(self) -> dict:
        out = {
            "condition": self.condition,
            "resolution": self.resolution,
            "orientation": self.orientation,
            "passed": self.passed,
            "items": [],
        }
        for it in self.items:
            d = asdict(it)
            if d["realizations"] is None:
                del d["realizations"]
            out["items"].append(d)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _grid_matrix(fn: Callable, x: np.ndarray) -> np.ndarray:
    """``M[a, b] = fn(x[a], x[b])``, falling back to scalar calls."""
    try:
        M = np.asarray(fn(x[:, None], x[None, :]), dtype=float)
        if M.shape == (x.size, x.size):
            return M
    except Exception:
        pass
    return np.array([[float(fn(a, b)) for b in x] for a in x])


def _apply(fn: Callable, x: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(fn(x), dtype=float)
        if out.shape == x.shape:
            return out
    except Exception:
        pass
    return np.array([float(fn(v)) for v in x])


def _item(name, hyp, ok, make_witness, cap) -> ItemResult:
    bad = hyp & ~ok
    nbad = int(bad.sum())
    witnesses = [make_witness(*idx) for idx in np.argwhere(bad)[:cap]]
    return ItemResult(name, "fail" if nbad else "pass", int(hyp.sum()), nbad, witnesses)


def _triple_witness(x, C, first, second, third):
    def make(i, j, d):
        return {
            first: float(x[i]),
            second: float(x[j]),
            third: float(x[d]),
            f"c_{second}": float(C[i, j]),
            f"c_{third}": float(C[i, d]),
        }

    return make


def _mirror_item(name, x, ints, C, tol_eq, cap) -> ItemResult:
    # pairs (a, -a) with a > 0, evaluated from a neutral reference point
    zero = int(np.flatnonzero(ints == 0)[0])
    pos = np.flatnonzero(ints > 0)
    neg = zero - (pos - zero)
    diff = np.abs(C[zero, pos] - C[zero, neg])
    bad = np.flatnonzero(~(diff <= tol_eq))
    witnesses = [
        {"a": float(x[pos[k]]), "c_pos": float(C[zero, pos[k]]), "c_neg": float(C[zero, neg[k]])}
        for k in bad[:cap]
    ]
    return ItemResult(name, "fail" if bad.size else "pass", int(pos.size), int(bad.size), witnesses)


def check_confirmation(
    c: Callable,
    grid: GridSpec = GridSpec(),
    tol: float = 0.0,
    *,
    tol_strict: float = 0.0,
    tol_eq: float = 1e-12,
    max_witnesses: int = 1000,
) -> ConditionReport:
    """Test ``c(x_i, x_j)`` against the asymmetric confirmation-bias conditions.

    ``tol`` relaxes the distance comparisons (in opinion units), ``tol_strict``
    is the margin a strict weight inequality must clear, and ``tol_eq`` bounds
    the mirror-symmetry defect at a neutral opinion.
    """
    x, k, s = grid.values, grid.ints, grid.signs()
    m, cap = grid.half, max_witnesses
    C = _grid_matrix(c, x)
    slack = tol * m

    ki, kj, kd = k[:, None, None], k[None, :, None], k[None, None, :]
    si, sj, sd = s[:, None, None], s[None, :, None], s[None, None, :]
    dist_j, dist_d = np.abs(kj - ki), np.abs(kd - ki)
    Cij, Cid = C[:, :, None], C[:, None, :]
    heavier = Cij > Cid + tol_strict
    wit = _triple_witness(x, C, "x_i", "x_j", "x_d")

    items = [
        _item("7a-1", (dist_j < dist_d - slack) & (sj * sd > 0), heavier, wit, cap),
        _item("7a-2", (np.abs(dist_j - dist_d) <= slack) & (ki * kj > ki * kd), heavier, wit, cap),
    ]

    # Existence: for each same-sign pair (x_i, x_d) that admits a closer
    # opposite-sign x_j, at least one such x_j must outweigh x_d.
    cand = (si * sj < 0) & (dist_j < dist_d - slack)
    pair = (si[:, :, 0] * s[None, :] > 0) & cand.any(axis=1)
    masked = np.where(cand, Cij, -np.inf)
    best_j = masked.argmax(axis=1)
    best_c = masked.max(axis=1)
    ok = best_c > C + tol_strict

    def exist_row(i, d):
        j = best_j[i, d]
        return {
            "x_i": float(x[i]),
            "x_d": float(x[d]),
            "c_x_d": float(C[i, d]),
            "best_x_j": float(x[j]),
            "c_best_x_j": float(C[i, j]),
            "zeta": abs(int(k[j] - k[i])) / abs(int(k[d] - k[i])),
        }

    exist = _item("7a-3-existence", pair, ok, exist_row, cap)
    exist.realizations = [exist_row(i, d) for i, d in np.argwhere(pair & ok)[:cap]]
    items.append(exist)
    items.append(_mirror_item("7b", x, k, C, tol_eq, cap))
    return ConditionReport("confirmation", grid.resolution, items)


def check_negativity(
    cbar: Callable,
    grid: GridSpec = GridSpec(),
    tol: float = 0.0,
    *,
    tol_strict: float = 0.0,
    tol_eq: float = 1e-12,
    max_witnesses: int = 1000,
) -> ConditionReport:
    """Test ``cbar(xbar_i, x_j)`` against the asymmetric negativity-bias conditions."""
    x, k, s = grid.values, grid.ints, grid.signs()
    m, cap = grid.half, max_witnesses
    C = _grid_matrix(cbar, x)
    slack = tol * m

    ki, kj, kd = k[:, None, None], k[None, :, None], k[None, None, :]
    si, sj, sd = s[:, None, None], s[None, :, None], s[None, None, :]
    dist_j, dist_d = np.abs(kj - ki), np.abs(kd - ki)
    Cij, Cid = C[:, :, None], C[:, None, :]
    heavier = Cij > Cid + tol_strict
    wit = _triple_witness(x, C, "xbar_i", "x_j", "x_d")

    items = [
        _item("8a-1", (dist_j > dist_d + slack) & (sj * sd > 0), heavier, wit, cap),
        _item("8a-2", (np.abs(dist_j - dist_d) <= slack) & (ki * kj < ki * kd), heavier, wit, cap),
    ]

    # Existence: for each same-sign pair (xbar_i, x_j) that admits a strictly
    # closer opposite-sign x_d, at least one such x_d must weigh less than x_j.
    cand = (si * sd < 0) & (dist_d < dist_j - slack)
    pair = (si[:, :, 0] * s[None, :] > 0) & cand.any(axis=2)
    masked = np.where(cand, Cid, np.inf)
    best_d = masked.argmin(axis=2)
    best_c = masked.min(axis=2)
    ok = C > best_c + tol_strict

    def exist_row(i, j):
        d = best_d[i, j]
        return {
            "xbar_i": float(x[i]),
            "x_j": float(x[j]),
            "c_x_j": float(C[i, j]),
            "best_x_d": float(x[d]),
            "c_best_x_d": float(C[i, d]),
            "zeta": abs(int(k[d] - k[i])) / abs(int(k[j] - k[i])),
        }

    exist = _item("8a-3-existence", pair, ok, exist_row, cap)
    exist.realizations = [exist_row(i, j) for i, j in np.argwhere(pair & ok)[:cap]]
    items.append(exist)
    items.append(_mirror_item("8b", x, k, C, tol_eq, cap))
    return ConditionReport("negativity", grid.resolution, items)


def _distinct_sorted(d: np.ndarray, merge: float = 1e-12) -> np.ndarray:
    d = np.unique(d)
    keep = [0]
    for idx in range(1, d.size):
        if d[idx] - d[keep[-1]] > merge * max(1.0, d[idx]):
            keep.append(idx)
    return d[keep]


def _check_theorem(prefix, increasing_g, f, g, grid, orientation, tol, tol_strict, tol_eq, cap):
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    x, k, s = grid.values, grid.ints, grid.signs()
    F = _apply(f, x)
    items = []

    # (a) monotonicity of g in the transformed distance
    D = _distinct_sorted(np.abs(F[:, None] - F[None, :]).ravel())
    G = _apply(g, D)
    step_ok = G[1:] > G[:-1] + tol_strict if increasing_g else G[1:] < G[:-1] - tol_strict
    bad = np.flatnonzero(~step_ok)
    items.append(
        ItemResult(
            f"{prefix}a",
            "fail" if bad.size else "pass",
            int(step_ok.size),
            int(bad.size),
            [{"d_lo": float(D[t]), "d_hi": float(D[t + 1]), "g_lo": float(G[t]), "g_hi": float(G[t + 1])}
             for t in bad[:cap]],
        )
    )

    # (b) f strictly increasing
    bad = np.flatnonzero(~(F[1:] > F[:-1]))
    items.append(
        ItemResult(
            f"{prefix}b",
            "fail" if bad.size else "pass",
            int(F.size - 1),
            int(bad.size),
            [{"x_lo": float(x[t]), "x_hi": float(x[t + 1]), "f_lo": float(F[t]), "f_hi": float(F[t + 1])}
             for t in bad[:cap]],
        )
    )

    # (c), (d) midpoint inequalities for opinions equidistant from the reference
    ki, kj, kd = k[:, None, None], k[None, :, None], k[None, None, :]
    si = s[:, None, None]
    equi = np.abs(np.abs(kj - ki) - np.abs(kd - ki)) <= tol * grid.half
    Fi = F[:, None, None]
    mid = (F[None, :, None] + F[None, None, :]) / 2
    above, below = Fi > mid + tol_strict, Fi < mid - tol_strict
    if orientation == "as-written":
        ok_c, ok_d = below, above
    else:
        ok_c, ok_d = above, below
    mid_full = np.broadcast_to(mid, (x.size,) * 3)

    def wit(i, j, d):
        return {"x_i": float(x[i]), "x_j": float(x[j]), "x_d": float(x[d]),
                "f_x_i": float(F[i]), "midpoint": float(mid_full[i, j, d])}

    items.append(_item(f"{prefix}c", equi & (kj > kd) & (si > 0), ok_c, wit, cap))
    items.append(_item(f"{prefix}d", equi & (kj < kd) & (si < 0), ok_d, wit, cap))

    # (e) f(0) is the midpoint of f(a) and f(-a)
    zero = int(np.flatnonzero(k == 0)[0])
    pos = np.flatnonzero(k > 0)
    neg = zero - (pos - zero)
    defect = np.abs(F[zero] - (F[pos] + F[neg]) / 2)
    bad = np.flatnonzero(~(defect <= tol_eq))
    items.append(ItemResult(
        f"{prefix}e",
        "fail" if bad.size else "pass",
        int(pos.size),
        int(bad.size),
        [{"a": float(x[pos[t]]), "f_0": float(F[zero]), "f_pos": float(F[pos[t]]), "f_neg": float(F[neg[t]])}
         for t in bad[:cap]],
    ))
    return items


def check_theorem1(
    f: Callable,
    g: Callable,
    grid: GridSpec = GridSpec(),
    orientation: str = "corrected",
    *,
    tol: float = 0.0,
    tol_strict: float = 0.0,
    tol_eq: float = 1e-12,
    max_witnesses: int = 1000,
) -> ConditionReport:
    """Check the confirmation-side conditions on a decomposition ``g(|f(a) - f(b)|)``.

    ``orientation="as-written"`` requires ``f(x_i)`` below the midpoint of
    ``f(x_j)`` and ``f(x_d)`` for positive ``x_i`` (and above it for negative
    ``x_i``); ``"corrected"`` reverses both. Only the corrected form agrees
    with item ``7a-2`` of :func:`check_confirmation`.
    """
    items = _check_theorem("11", False, f, g, grid, orientation, tol, tol_strict, tol_eq, max_witnesses)
    return ConditionReport("theorem1", grid.resolution, items, orientation)


def check_theorem2(
    f: Callable,
    g: Callable,
    grid: GridSpec = GridSpec(),
    orientation: str = "corrected",
    *,
    tol: float = 0.0,
    tol_strict: float = 0.0,
    tol_eq: float = 1e-12,
    max_witnesses: int = 1000,
) -> ConditionReport:
    """Negativity-side counterpart of :func:`check_theorem1` (``g`` increasing)."""
    items = _check_theorem("12", True, f, g, grid, orientation, tol, tol_strict, tol_eq, max_witnesses)
    return ConditionReport("theorem2", grid.resolution, items, orientation)


@dataclass(frozen=True)
class HKWitness:
    """Three opinions the bounded-confidence rule weighs identically.

    ``kind`` is ``"in-band"`` (both weights equal ``a``), ``"out-of-band"``
    (both zero) or ``"none"`` when no equal-weight triple was found.
    """

    kind: str
    x_i: float | None
    x_j: float | None
    x_h: float | None
    weight_j: float | None
    weight_h: float | None
    canonical: bool
    band_condition: bool

    def to_dict(self) -> dict:
        return asdict(self)


CANONICAL_TRIPLE = (0.1, 0.5, -0.3)


def hk_equal_weight_witness(eps_lo: float, eps_hi: float, a: float = 1.0, grid: GridSpec = GridSpec()) -> HKWitness:
    """Find opinions ``x_j``, ``x_h`` equidistant from ``x_i`` with equal HK weight.

    The canonical triple (0.1, 0.5, -0.3) is tried first. If its two weights
    differ, the grid is searched for an in-band pair instead.
    """
    from .bias import HKIndicator

    hk = HKIndicator(eps_lo, eps_hi, a)
    band = 0.4 < min(eps_hi, -eps_lo)
    xi, xj, xh = CANONICAL_TRIPLE
    wj, wh = float(hk(xi, xj)), float(hk(xi, xh))
    if wj == wh:
        kind = "in-band" if wj > 0 else "out-of-band"
        return HKWitness(kind, xi, xj, xh, wj, wh, True, band)

    report = check_confirmation(hk, grid)
    for w in report.item("7a-2").witnesses:
        if w["c_x_j"] == w["c_x_d"] and w["c_x_j"] > 0:
            return HKWitness("in-band", w["x_i"], w["x_j"], w["x_d"], w["c_x_j"], w["c_x_d"], False, band)
    return HKWitness("none", None, None, None, None, None, False, band)
