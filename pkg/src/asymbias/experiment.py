"""Experiment configuration, random instances and artifact writers.

Random instances use SplitMix64 so that other implementations can reproduce
them draw for draw:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    z = z ^ (z >> 31)
    uniform = (z >> 11) * 2**-53              # in [0, 1)

``generate_instance`` draws, for ``i`` then ``j`` in row-major order with
``i != j``, one uniform ``u``; if ``u < edge_probability`` a second uniform
``v`` gives the weight ``lo + (hi - lo) * v``. It then draws ``n`` more
uniforms ``u`` and sets ``x0_i = 2 * u - 1``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bias import (
    HKIndicator,
    LinearSymmetric,
    dandekar_coefficient,
    eval_dandekar_step,
    family_from_spec,
)
from .dynamics import ModelConfig, Trajectory
from .network import InfluenceGraph, as_opinions, read_edge_list
from .verifier import hk_equal_weight_witness

MASK64 = (1 << 64) - 1


class ConfigError(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    edge_probability: float
    weight_range: tuple[float, float]
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.edge_probability <= 1:
            raise ValueError(f"edge_probability must lie in [0, 1], got {self.edge_probability}")
        lo, hi = self.weight_range
        if not (0 < lo <= hi < float("inf")):
            raise ValueError(f"weight_range must satisfy 0 < lo <= hi < inf, got {self.weight_range}")


def generate_instance(spec: GeneratorSpec) -> tuple[InfluenceGraph, np.ndarray]:
    rng = SplitMix64(spec.seed)
    lo, hi = spec.weight_range
    w = np.zeros((spec.n, spec.n))
    for i in range(spec.n):
        for j in range(spec.n):
            if i == j:
                continue
            if rng.uniform() < spec.edge_probability:
                w[i, j] = lo + (hi - lo) * rng.uniform()
    x0 = np.array([2.0 * rng.uniform() - 1.0 for _ in range(spec.n)])
    return InfluenceGraph(w), x0


def uniform_opinions(n: int, seed: int) -> np.ndarray:
    rng = SplitMix64(seed)
    return np.array([2.0 * rng.uniform() - 1.0 for _ in range(n)])


# -- configuration -----------------------------------------------------------


@dataclass
class Experiment:
    graph: InfluenceGraph
    model: ModelConfig
    x0: np.ndarray
    K: int
    conv_tol: float
    csv_name: str
    json_name: str
    echo: dict


def _get(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ConfigError(f"missing '{key}' in {where}")
    return d[key]


def _seed(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= MASK64:
        raise ConfigError(f"{where} must be an unsigned 64-bit integer, got {value!r}")
    return value


def _family(spec, where: str):
    if not isinstance(spec, dict):
        raise ConfigError(f"{where} must be an object with 'family' and 'params'")
    try:
        return family_from_spec(_get(spec, "family", where), spec.get("params", {}))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def load_experiment(path) -> Experiment:
    """Parse an experiment JSON document.

    Relative edge-list paths resolve against the config file's directory.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    return build_experiment(raw, base_dir=path.parent)


def build_experiment(raw: dict, base_dir=".") -> Experiment:
    base_dir = Path(base_dir)
    graph_spec = _get(raw, "graph", "config")
    generated_x0 = None
    if not isinstance(graph_spec, dict) or ("edge_list" in graph_spec) == ("generate" in graph_spec):
        raise ConfigError("graph must contain exactly one of 'edge_list' or 'generate'")
    try:
        if "edge_list" in graph_spec:
            n = int(_get(graph_spec, "n", "graph"))
            edge_path = base_dir / graph_spec["edge_list"]
            try:
                graph = read_edge_list(edge_path, n)
            except FileNotFoundError:
                raise ConfigError(f"edge-list file not found: {edge_path}") from None
        else:
            gen = graph_spec["generate"]
            spec = GeneratorSpec(
                n=int(_get(gen, "n", "graph.generate")),
                edge_probability=float(_get(gen, "edge_probability", "graph.generate")),
                weight_range=tuple(float(v) for v in _get(gen, "weight_range", "graph.generate")),
                seed=_seed(_get(gen, "seed", "graph.generate"), "graph.generate.seed"),
            )
            graph, generated_x0 = generate_instance(spec)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"graph: {exc}") from None

    x0_spec = _get(raw, "x0", "config")
    try:
        if x0_spec == "generated":
            if generated_x0 is None:
                raise ConfigError("x0 = 'generated' requires a generated graph")
            x0 = generated_x0
        elif isinstance(x0_spec, dict):
            uni = _get(x0_spec, "uniform", "x0")
            x0 = uniform_opinions(graph.n, _seed(_get(uni, "seed", "x0.uniform"), "x0.uniform.seed"))
        else:
            x0 = as_opinions(x0_spec, "x0")
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"x0: {exc}") from None
    if x0.shape != (graph.n,):
        raise ConfigError(f"x0 has {x0.size} entries, graph has n={graph.n}")

    m = _get(raw, "model", "config")
    s = _get(m, "s", "model")
    s = x0 if s == "x0" else s
    try:
        model = ModelConfig(
            s=s,
            beta=_get(m, "beta", "model"),
            conf=_family(_get(m, "conf", "model"), "model.conf"),
            neg=_family(_get(m, "neg", "model"), "model.neg"),
            norm_mode=m.get("norm_mode", "rescale"),
            alpha_target=float(m.get("alpha_target", 0.2)),
            include_self=bool(m.get("include_self", True)),
        )
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"model: {exc}") from None
    if model.n != graph.n:
        raise ConfigError(f"model.s has {model.n} entries, graph has n={graph.n}")

    run_spec = raw.get("run", {})
    K = run_spec.get("K", 100)
    conv_tol = run_spec.get("conv_tol", 0.0)
    if isinstance(K, bool) or not isinstance(K, int) or K < 0:
        raise ConfigError(f"run.K must be a nonnegative integer, got {K!r}")
    if not isinstance(conv_tol, (int, float)) or conv_tol < 0:
        raise ConfigError(f"run.conv_tol must be a nonnegative number, got {conv_tol!r}")
    out = raw.get("output", {})
    return Experiment(
        graph=graph,
        model=model,
        x0=x0,
        K=K,
        conv_tol=float(conv_tol),
        csv_name=out.get("csv", "trajectory.csv"),
        json_name=out.get("json", "trajectory.json"),
        echo=raw,
    )


# -- writers -----------------------------------------------------------------


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def trajectory_csv(tr: Trajectory) -> str:
    """Row ``k`` holds ``x(k)`` and the alphas that produced it (blank at ``k = 0``)."""
    n = tr.states.shape[1]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k"] + [f"x_{i}" for i in range(n)] + [f"alpha_{i}" for i in range(n)])
    for k, x in enumerate(tr.states):
        alphas = [fmt(a) for a in tr.alphas[k - 1]] if k > 0 else [""] * n
        w.writerow([k] + [fmt(v) for v in x] + alphas)
    return buf.getvalue()


def trajectory_json(tr: Trajectory, echo: dict | None = None) -> str:
    doc = {
        "config": echo,
        "states": tr.states.tolist(),
        "alphas": tr.alphas.tolist(),
        "converged_at": tr.converged_at,
    }
    return json.dumps(doc, indent=1, allow_nan=True) + "\n"


def surface_csv(fam, resolution: int) -> str:
    """Weight surface on a ``resolution`` x ``resolution`` grid over [-1, 1]^2, row-major."""
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    r = resolution - 1
    x = (2 * np.arange(resolution) - r) / r
    C = fam(x[:, None], x[None, :])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x_i", "x_j", "c"])
    for a in range(resolution):
        for b in range(resolution):
            w.writerow([fmt(x[a]), fmt(x[b]), fmt(C[a, b])])
    return buf.getvalue()


def baselines(eps_lo: float = -0.5, eps_hi: float = 0.5, hk_a: float = 1.0) -> dict:
    """The three symmetric-baseline demonstrations as plain data."""
    lin = LinearSymmetric(0.6, 0.5)
    xi, xj, xh = 0.1, 0.5, -0.3
    linear = {
        "model": lin.to_spec(),
        "x_i": xi,
        "x_j": xj,
        "x_h": xh,
        "distance_j": abs(xi - xj),
        "distance_h": abs(xi - xh),
        "weight_j": float(lin(xi, xj)),
        "weight_h": float(lin(xi, xh)),
        "equal": float(lin(xi, xj)) == float(lin(xi, xh)),
    }
    hk = hk_equal_weight_witness(eps_lo, eps_hi, hk_a)
    hk_doc = {"model": HKIndicator(eps_lo, eps_hi, hk_a).to_spec(), **hk.to_dict()}
    hk_doc["band_condition_text"] = "0.4 < min(eps_hi, -eps_lo)"
    dandekar = {"w_ii": 1.0, "w_ij": 1.0, "b_i": 2.0, "x_i": 0.5, "cases": []}
    for x_j in (0.1, 0.9):
        dandekar["cases"].append(
            {
                "x_j": x_j,
                "coefficient": dandekar_coefficient(1.0, 1.0, 2.0, 0.5, x_j),
                "next_x_i": eval_dandekar_step(1.0, 1.0, 2.0, 0.5, x_j),
            }
        )
    return {"linear_symmetric": linear, "hk_indicator": hk_doc, "dandekar": dandekar}


def write_text(path, text: str):
    path = Path(path)
    if path.parent and not path.parent.exists():
        os.makedirs(path.parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
