"""Globally adaptive cubature on 3D boxes.

Each region is integrated with the embedded degree-7/degree-5 rule of Genz
and Malik (33 nodes in 3D); the difference of the two estimates is the
region error. The regions with the largest errors are bisected along the
axis with the largest fourth difference until the tolerance is met or the
evaluation budget runs out.

Regions are refined in deterministic batches so that integrands are called
on large vectorised point sets. Results are reduced in region creation
order, so identical inputs give bit-identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Box3",
    "IntegratorConfig",
    "QuadResult",
    "IntegrandError",
    "integrate",
    "integrate_many",
    "genz_malik_rule",
]

DIM = 3
_TINY = 1e-300


@dataclass(frozen=True)
class Box3:
    lo: tuple[float, float, float]
    hi: tuple[float, float, float]

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != DIM or len(hi) != DIM:
            raise ValueError("Box3 needs three lower and three upper bounds")
        if not all(a < b for a, b in zip(lo, hi)):
            raise ValueError(f"need lo < hi in every coordinate, got {lo} / {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def volume(self) -> float:
        return math.prod(b - a for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True)
class IntegratorConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-6
    max_evals: int = 50_000_000
    max_regions: int = 2_000_000

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("abs_tol and rel_tol cannot both be zero")
        if self.max_evals <= 0:
            raise ValueError("max_evals must be positive")
        if self.max_regions <= 0:
            raise ValueError("max_regions must be positive")

    def tolerance(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_est: float
    n_evals: int
    n_regions: int
    converged: bool


class IntegrandError(ArithmeticError):
    """Raised when the integrand returns a non-finite value."""

    def __init__(self, point, value):
        self.point = tuple(float(v) for v in point)
        self.value = value
        super().__init__(f"integrand is not finite at {self.point}: {value!r}")


@dataclass(frozen=True)
class _Rule:
    nodes: np.ndarray  # (n_nodes, DIM) on [-1, 1]^DIM
    w7: np.ndarray
    w5: np.ndarray
    plus2: np.ndarray  # node index of +lambda2 e_i, per axis
    minus2: np.ndarray
    plus3: np.ndarray
    minus3: np.ndarray
    ratio: float  # (lambda2 / lambda3)^2


def genz_malik_rule(n: int = DIM) -> _Rule:
    """Nodes and weights (normalised to unit total) of the Genz-Malik rule."""
    l2 = math.sqrt(9.0 / 70.0)
    l3 = math.sqrt(9.0 / 10.0)
    l4 = math.sqrt(9.0 / 10.0)
    l5 = math.sqrt(9.0 / 19.0)
    w = [
        (12824 - 9120 * n + 400 * n * n) / 19683,
        980 / 6561,
        (1820 - 400 * n) / 19683,
        200 / 19683,
        6859 / 19683 / 2**n,
    ]
    v = [
        (729 - 950 * n + 50 * n * n) / 729,
        245 / 486,
        (265 - 100 * n) / 1458,
        25 / 729,
        0.0,
    ]
    nodes, w7, w5 = [np.zeros(n)], [w[0]], [v[0]]
    plus2, minus2, plus3, minus3 = [], [], [], []
    for lam, group, plus, minus in ((l2, 1, plus2, minus2), (l3, 2, plus3, minus3)):
        for i in range(n):
            for sign, store in ((1.0, plus), (-1.0, minus)):
                e = np.zeros(n)
                e[i] = sign * lam
                store.append(len(nodes))
                nodes.append(e)
                w7.append(w[group])
                w5.append(v[group])
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in product((1.0, -1.0), repeat=2):
                e = np.zeros(n)
                e[i], e[j] = si * l4, sj * l4
                nodes.append(e)
                w7.append(w[3])
                w5.append(v[3])
    for signs in product((1.0, -1.0), repeat=n):
        nodes.append(l5 * np.array(signs))
        w7.append(w[4])
        w5.append(v[4])
    return _Rule(
        nodes=np.array(nodes),
        w7=np.array(w7),
        w5=np.array(w5),
        plus2=np.array(plus2),
        minus2=np.array(minus2),
        plus3=np.array(plus3),
        minus3=np.array(minus3),
        ratio=(l2 / l3) ** 2,
    )


_RULE = genz_malik_rule(DIM)
NODES_PER_REGION = len(_RULE.nodes)


def _as_channels(values, n_points):
    """Complex integrand output -> real array (n_points, 2 * n_outputs)."""
    values = np.asarray(values)
    if values.ndim == 1:
        values = values[:, None]
    if values.shape[0] != n_points:
        raise ValueError(f"integrand returned {values.shape[0]} values for {n_points} points")
    values = values.astype(complex, copy=False)
    out = np.empty((n_points, 2 * values.shape[1]))
    out[:, 0::2] = values.real
    out[:, 1::2] = values.imag
    return out


def _apply_rule(f, centers, halves):
    """Integrate each region; returns estimate, error and split axis."""
    n_reg = len(centers)
    pts = centers[:, None, :] + _RULE.nodes[None, :, :] * halves[:, None, :]
    flat = pts.reshape(-1, DIM)
    vals = _as_channels(f(flat), len(flat))
    if not np.all(np.isfinite(vals)):
        bad = int(np.argwhere(~np.all(np.isfinite(vals), axis=1))[0, 0])
        raise IntegrandError(flat[bad], vals[bad])
    vals = vals.reshape(n_reg, NODES_PER_REGION, -1)
    vol = np.prod(2.0 * halves, axis=1)[:, None]
    i7 = vol * np.einsum("rpc,p->rc", vals, _RULE.w7)
    i5 = vol * np.einsum("rpc,p->rc", vals, _RULE.w5)
    err = np.abs(i7 - i5)
    f0 = vals[:, :1, :]
    d2 = vals[:, _RULE.plus2, :] + vals[:, _RULE.minus2, :] - 2.0 * f0
    d3 = vals[:, _RULE.plus3, :] + vals[:, _RULE.minus3, :] - 2.0 * f0
    fourth = np.abs(d2 - _RULE.ratio * d3).sum(axis=2)
    # argmax picks the lowest axis on ties
    axis = np.argmax(fourth, axis=1)
    return i7, err, axis


def _initial_regions(box: Box3, divisions):
    lo = np.array(box.lo)
    width = (np.array(box.hi) - lo) / np.array(divisions)
    cells = np.array(list(product(*(range(d) for d in divisions))), dtype=float)
    centers = lo + (cells + 0.5) * width
    halves = np.tile(0.5 * width, (len(cells), 1))
    return centers, halves


def integrate_many(
    f: Callable[[np.ndarray], np.ndarray],
    box: Box3,
    cfg: IntegratorConfig = IntegratorConfig(),
    *,
    initial_divisions: Sequence[int] = (1, 1, 1),
    batch_limit: int = 4096,
) -> list[QuadResult]:
    """Integrate a vector of complex functions over ``box`` on shared regions.

    ``f`` maps an ``(n, 3)`` array of points to ``(n,)`` or ``(n, m)`` values.
    Each of the ``m`` outputs gets its own :class:`QuadResult`; refinement is
    driven by the output furthest from its tolerance.
    """
    divisions = tuple(int(d) for d in initial_divisions)
    if len(divisions) != DIM or min(divisions) < 1:
        raise ValueError(f"initial_divisions must be three positive integers, got {divisions}")
    centers, halves = _initial_regions(box, divisions)
    est, err, axis = _apply_rule(f, centers, halves)
    n_evals = len(centers) * NODES_PER_REGION
    n_out = est.shape[1] // 2
    per_split = 2 * NODES_PER_REGION

    while True:
        total = est.sum(axis=0)
        total_err = err.sum(axis=0)
        values = total[0::2] + 1j * total[1::2]
        errors = np.maximum(total_err[0::2], total_err[1::2])
        tols = np.array([cfg.tolerance(v) for v in values])
        converged = errors <= tols
        if converged.all():
            break
        room = min((cfg.max_evals - n_evals) // per_split, cfg.max_regions - len(est))
        if room <= 0:
            break
        region_err = np.maximum(err[:, 0::2], err[:, 1::2])
        priority = (region_err / np.maximum(tols, _TINY)).max(axis=1)
        order = np.lexsort((np.arange(len(priority)), -priority))
        cum = np.cumsum(priority[order])
        n_half = int(np.searchsorted(cum, 0.5 * cum[-1])) + 1
        k = min(max(n_half, min(len(order), 8)), batch_limit, room)
        chosen = np.sort(order[:k])

        c, h, ax = centers[chosen], halves[chosen].copy(), axis[chosen]
        rows = np.arange(k)
        h[rows, ax] *= 0.5
        shift = np.zeros_like(h)
        shift[rows, ax] = h[rows, ax]
        child_c = np.concatenate([c - shift, c + shift])
        child_h = np.concatenate([h, h])
        c_est, c_err, c_axis = _apply_rule(f, child_c, child_h)
        n_evals += len(child_c) * NODES_PER_REGION

        keep = np.ones(len(est), dtype=bool)
        keep[chosen] = False
        centers = np.concatenate([centers[keep], child_c])
        halves = np.concatenate([halves[keep], child_h])
        est = np.concatenate([est[keep], c_est])
        err = np.concatenate([err[keep], c_err])
        axis = np.concatenate([axis[keep], c_axis])

    return [
        QuadResult(
            value=complex(values[j]),
            error_est=float(errors[j]),
            n_evals=n_evals,
            n_regions=len(est),
            converged=bool(converged[j]),
        )
        for j in range(n_out)
    ]


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    box: Box3,
    cfg: IntegratorConfig = IntegratorConfig(),
    **kwargs,
) -> QuadResult:
    """Integrate a single complex-valued function over ``box``."""
    results = integrate_many(f, box, cfg, **kwargs)
    if len(results) != 1:
        raise ValueError(f"integrand has {len(results)} outputs; use integrate_many")
    return results[0]
