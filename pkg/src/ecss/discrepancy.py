"""Extreme discrepancy of unit-cube point sets, and the closed-form bound evaluators."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .combinat import alpha
from .curve import is_prime
from .errors import ScaleGuardError, ValidationError
from .generator import PointSet

MAX_EXACT_MULTI_WORK = 10**8  # N^(2s)

EXACT = "exact"
MC_LOWER_BOUND = "monte-carlo-lower-bound"


@dataclass(frozen=True)
class DiscrepancyReport:
    n: int
    s: int
    value: float
    method: str
    elapsed: float


def _as_rows(points) -> np.ndarray:
    if isinstance(points, PointSet):
        return points.rows
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValidationError("points must form a nonempty (N, s) array")
    if arr.min() < 0.0 or arr.max() >= 1.0:
        raise ValidationError("coordinates must lie in [0, 1)")
    return arr


def _scan_excess(counts: np.ndarray, vals: np.ndarray, w: float, n_total: int) -> float:
    """max over i <= j of (#points in closed [vals[i], vals[j]])/N - w (vals[j] - vals[i])."""
    prefix = np.cumsum(counts)
    below = prefix - counts  # points at candidates strictly left of i
    left = np.maximum.accumulate(w * vals - below / n_total)
    return float(np.max(prefix / n_total - w * vals + left))


def _scan_deficit(counts: np.ndarray, vals: np.ndarray, w: float, n_total: int) -> float:
    """max over i < j of w (vals[j] - vals[i]) - (#points in open (vals[i], vals[j]))/N."""
    if len(vals) < 2:
        return 0.0
    prefix = np.cumsum(counts)  # points at candidates <= k
    f = prefix / n_total - w * vals  # left endpoint: points at it are excluded
    g = w * vals - np.concatenate([[0.0], prefix[:-1]]) / n_total
    left = np.maximum.accumulate(f[:-1])
    return float(np.max(g[1:] + left))


def exact_extreme_1d(points) -> DiscrepancyReport:
    """Exact sup over intervals [a, b) of |count/N - (b - a)|.

    Scans the sorted coordinates once for the excess case (interval closed at
    both candidate endpoints in the limit) and once for the deficit case
    (open at both, with 0 and 1 as extra candidates); the sup over half-open
    intervals equals the max over this finite family.
    """
    start = time.perf_counter()
    rows = _as_rows(points)
    if rows.shape[1] != 1:
        raise ValidationError("one-dimensional routine got multi-column points")
    pts = rows[:, 0]
    n_total = len(pts)
    vals, counts = np.unique(pts, return_counts=True)
    excess = _scan_excess(counts, vals, 1.0, n_total)

    deficit_vals = np.unique(np.concatenate([vals, [0.0, 1.0]]))
    deficit_counts = np.zeros(len(deficit_vals))
    deficit_counts[np.searchsorted(deficit_vals, vals)] = counts
    deficit = _scan_deficit(deficit_counts, deficit_vals, 1.0, n_total)

    value = max(excess, deficit)
    return DiscrepancyReport(n_total, 1, value, EXACT, time.perf_counter() - start)


def _axis_candidates(rows: np.ndarray):
    cands = []
    idx = []
    for axis in range(rows.shape[1]):
        c = np.unique(np.concatenate([rows[:, axis], [0.0, 1.0]]))
        cands.append(c)
        idx.append(np.searchsorted(c, rows[:, axis]))
    return cands, idx


def _extreme_2d(rows: np.ndarray, n_total: int) -> float:
    (xs, ys), (xi, yi) = _axis_candidates(rows)
    tally = np.zeros((len(xs), len(ys)))
    np.add.at(tally, (xi, yi), 1.0)
    cum = np.cumsum(tally, axis=0)
    zero = np.zeros(len(ys))
    best = 0.0
    for i in range(len(xs)):
        closed_lo = cum[i - 1] if i else zero
        for j in range(i, len(xs)):
            w = xs[j] - xs[i]
            closed = cum[j] - closed_lo
            best = max(best, _scan_excess(closed, ys, w, n_total))
            if j > i:
                open_ = cum[j - 1] - cum[i] if j - i >= 2 else zero
                best = max(best, _scan_deficit(open_, ys, w, n_total))
    return best


def _extreme_3d(rows: np.ndarray, n_total: int) -> float:
    (xs, ys, zs), (xi, yi, zi) = _axis_candidates(rows)
    tally = np.zeros((len(xs), len(ys), len(zs)))
    np.add.at(tally, (xi, yi, zi), 1.0)
    cum = np.cumsum(np.cumsum(tally, axis=0), axis=1)
    padded = np.zeros((len(xs) + 1, len(ys) + 1, len(zs)))
    padded[1:, 1:, :] = cum
    best = 0.0
    for i0 in range(len(xs)):
        for j0 in range(i0, len(xs)):
            wx = xs[j0] - xs[i0]
            for i1 in range(len(ys)):
                for j1 in range(i1, len(ys)):
                    w = wx * (ys[j1] - ys[i1])
                    closed = (
                        padded[j0 + 1, j1 + 1]
                        - padded[i0, j1 + 1]
                        - padded[j0 + 1, i1]
                        + padded[i0, i1]
                    )
                    best = max(best, _scan_excess(closed, zs, w, n_total))
                    if j0 > i0 and j1 > i1:
                        open_ = (
                            padded[j0, j1] - padded[i0 + 1, j1] - padded[j0, i1 + 1] + padded[i0 + 1, i1 + 1]
                        )
                        best = max(best, _scan_deficit(open_, zs, w, n_total))
    return best


def exact_extreme_multi(points, s: int) -> DiscrepancyReport:
    """Exact extreme discrepancy in dimension 2 or 3.

    Per-axis box candidates are the point coordinates plus 0 and 1; face
    inclusion is resolved by evaluating the closed-box and open-box limits,
    whose max over the candidate family equals the true sup over half-open
    boxes.  Guarded by N^(2s) <= 1e8.
    """
    start = time.perf_counter()
    if s not in (2, 3):
        raise ValidationError("exact multi-dimensional discrepancy supports s in {2, 3}")
    rows = _as_rows(points)
    if rows.shape[1] != s:
        raise ValidationError(f"points have {rows.shape[1]} columns, expected {s}")
    n_total = rows.shape[0]
    if n_total ** (2 * s) > MAX_EXACT_MULTI_WORK:
        raise ScaleGuardError(f"N^(2s) = {n_total ** (2 * s)} exceeds {MAX_EXACT_MULTI_WORK}")
    value = _extreme_2d(rows, n_total) if s == 2 else _extreme_3d(rows, n_total)
    return DiscrepancyReport(n_total, s, value, EXACT, time.perf_counter() - start)


def mc_box_lower_bound(points, trials: int, seed: int) -> DiscrepancyReport:
    """Monte-Carlo lower bound: max deviation over sampled half-open boxes.

    Half the face candidates snap to point coordinates, which is where the
    sup lives; every sampled box is a genuine box, so the result never
    exceeds the exact value.  Deterministic for a fixed seed.
    """
    start = time.perf_counter()
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    rows = _as_rows(points)
    n_total, s = rows.shape
    rng = np.random.default_rng(seed)
    best = 0.0
    chunk = max(1, min(trials, 10**6 // max(1, n_total * s)))
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        lo = rng.random((m, s))
        hi = rng.random((m, s))
        lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
        snap = rng.random((m, s)) < 0.5
        picks = rows[rng.integers(0, n_total, size=(m, s)), np.arange(s)[None, :]]
        lo = np.where(snap, np.minimum(picks, hi), lo)
        inside = (rows[None, :, :] >= lo[:, None, :]) & (rows[None, :, :] < hi[:, None, :])
        count = inside.all(axis=2).sum(axis=1)
        vol = np.prod(hi - lo, axis=1)
        best = max(best, float(np.max(np.abs(count / n_total - vol))))
        done += m
    return DiscrepancyReport(n_total, s, best, MC_LOWER_BOUND, time.perf_counter() - start)


@dataclass(frozen=True)
class BoundInputs:
    """Arguments of the closed-form discrepancy bounds."""

    n: int
    p: int
    r: int
    tau: int
    delta: float
    s: int | None = None

    def __post_init__(self):
        if not 1 <= self.n <= self.tau:
            raise ValidationError("need 1 <= N <= tau")
        if self.delta <= 0:
            raise ValidationError("delta must be positive")
        if self.r < 1:
            raise ValidationError("r must be >= 1")
        if not is_prime(self.p):
            raise ValidationError(f"p = {self.p} is not prime")
        if self.s is not None and self.s < 1:
            raise ValidationError("s must be >= 1 when given")


def discrepancy_bound_1d(inputs: BoundInputs) -> float:
    """Average-case bound with the 3^(r/2) window-pair term; natural logs throughout."""
    n, p, r = inputs.n, inputs.p, inputs.r
    core = n**-0.5 + 3.0 ** (r / 2.0) / n * p**-0.25 + p**-0.5
    return core * math.log(inputs.tau) ** 2 * math.log(p) / inputs.delta


def discrepancy_bound_multi(inputs: BoundInputs) -> float:
    """s-dimensional bound with the alpha_s^(r/2) term; requires s >= 2."""
    if inputs.s is None or inputs.s < 2:
        raise ValidationError("multi-dimensional bound needs s >= 2")
    n, p, r, s = inputs.n, inputs.p, inputs.r, inputs.s
    lp = math.log(p)
    core = n**-0.5 * lp + p**-0.5 * lp + alpha(s) ** (r / 2.0) / n * lp**s
    return core * math.log(inputs.tau) ** 2 / inputs.delta


def elmahassni_bound(inputs: BoundInputs) -> float:
    """El Mahassni's earlier one-dimensional bound, for comparison."""
    n, p = inputs.n, inputs.p
    core = n**-0.5 + p**-0.25
    return core * math.log(inputs.tau) ** 2 * math.log(p) / inputs.delta


def nontrivial_exponent(s: int) -> float:
    """Exponent gamma_s = log(alpha_s) / (2 log 2); below 1 for every s."""
    if s < 1:
        raise ValidationError("s must be >= 1")
    return math.log(alpha(s)) / (2.0 * math.log(2.0))
