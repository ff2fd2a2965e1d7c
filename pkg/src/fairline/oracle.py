"""Exact and brute-force minimization of objectives over facility locations.

Every per-group constituent (total, average, max cost, min cost) is piecewise
linear in the facility location, with kinks only at agent locations and at
midpoints between same-group agents. Between consecutive points of that grid
each constituent is a straight line, so an objective built from maxima of
constituents can only attain its minimum at a grid point or at a crossing of
two constituent lines inside an interval. Enumerating those candidates gives
an exact global optimum; a uniform-grid evaluator provides the independent
cross-check.

Outside the agent span every objective is nondecreasing moving away, so the
search is confined to [x_1, x_n]. For the ratio family (alt form "b") each
linear piece of the quotient is monotone between candidates, so the same
candidate set stays exact; candidates where the objective is +inf are skipped
unless no finite candidate exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mechanisms import MechanismLike, as_mechanism_fn
from .model import GroupedProfile
from .objectives import ObjectiveSpec, _spread, eval_outcome, eval_point, group_stat

_MERGE_TOL = 1e-12
_GRID_CHUNK = 1 << 16


class UnboundedObjectiveError(ValueError):
    """Every candidate location evaluates to +inf (degenerate ratio instance)."""


@dataclass(frozen=True)
class OptimalResult:
    """A global minimizer, its value, and every candidate point achieving it."""

    location: float
    value: float
    minimizers: tuple[float, ...]


@dataclass(frozen=True)
class RatioReport:
    """Mechanism value against the exact optimum.

    When the optimum is exactly zero the ratio is 1 if the mechanism value is
    also zero and +inf otherwise.
    """

    mechanism_value: float
    optimal: OptimalResult
    ratio: float


def _merge_close(sorted_points: list[float]) -> list[float]:
    out: list[float] = []
    for p in sorted_points:
        if not out or p - out[-1] > _MERGE_TOL:
            out.append(p)
    return out


def breakpoints(profile: GroupedProfile, spec: ObjectiveSpec | None = None) -> tuple[float, ...]:
    """Kink grid: agent locations plus same-group pairwise midpoints.

    The same set is returned for every objective; it is a superset of the
    kinks of every constituent function of every objective.
    """
    pts = set(profile.locations)
    for locs in profile.group_locations:
        for i in range(len(locs)):
            for j in range(i + 1, len(locs)):
                pts.add((locs[i] + locs[j]) / 2.0)
    return tuple(_merge_close(sorted(pts)))


def _family_values(profile: GroupedProfile, spec: ObjectiveSpec, y: float) -> tuple[tuple[float, ...], ...]:
    """Per-group values of each linear-constituent family at y.

    One family for max-of-lines objectives; two for iif1, whose two maxima
    move independently.
    """
    groups = profile.group_locations
    kind = spec.kind
    if kind == "mtgc":
        return (tuple(sum(abs(y - x) for x in locs) for locs in groups),)
    if kind == "magc":
        return (tuple(sum(abs(y - x) for x in locs) / len(locs) for locs in groups),)
    if kind in ("iif1", "iif2"):
        avgs = []
        spreads = []
        for locs in groups:
            avgs.append(sum(abs(y - x) for x in locs) / len(locs))
            spreads.append(_spread(locs, y))
        if kind == "iif1":
            return (tuple(avgs), tuple(spreads))
        return (tuple(a + s for a, s in zip(avgs, spreads)),)
    return (tuple(group_stat(locs, y, spec.h) for locs in groups),)


def _combine(spec: ObjectiveSpec, fams: tuple[tuple[float, ...], ...]) -> float:
    if spec.kind == "iif1":
        return max(fams[0]) + max(fams[1])
    values = fams[0]
    if spec.kind == "alt":
        hi, lo = max(values), min(values)
        if spec.form == "a":
            return hi - lo
        if lo <= 0.0:
            return 1.0 if hi <= 0.0 else math.inf
        return hi / lo
    return max(values)


def _crossing_candidates(
    spec: ObjectiveSpec,
    a: float,
    fam_a: tuple[tuple[float, ...], ...],
    b: float,
    fam_b: tuple[tuple[float, ...], ...],
) -> list[tuple[float, float]]:
    """Objective values at interior crossings of constituent lines on [a, b]."""
    ts: set[float] = set()
    for va, vb in zip(fam_a, fam_b):
        for i in range(len(va)):
            for j in range(i + 1, len(va)):
                da = va[i] - va[j]
                db = vb[i] - vb[j]
                if da == db:
                    continue
                t = da / (da - db)
                if _MERGE_TOL < t < 1.0 - _MERGE_TOL:
                    ts.add(t)
    out = []
    for t in sorted(ts):
        y = a + t * (b - a)
        fams_t = tuple(
            tuple(va[i] + t * (vb[i] - va[i]) for i in range(len(va)))
            for va, vb in zip(fam_a, fam_b)
        )
        out.append((y, _combine(spec, fams_t)))
    return out


def optimize(profile: GroupedProfile, spec: ObjectiveSpec) -> OptimalResult:
    """Exact global minimum of the objective over facility locations.

    Returns the leftmost minimizer; `minimizers` lists every evaluated
    candidate tied with the optimum up to rounding noise.
    """
    x1, xn = profile.span
    if xn - x1 <= 0.0:
        value = eval_point(profile, spec, x1)
        if math.isinf(value):
            raise UnboundedObjectiveError(f"{spec.label} is unbounded on this instance")
        return OptimalResult(x1, value, (x1,))

    candidates: list[tuple[float, float]]
    if spec.kind in ("mtgc", "magc"):
        # Convex objectives: kinks sit only at agent locations, and the true
        # minimum lies in one of the two intervals around the best kink.
        pts = _merge_close(sorted(set(profile.locations)))
        fams = [_family_values(profile, spec, y) for y in pts]
        values = [_combine(spec, f) for f in fams]
        i0 = values.index(min(values))
        candidates = list(zip(pts, values))
        for lo in (i0 - 1, i0):
            hi = lo + 1
            if 0 <= lo and hi < len(pts):
                candidates.extend(
                    _crossing_candidates(spec, pts[lo], fams[lo], pts[hi], fams[hi])
                )
    else:
        pts = list(breakpoints(profile, spec))
        fam_prev = _family_values(profile, spec, pts[0])
        candidates = [(pts[0], _combine(spec, fam_prev))]
        for i in range(len(pts) - 1):
            a, b = pts[i], pts[i + 1]
            fam_next = _family_values(profile, spec, b)
            candidates.extend(_crossing_candidates(spec, a, fam_prev, b, fam_next))
            candidates.append((b, _combine(spec, fam_next)))
            fam_prev = fam_next

    finite = [(y, v) for y, v in candidates if not math.isinf(v)]
    if not finite:
        raise UnboundedObjectiveError(f"{spec.label} is +inf at every candidate location")
    vmin = min(v for _, v in finite)
    # Tie tolerance tracks rounding noise only, so every listed minimizer
    # re-evaluates to the optimum far inside the package-wide 1e-9 tolerance.
    tie_tol = 1e-12 * max(1.0, abs(vmin))
    minimizers = _merge_close(sorted(y for y, v in finite if v <= vmin + tie_tol))
    location = minimizers[0]
    return OptimalResult(location, eval_point(profile, spec, location), tuple(minimizers))


def _distinct_weighted(profile: GroupedProfile) -> list[tuple[np.ndarray, np.ndarray, int]]:
    out = []
    for locs in profile.group_locations:
        distinct: dict[float, int] = {}
        for x in locs:
            distinct[x] = distinct.get(x, 0) + 1
        xs = np.array(sorted(distinct), dtype=float)
        counts = np.array([distinct[x] for x in sorted(distinct)], dtype=float)
        out.append((xs, counts, len(locs)))
    return out


def _grid_values(groups: list[tuple[np.ndarray, np.ndarray, int]], spec: ObjectiveSpec, ys: np.ndarray) -> np.ndarray:
    totals = []
    avgs = []
    spreads = []
    stats = []
    for xs, counts, size in groups:
        diffs = np.abs(ys[:, None] - xs[None, :])
        total = diffs @ counts
        if spec.kind == "mtgc":
            totals.append(total)
            continue
        if spec.kind == "magc":
            avgs.append(total / size)
            continue
        if spec.kind in ("iif1", "iif2"):
            avgs.append(total / size)
            spreads.append(diffs.max(axis=1) - diffs.min(axis=1))
            continue
        if spec.h == "total":
            stats.append(total)
        elif spec.h == "average":
            stats.append(total / size)
        else:
            stats.append(diffs.max(axis=1))
    if spec.kind == "mtgc":
        return np.maximum.reduce(totals)
    if spec.kind == "magc":
        return np.maximum.reduce(avgs)
    if spec.kind == "iif1":
        return np.maximum.reduce(avgs) + np.maximum.reduce(spreads)
    if spec.kind == "iif2":
        return np.maximum.reduce([a + s for a, s in zip(avgs, spreads)])
    hi = np.maximum.reduce(stats)
    lo = np.minimum.reduce(stats)
    if spec.form == "a":
        return hi - lo
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(lo > 0.0, hi / np.where(lo > 0.0, lo, 1.0), np.where(hi == 0.0, 1.0, np.inf))
    return vals


def grid_optimize(profile: GroupedProfile, spec: ObjectiveSpec, resolution: int) -> OptimalResult:
    """Brute-force minimum over a uniform grid of `resolution` points on the span."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    x1, xn = profile.span
    if xn - x1 <= 0.0:
        value = eval_point(profile, spec, x1)
        if math.isinf(value):
            raise UnboundedObjectiveError(f"{spec.label} is unbounded on this instance")
        return OptimalResult(x1, value, (x1,))
    grid = np.linspace(x1, xn, resolution)
    weighted = _distinct_weighted(profile)
    best_v = math.inf
    best_y = x1
    for start in range(0, resolution, _GRID_CHUNK):
        ys = grid[start : start + _GRID_CHUNK]
        vals = _grid_values(weighted, spec, ys)
        i = int(np.argmin(vals))
        v = float(vals[i])
        if v < best_v:
            best_v = v
            best_y = float(ys[i])
    if math.isinf(best_v):
        raise UnboundedObjectiveError(f"{spec.label} is +inf at every grid point")
    return OptimalResult(best_y, best_v, (best_y,))


def ratio(profile: GroupedProfile, mechanism: MechanismLike, spec: ObjectiveSpec) -> RatioReport:
    """Mechanism objective value over the exact optimum, with the zero-optimum convention."""
    opt = optimize(profile, spec)
    fn = as_mechanism_fn(mechanism)
    value = eval_outcome(profile, spec, fn(profile))
    if opt.value == 0.0:
        rho = 1.0 if value == 0.0 else math.inf
    else:
        rho = value / opt.value
    return RatioReport(mechanism_value=value, optimal=opt, ratio=rho)
