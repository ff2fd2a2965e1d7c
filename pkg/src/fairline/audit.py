"""Strategyproofness audits and mechanized lower-bound replays.

The deviation search is candidate-based rather than exhaustive: on the line,
the mechanisms implemented here change output only when a report crosses an
order statistic or a group median, and all such thresholds appear in the
candidate set (other agents' locations, group medians, their reflections
about the deviator, plus a wide uniform grid for robustness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .mechanisms import MechanismLike, as_mechanism_fn
from .model import GroupedProfile, agent_cost, build_profile
from .objectives import ObjectiveSpec
from .oracle import ratio

# Strict-improvement threshold; suppresses floating-point phantom findings.
VIOLATION_TOL = 1e-9
_MERGE_TOL = 1e-12

# Replication cap for the intergroup/intragroup lower-bound construction.
_MAX_REPLICATION = 50


class ConstructionInapplicableError(ValueError):
    """The probed mechanism placed the facility outside the construction's case analysis."""


@dataclass(frozen=True)
class AuditFinding:
    """A witness misreport that strictly reduces the deviators' expected cost.

    `deviators` holds one index for an individual deviation or several for a
    colocated set; all deviators share `true_location`.
    """

    deviators: tuple[int, ...]
    true_location: float
    misreport: float
    truthful_cost: float
    deviating_cost: float

    def __post_init__(self) -> None:
        if not self.deviating_cost < self.truthful_cost - VIOLATION_TOL:
            raise ValueError("a finding must be a strict violation")


@dataclass(frozen=True)
class ProbeVerdict:
    """Outcome of a lower-bound probe: a ratio witness, an SP violation, or neither."""

    kind: str
    profile: GroupedProfile | None = None
    ratio: float | None = None
    finding: AuditFinding | None = None

    @classmethod
    def witness(cls, profile: GroupedProfile, ratio_value: float) -> "ProbeVerdict":
        return cls("ratio_witness", profile=profile, ratio=ratio_value)

    @classmethod
    def violation(cls, finding: AuditFinding) -> "ProbeVerdict":
        return cls("sp_violation", finding=finding)

    @classmethod
    def inconclusive(cls) -> "ProbeVerdict":
        return cls("inconclusive")

    @property
    def is_witness(self) -> bool:
        return self.kind == "ratio_witness"

    @property
    def is_violation(self) -> bool:
        return self.kind == "sp_violation"

    @property
    def is_inconclusive(self) -> bool:
        return self.kind == "inconclusive"


def misreport_candidates(profile: GroupedProfile, agent: int, resolution: int) -> list[float]:
    """Candidate false reports for one agent, sorted, excluding the true location.

    Union of the other agents' locations, every group median, reflections of
    both about the deviator's true location, and `resolution` uniform points
    over the span widened by one span-width on each side.
    """
    if not 0 <= agent < profile.n:
        raise IndexError(f"agent index {agent} outside 0..{profile.n - 1}")
    if resolution < 1:
        raise ValueError("resolution must be positive")
    own = profile.agents[agent].location
    base: set[float] = {a.location for i, a in enumerate(profile.agents) if i != agent}
    base.update(profile.group_medians)
    points = set(base)
    points.update(2.0 * own - c for c in base)
    x1, xn = profile.span
    width = xn - x1
    lo, hi = x1 - width, xn + width
    if resolution == 1:
        points.add(lo)
    else:
        step = (hi - lo) / (resolution - 1)
        points.update(lo + i * step for i in range(resolution))
    out: list[float] = []
    for p in sorted(points):
        if abs(p - own) <= _MERGE_TOL:
            continue
        if not out or p - out[-1] > _MERGE_TOL:
            out.append(p)
    return out


def _deviation_profile(profile: GroupedProfile, indices: tuple[int, ...], report: float) -> GroupedProfile:
    pairs = profile.raw()
    for i in indices:
        pairs[i] = (report, pairs[i][1])
    return build_profile(pairs, profile.group_count)


def _colocated_sets(profile: GroupedProfile) -> list[tuple[int, ...]]:
    """Maximal sets of agents sharing a location, group labels disregarded."""
    sets: list[tuple[int, ...]] = []
    start = 0
    locs = profile.locations
    for i in range(1, profile.n + 1):
        if i == profile.n or locs[i] != locs[start]:
            sets.append(tuple(range(start, i)))
            start = i
    return sets


def _audit_sets(
    mechanisms: Sequence[MechanismLike],
    profile: GroupedProfile,
    resolution: int,
    deviator_sets: list[tuple[int, ...]],
) -> list[list[AuditFinding]]:
    # The perturbed profile is shared across mechanisms, which dominates the cost.
    fns = [as_mechanism_fn(m) for m in mechanisms]
    truthful = [fn(profile) for fn in fns]
    findings: list[list[AuditFinding]] = [[] for _ in fns]
    for deviators in deviator_sets:
        true_loc = profile.agents[deviators[0]].location
        t_costs = [agent_cost(out, true_loc) for out in truthful]
        for cand in misreport_candidates(profile, deviators[0], resolution):
            deviated = _deviation_profile(profile, deviators, cand)
            for k, fn in enumerate(fns):
                d_cost = agent_cost(fn(deviated), true_loc)
                if d_cost < t_costs[k] - VIOLATION_TOL:
                    findings[k].append(
                        AuditFinding(deviators, true_loc, cand, t_costs[k], d_cost)
                    )
    return findings


def batch_sp_audit(
    mechanisms: Sequence[MechanismLike], profile: GroupedProfile, resolution: int
) -> list[list[AuditFinding]]:
    """Individual-deviation audit of several mechanisms over one profile."""
    singles = [(i,) for i in range(profile.n)]
    return _audit_sets(mechanisms, profile, resolution, singles)


def sp_audit(mechanism: MechanismLike, profile: GroupedProfile, resolution: int) -> list[AuditFinding]:
    """All strict single-agent violations found in the candidate set."""
    return batch_sp_audit([mechanism], profile, resolution)[0]


def batch_group_sp_audit(
    mechanisms: Sequence[MechanismLike], profile: GroupedProfile, resolution: int
) -> list[list[AuditFinding]]:
    """Colocated-set joint-deviation audit of several mechanisms over one profile."""
    return _audit_sets(mechanisms, profile, resolution, _colocated_sets(profile))


def group_sp_audit(mechanism: MechanismLike, profile: GroupedProfile, resolution: int) -> list[AuditFinding]:
    """All strict joint violations by maximal colocated agent sets."""
    return batch_group_sp_audit([mechanism], profile, resolution)[0]


def _singleton_pair(a: float, b: float) -> GroupedProfile:
    return build_profile([(a, 1), (b, 2)], 2)


def _replicated_pair(c: int, a: float, b: float) -> GroupedProfile:
    raw = [(a, 1)] + [(b, 1)] * c + [(a, 2)] * c + [(b, 2)]
    return build_profile(raw, 2)


def _meets(ratio_value: float, bound: float, epsilon: float) -> bool:
    if math.isinf(bound):
        return math.isinf(ratio_value)
    return ratio_value >= bound - epsilon - 1e-12


def lower_bound_probe(
    mechanism: MechanismLike, spec: ObjectiveSpec, bound: float, epsilon: float
) -> ProbeVerdict:
    """Replay the two-profile lower-bound construction against one mechanism.

    Builds the base instance for the objective family (a singleton pair for
    mtgc/magc/alt, a replicated two-point instance for iif1/iif2), observes
    the mechanism's placement, derives the second instance from it, and
    returns a ratio witness when either instance meets `bound - epsilon`
    (bound may be +inf for the alt family, where a witness means an infinite
    ratio), an SP violation when the construction's misreport strictly helps,
    and Inconclusive otherwise.
    """
    fn = as_mechanism_fn(mechanism)
    if spec.kind in ("mtgc", "magc", "alt"):
        base = _singleton_pair(0.0, 1.0)

        def rebuild(p: float) -> tuple[GroupedProfile, float]:
            # Mirror the construction when the facility lands left of center.
            if p >= 0.5:
                return _singleton_pair(0.0, p), 1.0
            return _singleton_pair(p, 1.0), 0.0

    elif spec.kind in ("iif1", "iif2"):
        c = _MAX_REPLICATION if epsilon <= 0 else min(math.ceil(2.0 / epsilon), _MAX_REPLICATION)
        base = _replicated_pair(c, 0.0, 1.0)

        def rebuild(p: float) -> tuple[GroupedProfile, float]:
            if p >= 0.5:
                return _replicated_pair(c, 0.0, p), 1.0
            return _replicated_pair(c, p, 1.0), 0.0

    else:
        raise ValueError(f"no lower-bound construction for {spec.label}")

    base_report = ratio(base, fn, spec)
    if _meets(base_report.ratio, bound, epsilon):
        return ProbeVerdict.witness(base, base_report.ratio)

    base_outcome = fn(base)
    if not base_outcome.is_deterministic:
        return ProbeVerdict.inconclusive()
    p = base_outcome.point
    if p < -_MERGE_TOL or p > 1.0 + _MERGE_TOL:
        raise ConstructionInapplicableError(
            f"facility at {p} falls outside [0, 1]; no case of the construction applies"
        )

    derived, target = rebuild(p)
    derived_report = ratio(derived, fn, spec)
    if _meets(derived_report.ratio, bound, epsilon):
        return ProbeVerdict.witness(derived, derived_report.ratio)

    movers = tuple(i for i, a in enumerate(derived.agents) if a.location == p)
    if movers:
        truthful_cost = agent_cost(fn(derived), p)
        deviating_cost = agent_cost(base_outcome, p)
        if deviating_cost < truthful_cost - VIOLATION_TOL:
            return ProbeVerdict.violation(
                AuditFinding(movers, p, target, truthful_cost, deviating_cost)
            )
    return ProbeVerdict.inconclusive()
