"""Facility placement rules mapping a GroupedProfile to a FacilityOutcome.

Six rules ignore or use group structure directly (mdm, ldm, kldm, mgdm, rm,
nrm); two more pick a group median in a fixed way (median_of_group_medians,
median_of_group). Every even-sized median is the left median, i.e. the
ceil(k/2)-th order statistic. Randomized rules return their lottery exactly;
nothing here ever samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .model import FacilityOutcome, GroupedProfile


def median_index(count: int) -> int:
    """1-based position of the left median within a sorted multiset of `count` items."""
    if count < 1:
        raise ValueError("count must be positive")
    return (count + 1) // 2


def _left_median(sorted_locs: tuple[float, ...]) -> float:
    return sorted_locs[median_index(len(sorted_locs)) - 1]


def _three_point(left: float, right: float) -> FacilityOutcome:
    # Collapses to a single point when the endpoints coincide.
    if left == right:
        return FacilityOutcome.at(left)
    return FacilityOutcome.lottery(
        ((left, 0.25), (right, 0.25), ((left + right) / 2.0, 0.5))
    )


def mdm(profile: GroupedProfile) -> FacilityOutcome:
    """Facility at the left median of all agent locations."""
    return FacilityOutcome.at(profile.locations[median_index(profile.n) - 1])


def ldm(profile: GroupedProfile) -> FacilityOutcome:
    """Facility at the leftmost agent."""
    return FacilityOutcome.at(profile.locations[0])


def kldm(profile: GroupedProfile, k: int) -> FacilityOutcome:
    """Facility at the k-th smallest agent location, 1 <= k <= n."""
    if not 1 <= k <= profile.n:
        raise IndexError(f"k must lie in 1..{profile.n}, got {k}")
    return FacilityOutcome.at(profile.locations[k - 1])


def mgdm(profile: GroupedProfile) -> FacilityOutcome:
    """Facility at the left median of the largest group, smallest index on ties."""
    sizes = profile.group_sizes
    g = sizes.index(max(sizes))
    return FacilityOutcome.at(_left_median(profile.group_locations[g]))


def rm(profile: GroupedProfile) -> FacilityOutcome:
    """Quarter mass on each extreme agent, half on their midpoint."""
    x1, xn = profile.span
    return _three_point(x1, xn)


def nrm(profile: GroupedProfile) -> FacilityOutcome:
    """Same lottery as rm but over the extreme group medians instead of extreme agents."""
    medians = profile.group_medians
    return _three_point(min(medians), max(medians))


def median_of_group_medians(profile: GroupedProfile) -> FacilityOutcome:
    """Facility at the left median of the multiset of group medians."""
    return FacilityOutcome.at(_left_median(tuple(sorted(profile.group_medians))))


def median_of_group(profile: GroupedProfile, j: int) -> FacilityOutcome:
    """Facility at the left median of group j, regardless of group sizes."""
    if not 1 <= j <= profile.group_count:
        raise IndexError(f"group must lie in 1..{profile.group_count}, got {j}")
    return FacilityOutcome.at(profile.group_medians[j - 1])


# Tags of rules that take no parameter, and of those that require one.
_PLAIN_TAGS = ("mdm", "ldm", "mgdm", "rm", "nrm", "mogm")
_PARAM_TAGS = ("kldm", "mog")

_ALIASES = {
    "median-of-group-medians": "mogm",
    "median_of_group_medians": "mogm",
    "median-of-group": "mog",
    "median_of_group": "mog",
}


@dataclass(frozen=True)
class MechanismId:
    """A mechanism tag plus its parameter, if the rule takes one.

    `kldm` carries k (validated against n when applied); `mog` carries the
    group index j. All other tags take no parameter.
    """

    tag: str
    param: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in _PLAIN_TAGS + _PARAM_TAGS:
            raise ValueError(f"unknown mechanism tag {self.tag!r}")
        if self.tag in _PARAM_TAGS:
            if self.param is None or self.param < 1:
                raise ValueError(f"mechanism {self.tag!r} needs a positive parameter")
        elif self.param is not None:
            raise ValueError(f"mechanism {self.tag!r} takes no parameter")

    @property
    def label(self) -> str:
        return self.tag if self.param is None else f"{self.tag}:{self.param}"

    def apply(self, profile: GroupedProfile) -> FacilityOutcome:
        if self.tag == "mdm":
            return mdm(profile)
        if self.tag == "ldm":
            return ldm(profile)
        if self.tag == "kldm":
            return kldm(profile, self.param)
        if self.tag == "mgdm":
            return mgdm(profile)
        if self.tag == "rm":
            return rm(profile)
        if self.tag == "nrm":
            return nrm(profile)
        if self.tag == "mogm":
            return median_of_group_medians(profile)
        return median_of_group(profile, self.param)


MechanismLike = Union[MechanismId, Callable[[GroupedProfile], FacilityOutcome]]


def as_mechanism_fn(mechanism: MechanismLike) -> Callable[[GroupedProfile], FacilityOutcome]:
    """Normalize a MechanismId or a bare callable into a callable."""
    if isinstance(mechanism, MechanismId):
        return mechanism.apply
    return mechanism


def mechanism_label(mechanism: MechanismLike) -> str:
    if isinstance(mechanism, MechanismId):
        return mechanism.label
    return getattr(mechanism, "__name__", repr(mechanism))


def parse_mechanism(text: str) -> MechanismId:
    """Parse labels like 'mgdm', 'kldm:3' or 'mog:2', case-insensitively."""
    body = text.strip().lower()
    param: int | None = None
    if ":" in body:
        body, _, raw_param = body.partition(":")
        try:
            param = int(raw_param)
        except ValueError as exc:
            raise ValueError(f"bad mechanism parameter in {text!r}") from exc
    tag = _ALIASES.get(body, body)
    return MechanismId(tag, param)
