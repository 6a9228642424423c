"""Vertex and edge profiles of the factor-revealing LP.

A vertex profile records where a vertex sits relative to a Hall witness
``A`` of ``H``, its degree in ``H`` and whether the matchings ``M`` (maximum
in ``H``) and ``M*`` (maximum in ``G``) cover it.  An edge profile records the
profiles of both endpoints and whether the edge belongs to ``H``, ``M`` and
``M*``.  Only combinations that can occur in a real instance are emitted.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Iterable

from .errors import ParameterError


class Side(str, Enum):
    LEFT = "Left"
    RIGHT = "Right"


class Region(str, Enum):
    # declaration order is the canonical order
    A = "A"
    L_MINUS_A = "LminusA"
    NA = "NA"
    R_MINUS_NA = "RminusNA"

    @property
    def side(self) -> Side:
        return Side.LEFT if self in (Region.A, Region.L_MINUS_A) else Side.RIGHT

    @property
    def forces_m(self) -> bool:
        """Vertices of ``N_H(A)`` and ``L \\ A`` are covered by every maximum matching."""
        return self in (Region.NA, Region.L_MINUS_A)


_REGION_RANK = {r: i for i, r in enumerate(Region)}
_SIDE_RANK = {Side.LEFT: 0, Side.RIGHT: 1}
_M_REGION_PAIRS = {(Region.A, Region.NA), (Region.L_MINUS_A, Region.R_MINUS_NA)}


@dataclass(frozen=True)
class Params:
    beta: int
    beta_minus: int

    def __post_init__(self) -> None:
        for name in ("beta", "beta_minus"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if not self.beta > self.beta_minus >= 1:
            raise ParameterError(
                f"need beta > beta_minus >= 1, got beta={self.beta}, "
                f"beta_minus={self.beta_minus}")

    def __str__(self) -> str:
        return f"({self.beta},{self.beta_minus})"


@dataclass(frozen=True)
class VertexProfile:
    side: Side
    region: Region
    deg_h: int
    in_m: bool
    in_mstar: bool

    def sort_key(self) -> tuple:
        return (_SIDE_RANK[self.side], _REGION_RANK[self.region],
                self.deg_h, self.in_m, self.in_mstar)

    def __lt__(self, other: VertexProfile) -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def is_isolated(self) -> bool:
        return self.deg_h == 0 and not self.in_m and not self.in_mstar

    def label(self) -> str:
        flags = ("M" if self.in_m else "") + ("S" if self.in_mstar else "")
        return f"{self.region.value}_{self.deg_h}" + (f"_{flags}" if flags else "")

    def to_json(self) -> dict:
        data = asdict(self)
        data["side"] = self.side.value
        data["region"] = self.region.value
        return data

    @classmethod
    def from_json(cls, data: dict) -> VertexProfile:
        return cls(Side(data["side"]), Region(data["region"]), int(data["deg_h"]),
                   bool(data["in_m"]), bool(data["in_mstar"]))


@dataclass(frozen=True)
class EdgeProfile:
    left: VertexProfile
    right: VertexProfile
    in_h: bool
    in_m: bool
    in_mstar: bool

    def sort_key(self) -> tuple:
        return (self.left.sort_key(), self.right.sort_key(),
                self.in_h, self.in_m, self.in_mstar)

    def __lt__(self, other: EdgeProfile) -> bool:
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        flags = "".join(f for f, on in (("H", self.in_h), ("M", self.in_m),
                                        ("S", self.in_mstar)) if on)
        return f"{self.left.label()}__{self.right.label()}__{flags}"

    def endpoints(self) -> tuple[VertexProfile, VertexProfile]:
        return self.left, self.right

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json(),
                "in_h": self.in_h, "in_m": self.in_m, "in_mstar": self.in_mstar}

    @classmethod
    def from_json(cls, data: dict) -> EdgeProfile:
        return cls(VertexProfile.from_json(data["left"]),
                   VertexProfile.from_json(data["right"]),
                   bool(data["in_h"]), bool(data["in_m"]), bool(data["in_mstar"]))


def vertex_violation(params: Params, vp: VertexProfile) -> str | None:
    """Return the first broken vertex condition, or ``None`` for a valid profile."""
    if vp.region.side is not vp.side:
        return "side/region mismatch"
    if not 0 <= vp.deg_h <= params.beta - 1:
        return "degree out of range"
    if vp.region.forces_m and not vp.in_m:
        return "condition 1"
    if vp.deg_h == 0 and vp.in_m:
        return "condition 2"
    return None


def edge_violation(params: Params, ep: EdgeProfile) -> str | None:
    """Return the first broken edge condition (3-10), or ``None``."""
    left, right = ep.left, ep.right
    if left.side is not Side.LEFT or right.side is not Side.RIGHT:
        return "endpoint sides"
    total = left.deg_h + right.deg_h
    if ep.in_h and (left.deg_h < 1 or right.deg_h < 1):
        return "condition 3"
    if ep.in_m and not (left.in_m and right.in_m):
        return "condition 4"
    if ep.in_mstar and not (left.in_mstar and right.in_mstar):
        return "condition 4"
    if ep.in_m and not ep.in_h:
        return "condition 5"
    if not (ep.in_h or ep.in_mstar):
        return "condition 6"
    if ep.in_h and total > params.beta:
        return "condition 7"
    if not ep.in_h and total < params.beta_minus:
        return "condition 8"
    if ep.in_h and left.region is Region.A and right.region is Region.R_MINUS_NA:
        return "condition 9"
    if ep.in_m and (left.region, right.region) not in _M_REGION_PAIRS:
        return "condition 10"
    return None


def enumerate_vertex_profiles(params: Params, *,
                              include_isolated: bool = False) -> list[VertexProfile]:
    """All valid vertex profiles in canonical order.

    Profiles of vertices with no ``H`` edge that are unmatched in both
    matchings are dropped unless *include_isolated* is set; they carry no
    constraint and never change the optimum.
    """
    _check_params(params)
    out = []
    for region in Region:
        for deg in range(params.beta):
            for in_m, in_mstar in itertools.product((False, True), repeat=2):
                vp = VertexProfile(region.side, region, deg, in_m, in_mstar)
                if vertex_violation(params, vp) is not None:
                    continue
                if vp.is_isolated and not include_isolated:
                    continue
                out.append(vp)
    return out


def enumerate_edge_profiles(params: Params,
                            vps: Iterable[VertexProfile]) -> list[EdgeProfile]:
    """All valid edge profiles whose endpoints come from *vps*, canonically ordered."""
    _check_params(params)
    vps = list(vps)
    for vp in vps:
        if vertex_violation(params, vp) is not None:
            raise ParameterError(f"vertex profile {vp.label()} is not valid for {params}")
    lefts = sorted(v for v in vps if v.side is Side.LEFT)
    rights = sorted(v for v in vps if v.side is Side.RIGHT)
    out = []
    for left in lefts:
        for right in rights:
            total = left.deg_h + right.deg_h
            # prune pairs that can carry neither an H edge nor a non-H edge
            if total > params.beta and not (left.in_mstar and right.in_mstar):
                continue
            for in_h, in_m, in_mstar in itertools.product((False, True), repeat=3):
                ep = EdgeProfile(left, right, in_h, in_m, in_mstar)
                if edge_violation(params, ep) is None:
                    out.append(ep)
    return out


def _check_params(params: Params) -> None:
    if not isinstance(params, Params):
        raise ParameterError(f"expected Params, got {type(params).__name__}")
