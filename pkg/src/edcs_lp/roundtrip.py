"""Moving between concrete EDCS instances and solutions of the profile LP.

``instance_to_solution`` counts how many vertices and edges of an instance
fall into each profile and scales by the size of the EDCS matching, giving a
feasible LP point whose objective is the instance's ratio.  The reverse,
``solution_to_instance``, turns a rational optimum into a graph by creating
the right number of vertices per profile and wiring them up; the result is
checked with ``verify_instance`` before it is returned.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import ContractViolation, InternalError, ParameterError, RealizationError
from .graphs import (BipartiteGraph, EdcsInstance, Edge, covers_exactly_one, is_edcs,
                     is_matching, max_matching, neighborhood)
from .lp import LinearProgram, build_lp, check_assignment
from .profiles import (EdgeProfile, Params, Region, Side, VertexProfile, edge_violation,
                       vertex_violation)
from .simplex.result import SolveResult

MAX_DOUBLINGS = 6


@lru_cache(maxsize=64)
def _lp_for(params: Params, include_isolated: bool = False) -> LinearProgram:
    return build_lp(params, include_isolated=include_isolated)


# ---------------------------------------------------------------------------
# instance -> LP point

def _vertex_profiles(inst: EdcsInstance) -> tuple[list[VertexProfile], list[VertexProfile]]:
    h = inst.h
    dl = [0] * inst.g.n_left
    dr = [0] * inst.g.n_right
    for u, v in h:
        dl[u] += 1
        dr[v] += 1
    m_l = {u for u, _ in inst.m}
    m_r = {v for _, v in inst.m}
    s_l = {u for u, _ in inst.mstar}
    s_r = {v for _, v in inst.mstar}
    n_a = neighborhood(h, inst.witness_a)
    left = [VertexProfile(Side.LEFT, Region.A if u in inst.witness_a else Region.L_MINUS_A,
                          dl[u], u in m_l, u in s_l) for u in range(inst.g.n_left)]
    right = [VertexProfile(Side.RIGHT, Region.NA if v in n_a else Region.R_MINUS_NA,
                           dr[v], v in m_r, v in s_r) for v in range(inst.g.n_right)]
    return left, right


def instance_to_solution(inst: EdcsInstance, *,
                         lp: Optional[LinearProgram] = None) -> tuple[list[Fraction], Fraction]:
    """Profile counts of *inst* divided by ``|M|``, and the resulting objective.

    Edges outside ``H`` and ``M*`` are ignored.  Raises
    :class:`ContractViolation` naming the broken condition when a vertex or
    edge does not fall into a valid profile.
    """
    params = inst.params
    lp = lp if lp is not None else _lp_for(params)
    if not inst.m:
        raise ContractViolation("the EDCS matching is empty, so the ratio is undefined")
    index = lp.index
    counts = [0] * lp.num_vars
    left, right = _vertex_profiles(inst)

    for side, profiles in (("l", left), ("r", right)):
        for i, vp in enumerate(profiles):
            bad = vertex_violation(params, vp)
            if bad is not None:
                raise ContractViolation(f"vertex {side}{i} violates {bad} ({vp.label()})")
            j = index.get(vp)
            if j is None:
                if vp.is_isolated:
                    continue
                raise ContractViolation(f"vertex {side}{i} has a profile outside the LP")
            counts[j] += 1

    kept = sorted(set(inst.g.edges) & (inst.h | inst.mstar))
    for u, v in kept:
        ep = EdgeProfile(left[u], right[v], (u, v) in inst.h, (u, v) in inst.m,
                         (u, v) in inst.mstar)
        bad = edge_violation(params, ep)
        if bad is not None:
            raise ContractViolation(f"edge (l{u}, r{v}) violates {bad} ({ep.label()})")
        counts[index[ep]] += 1

    size = len(inst.m)
    x = [Fraction(c, size) for c in counts]
    return x, check_assignment(lp, x).objective


# ---------------------------------------------------------------------------
# LP point -> instance

@dataclass
class ProfileAssignment:
    """Integer profile counts ``n = N * x`` for a rational LP point ``x``."""

    vertex_counts: dict[VertexProfile, int]
    edge_counts: dict[EdgeProfile, int]
    scale: int

    @classmethod
    def from_solution(cls, lp: LinearProgram, x: list[Fraction], scale: int) -> ProfileAssignment:
        vc, ec = {}, {}
        for kind, q in zip(lp.var_kind, x):
            n = q * scale
            if n.denominator != 1:
                raise ParameterError(f"scale {scale} does not clear denominator of {q}")
            if n:
                (vc if isinstance(kind, VertexProfile) else ec)[kind] = int(n)
        return cls(vc, ec, scale)

    def to_solution(self, lp: LinearProgram) -> list[Fraction]:
        counts = {**self.vertex_counts, **self.edge_counts}
        return [Fraction(counts.get(k, 0), self.scale) for k in lp.var_kind]


class _Builder:
    def __init__(self, pa: ProfileAssignment):
        self.pa = pa
        self.groups: dict[VertexProfile, list[int]] = {}
        n = {Side.LEFT: 0, Side.RIGHT: 0}
        for vp in sorted(pa.vertex_counts):
            c = pa.vertex_counts[vp]
            self.groups[vp] = list(range(n[vp.side], n[vp.side] + c))
            n[vp.side] += c
        self.n_left, self.n_right = n[Side.LEFT], n[Side.RIGHT]
        self.resid = {(Side.LEFT, i): 0 for i in range(self.n_left)}
        self.resid.update({(Side.RIGHT, i): 0 for i in range(self.n_right)})
        for vp, ids in self.groups.items():
            for i in ids:
                self.resid[vp.side, i] = vp.deg_h
        self.m_used: set[tuple[Side, int]] = set()
        self.s_used: set[tuple[Side, int]] = set()
        self.edges: set[Edge] = set()
        self.h: set[Edge] = set()
        self.m: set[Edge] = set()
        self.mstar: set[Edge] = set()

    def group(self, vp: VertexProfile) -> list[int]:
        ids = self.groups.get(vp)
        if ids is None:
            raise RealizationError(f"edge profile uses empty vertex group {vp.label()}")
        return ids

    def add(self, ep: EdgeProfile, u: int, w: int) -> None:
        e = (u, w)
        if e in self.edges:
            raise RealizationError(f"pair (l{u}, r{w}) would be duplicated")
        self.edges.add(e)
        if ep.in_h:
            self.h.add(e)
            for key in ((Side.LEFT, u), (Side.RIGHT, w)):
                self.resid[key] -= 1
                if self.resid[key] < 0:
                    raise RealizationError(f"H-degree of {key[0].value} {key[1]} exceeded")
        if ep.in_m:
            self.m.add(e)
            self.m_used.update({(Side.LEFT, u), (Side.RIGHT, w)})
        if ep.in_mstar:
            self.mstar.add(e)
            self.s_used.update({(Side.LEFT, u), (Side.RIGHT, w)})

    def free(self, vp: VertexProfile, *, m: bool = False, s: bool = False) -> list[int]:
        return [i for i in self.group(vp)
                if not (m and (vp.side, i) in self.m_used)
                and not (s and (vp.side, i) in self.s_used)]

    def take(self, vp: VertexProfile, count: int, **kw) -> list[int]:
        ids = self.free(vp, **kw)[:count]
        if len(ids) < count:
            raise RealizationError(f"group {vp.label()} has too few free vertices")
        return ids

    def matching_edges(self) -> None:
        ec = self.pa.edge_counts
        # M* edges, those also in M first so they claim vertices free in both
        star = [e for e in sorted(ec) if e.in_mstar]
        for ep in [e for e in star if e.in_m] + [e for e in star if not e.in_m]:
            c = ec[ep]
            lefts = self.take(ep.left, c, m=ep.in_m, s=True)
            rights = self.take(ep.right, c, m=ep.in_m, s=True)
            for u, w in zip(lefts, rights):
                self.add(ep, u, w)
        # M edges outside M*: shift the pairing to dodge existing pairs
        for ep in (e for e in sorted(ec) if e.in_m and not e.in_mstar):
            c = ec[ep]
            lefts = self.take(ep.left, c, m=True)
            rights = self.take(ep.right, c, m=True)
            for u, w in self._collision_free(lefts, rights):
                self.add(ep, u, w)

    def _collision_free(self, lefts: list[int], rights: list[int]) -> list[Edge]:
        c = len(lefts)
        for off in range(c):
            pairs = [(lefts[i], rights[(i + off) % c]) for i in range(c)]
            if not any(p in self.edges for p in pairs):
                return pairs
        pos_l = {u: i for i, u in enumerate(lefts)}
        pos_r = {w: i for i, w in enumerate(rights)}
        allowed = BipartiteGraph.from_edges(c, c, [
            (pos_l[u], pos_r[w]) for u in lefts for w in rights if (u, w) not in self.edges])
        mm = max_matching(allowed)
        if len(mm) < c:
            raise RealizationError("no collision-free pairing for M edges")
        return [(lefts[i], rights[j]) for i, j in sorted(mm)]

    def h_edges(self) -> None:
        ec = self.pa.edge_counts
        for ep in (e for e in sorted(ec) if e.in_h and not e.in_m and not e.in_mstar):
            lefts, rights = self.group(ep.left), self.group(ep.right)
            for _ in range(ec[ep]):
                self._place(ep, lefts, rights)

    def _place(self, ep: EdgeProfile, lefts: list[int], rights: list[int]) -> None:
        rl = self.resid
        for u in sorted((u for u in lefts if rl[Side.LEFT, u] > 0),
                        key=lambda u: (-rl[Side.LEFT, u], u)):
            best = None
            for w in rights:
                r = rl[Side.RIGHT, w]
                if r > 0 and (u, w) not in self.edges and (best is None or r > rl[Side.RIGHT, best]):
                    best = w
            if best is not None:
                self.add(ep, u, best)
                return
        raise RealizationError(f"cannot place another {ep.label()} edge without a duplicate")

    def instance(self, params: Params) -> EdcsInstance:
        for key, r in self.resid.items():
            if r:
                raise RealizationError(f"{key[0].value} {key[1]} ended with H-degree deficit {r}")
        witness = frozenset(i for vp, ids in self.groups.items()
                            if vp.region is Region.A for i in ids)
        g = BipartiteGraph.from_edges(self.n_left, self.n_right, self.edges)
        return EdcsInstance(g, frozenset(self.h), frozenset(self.m), frozenset(self.mstar),
                            witness, params)


def realize(params: Params, pa: ProfileAssignment) -> EdcsInstance:
    """Wire up one concrete graph for the given profile counts."""
    b = _Builder(pa)
    b.matching_edges()
    b.h_edges()
    return b.instance(params)


def solution_to_instance(params: Params, result: SolveResult, min_scale: int = 1) -> EdcsInstance:
    """Build a verified instance whose ratio equals the LP optimum in *result*.

    The scale starts at ``min_scale`` times the common denominator of the
    solution and doubles (up to six times) whenever the wiring gets stuck.
    """
    if not result.optimal or not result.exact:
        raise ParameterError("an exact optimal solve result is required")
    if not isinstance(min_scale, int) or min_scale < 1:
        raise ParameterError(f"min_scale must be a positive integer, got {min_scale!r}")
    lp = _lp_for(params)
    if len(result.solution) != lp.num_vars:
        lp = _lp_for(params, True)
        if len(result.solution) != lp.num_vars:
            raise ParameterError("solution length does not match the LP for these params")
    x = [Fraction(q) for q in result.solution]
    scale = min_scale * math.lcm(*(q.denominator for q in x))
    failure = None
    for _ in range(MAX_DOUBLINGS + 1):
        try:
            inst = realize(params, ProfileAssignment.from_solution(lp, x, scale))
        except RealizationError as exc:
            failure = exc
            scale *= 2
            continue
        report = verify_instance(inst, params)
        if not report.ok or report.ratio != result.objective:
            raise InternalError(f"reconstructed instance failed verification:\n{report.to_text()}")
        return inst
    raise RealizationError(f"realization failed up to scale {scale // 2}: {failure}")


# ---------------------------------------------------------------------------
# verification

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    mu_g: int = 0
    mu_h: int = 0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def ratio(self) -> Optional[Fraction]:
        return Fraction(self.mu_g, self.mu_h) if self.mu_h else None

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        ratio = self.ratio
        return {
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in self.checks],
            "mu_g": self.mu_g,
            "mu_h": self.mu_h,
            "ratio": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
            "approximation": None if ratio is None else
            f"{ratio.denominator}/{ratio.numerator}",
        }

    def to_text(self) -> str:
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}"
                 + (f": {c.detail}" if c.detail else "") for c in self.checks]
        ratio = self.ratio
        lines.append(f"mu(G) = {self.mu_g}, mu(H) = {self.mu_h}")
        if ratio is not None:
            lines.append(f"mu(G)/mu(H) = {ratio} (approximation {float(1 / ratio):.10f})")
        lines.append("all checks passed" if self.ok else f"{len(self.failed())} check(s) failed")
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def verify_instance(inst: EdcsInstance, params: Params) -> VerificationReport:
    """Check every property of an instance bundle; failures go into the report."""
    g = inst.g
    report = VerificationReport()

    def check(name: str, passed: bool, detail: str = "") -> bool:
        report.checks.append(Check(name, bool(passed), "" if passed else detail))
        return passed

    dups = g.duplicates()
    check("simple graph", not dups, f"duplicate pairs {dups[:5]}")
    gset = g.edge_set
    h_ok = check("H is a subgraph of G", inst.h <= gset,
                 f"{len(inst.h - gset)} H edges not in G, e.g. {min(inst.h - gset, default=None)}")
    if h_ok:
        edcs = is_edcs(g, inst.h, params)
        check(f"H is a {params} EDCS", edcs.ok,
              "; ".join(str(v) for v in edcs.violations[:5])
              + (f" (+{len(edcs.violations) - 5} more)" if len(edcs.violations) > 5 else ""))
    else:
        check(f"H is a {params} EDCS", False, "skipped: H is not a subgraph of G")

    check("M is a matching inside H", inst.m <= inst.h and is_matching(inst.m),
          "M leaves H" if not inst.m <= inst.h else "two M edges share a vertex")
    star_ok = check("M* is a matching inside G", inst.mstar <= gset and is_matching(inst.mstar),
                    "M* leaves G" if not inst.mstar <= gset else "two M* edges share a vertex")
    report.mu_g = len(max_matching(g))
    if star_ok:
        check("M* is maximum in G", len(inst.mstar) == report.mu_g,
              f"|M*| = {len(inst.mstar)} but mu(G) = {report.mu_g}")
    else:
        check("M* is maximum in G", False, "skipped: M* is not a matching of G")

    hg = BipartiteGraph.from_edges(g.n_left, g.n_right, inst.h & gset)
    report.mu_h = len(max_matching(hg))
    a = inst.witness_a
    in_range = all(0 <= u < g.n_left for u in a)
    n_a = neighborhood(inst.h, a)
    hall = len(n_a) + g.n_left - len(a)
    check("Hall identity |N_H(A)| + |L \\ A| = |M|", in_range and hall == len(inst.m),
          "witness has out-of-range vertices" if not in_range
          else f"{len(n_a)} + {g.n_left - len(a)} = {hall} != {len(inst.m)}")
    bad = covers_exactly_one(inst.m, a, n_a)
    check("each M edge covers exactly one vertex of N_H(A) + (L \\ A)", not bad,
          f"{len(bad)} offending edges, e.g. {bad[:3]}")
    return report
