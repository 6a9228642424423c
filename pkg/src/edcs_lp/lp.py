"""Assembly, checking and export of the factor-revealing LP.

Variables are one per vertex profile followed by one per edge profile, both
in enumeration order.  Every constraint is an equality whose right-hand side
is 0, except the normalization row that fixes the total weight of ``M`` edge
profiles to 1.  The objective (maximized) is the total weight of ``M*`` edge
profiles, i.e. the worst-case ``mu(G) / mu(H)``; the approximation ratio is
its reciprocal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .errors import ParameterError
from .profiles import (EdgeProfile, Params, VertexProfile,
                       enumerate_edge_profiles, enumerate_vertex_profiles)

Row = tuple[tuple[int, Fraction], ...]
Profile = Union[VertexProfile, EdgeProfile]

NORMALIZATION = "norm"


@dataclass(frozen=True)
class LinearProgram:
    params: Params | None
    var_kind: tuple[Profile, ...]
    var_names: tuple[str, ...]
    objective: Row
    rows: tuple[Row, ...]
    rhs: tuple[Fraction, ...]
    row_names: tuple[str, ...]

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def eq_rows(self) -> list[tuple[Row, Fraction]]:
        return list(zip(self.rows, self.rhs))

    @cached_property
    def num_vertex_vars(self) -> int:
        return sum(isinstance(k, VertexProfile) for k in self.var_kind)

    @cached_property
    def columns(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        """Column-major copy of the constraint matrix: ``columns[j] = ((row, coef), ...)``."""
        cols: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.num_vars)]
        for i, row in enumerate(self.rows):
            for j, coef in row:
                cols[j].append((i, coef))
        return tuple(tuple(c) for c in cols)

    @cached_property
    def cost(self) -> tuple[Fraction, ...]:
        c = [Fraction(0)] * self.num_vars
        for j, coef in self.objective:
            c[j] = coef
        return tuple(c)

    @cached_property
    def index(self) -> dict[Profile, int]:
        return {k: j for j, k in enumerate(self.var_kind)}

    def validate(self) -> None:
        n = self.num_vars
        if not (len(self.rows) == len(self.rhs) == len(self.row_names)):
            raise ParameterError("rows, rhs and row names differ in length")
        for row in (*self.rows, self.objective):
            for j, _ in row:
                if not 0 <= j < n:
                    raise ParameterError(f"variable index {j} out of range")
        if sum(1 for b in self.rhs if b != 0) != 1:
            raise ParameterError("expected exactly one row with nonzero right-hand side")


def build_lp(params: Params, *, include_isolated: bool = False) -> LinearProgram:
    vps = enumerate_vertex_profiles(params, include_isolated=include_isolated)
    eps = enumerate_edge_profiles(params, vps)
    nv = len(vps)
    vindex = {v: i for i, v in enumerate(vps)}

    h_cols: dict[VertexProfile, list[int]] = {v: [] for v in vps}
    m_cols: dict[VertexProfile, list[int]] = {v: [] for v in vps}
    s_cols: dict[VertexProfile, list[int]] = {v: [] for v in vps}
    for k, ep in enumerate(eps):
        j = nv + k
        for end in ep.endpoints():
            if ep.in_h:
                h_cols[end].append(j)
            if ep.in_m:
                m_cols[end].append(j)
            if ep.in_mstar:
                s_cols[end].append(j)

    rows: list[Row] = []
    names: list[str] = []

    def add(name: str, members: list[int], v: VertexProfile, weight: int) -> None:
        entries = [(vindex[v], Fraction(-weight))] + [(j, Fraction(1)) for j in members]
        rows.append(tuple(sorted(entries)))
        names.append(name)

    for v in vps:
        if v.deg_h >= 1:
            add(f"deg_{v.label()}", h_cols[v], v, v.deg_h)
    for v in vps:
        if v.in_m:
            add(f"m_{v.label()}", m_cols[v], v, 1)
    for v in vps:
        if v.in_mstar:
            add(f"ms_{v.label()}", s_cols[v], v, 1)
    rows.append(tuple((nv + k, Fraction(1)) for k, ep in enumerate(eps) if ep.in_m))
    names.append(NORMALIZATION)
    rhs = [Fraction(0)] * (len(rows) - 1) + [Fraction(1)]

    objective = tuple((nv + k, Fraction(1)) for k, ep in enumerate(eps) if ep.in_mstar)
    var_names = [f"v_{v.label()}" for v in vps] + [f"e_{e.label()}" for e in eps]
    lp = LinearProgram(params, tuple(vps) + tuple(eps), tuple(var_names), objective,
                       tuple(rows), tuple(rhs), tuple(names))
    lp.validate()
    return lp


@dataclass
class FeasibilityReport:
    objective: Fraction
    violations: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.violations


def check_assignment(lp: LinearProgram, x: Sequence) -> FeasibilityReport:
    """Evaluate *x* exactly against every row and the nonnegativity bounds."""
    if len(x) != lp.num_vars:
        raise ParameterError(f"assignment has length {len(x)}, LP has {lp.num_vars} variables")
    x = [Fraction(v) for v in x]
    # points read off instances are mostly zero, so skip those terms
    report = FeasibilityReport(
        objective=sum((c * x[j] for j, c in lp.objective if x[j]), Fraction(0)))
    for j, value in enumerate(x):
        if value < 0:
            report.violations.append(f"nonnegativity {lp.var_names[j]} = {value}")
    for name, row, b in zip(lp.row_names, lp.rows, lp.rhs):
        lhs = sum((c * x[j] for j, c in row if x[j]), Fraction(0))
        if lhs != b:
            report.violations.append(f"row {name}: {lhs} != {b}")
    return report


# ---------------------------------------------------------------------------
# export

def _terminates(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def format_coefficient(q: Fraction) -> tuple[str, bool]:
    """Render ``|q|`` as a decimal string; the flag is False when it is inexact."""
    q = abs(Fraction(q))
    if q.denominator == 1:
        return str(q.numerator), True
    if _terminates(q):
        digits = 0
        while (q * 10 ** digits).denominator != 1:
            digits += 1
        whole = q.numerator * 10 ** digits // q.denominator
        text = f"{whole:0{digits + 1}d}"
        return f"{text[:-digits]}.{text[-digits:]}", True
    scaled = (q.numerator * 10 ** 20 * 2 + q.denominator) // (2 * q.denominator)
    text = f"{scaled:021d}"
    return f"{text[:-20]}.{text[-20:]}", False


def _linear_terms(row: Row, names: Sequence[str], notes: list[str]) -> list[str]:
    terms = []
    for j, c in row:
        if c == 0:
            continue
        text, exact = format_coefficient(c)
        if not exact:
            notes.append(f"\\ coefficient of {names[j]} is exactly {c}")
        sign = "-" if c < 0 else "+"
        terms.append(f"{sign} {names[j]}" if text == "1" else f"{sign} {text} {names[j]}")
    return terms


def _wrap(head: str, terms: list[str], tail: str = "", width: int = 200) -> list[str]:
    lines, cur = [], head
    for t in terms + ([tail] if tail else []):
        if len(cur) + 1 + len(t) > width:
            lines.append(cur)
            cur = "   "
        cur += " " + t
    lines.append(cur)
    return lines


def export_lp_text(lp: LinearProgram) -> str:
    """CPLEX-style LP text; identical input gives identical bytes."""
    title = f" {lp.params}" if lp.params is not None else ""
    out = [f"\\ factor-revealing LP for EDCS parameters{title}",
           f"\\ {lp.num_vars} variables, {lp.num_rows} equality rows",
           "Maximize"]
    notes: list[str] = []
    terms = _linear_terms(lp.objective, lp.var_names, notes)
    out += notes + _wrap(" obj:", terms or ["0 " + lp.var_names[0]])
    out.append("Subject To")
    for name, row, b in zip(lp.row_names, lp.rows, lp.rhs):
        notes = []
        terms = _linear_terms(row, lp.var_names, notes)
        rhs_text, exact = format_coefficient(b)
        if not exact:
            notes.append(f"\\ right-hand side of {name} is exactly {b}")
        rhs_text = ("-" if b < 0 else "") + rhs_text
        out += notes + _wrap(f" {name}:", terms, f"= {rhs_text}")
    out.append("Bounds")
    out += [f" {name} >= 0" for name in lp.var_names]
    out.append("End")
    return "\n".join(out) + "\n"


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def model_to_json(lp: LinearProgram) -> dict:
    variables = []
    for name, kind in zip(lp.var_names, lp.var_kind):
        kind_name = "vertex" if isinstance(kind, VertexProfile) else "edge"
        variables.append({"name": name, "kind": kind_name, "profile": kind.to_json()})
    rows = [{"name": name, "rhs": _frac_text(b),
             "terms": [[j, _frac_text(c)] for j, c in row]}
            for name, row, b in zip(lp.row_names, lp.rows, lp.rhs)]
    return {
        "beta": lp.params.beta if lp.params else None,
        "beta_minus": lp.params.beta_minus if lp.params else None,
        "sense": "maximize",
        "num_vars": lp.num_vars,
        "num_vertex_vars": lp.num_vertex_vars,
        "objective": [[j, _frac_text(c)] for j, c in lp.objective],
        "variables": variables,
        "rows": rows,
    }


def export_lp_json(lp: LinearProgram) -> str:
    return json.dumps(model_to_json(lp), indent=1, sort_keys=True) + "\n"
