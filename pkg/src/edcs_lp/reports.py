"""Ratio tables over (beta, beta_minus) grids and their CSV, JSON and SVG forms."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional
from xml.sax.saxutils import escape

from .errors import SolverError
from .lp import build_lp
from .profiles import Params
from .simplex import solve_exact, solve_float

EXACT_MAX_BETA = 12
WORKERS_ENV = "EDCS_LP_WORKERS"


def decimal_text(value, places: int = 4) -> str:
    """Round half-to-even to a fixed number of places; exact for fractions."""
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            d = Decimal(repr(float(value)))
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def frac_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def default_mode(params: Params) -> str:
    return "exact" if params.beta <= EXACT_MAX_BETA else "float"


@dataclass(frozen=True)
class RatioEntry:
    """Approximation ratio ``1 / optimum`` for one parameter pair."""

    beta: int
    beta_minus: int
    exact: Optional[Fraction]
    value: float
    mode: str
    solve_millis: int

    @property
    def params(self) -> Params:
        return Params(self.beta, self.beta_minus)

    @property
    def optimum(self):
        return 1 / self.exact if self.exact is not None else 1 / self.value

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "beta_minus": self.beta_minus,
            "ratio": self.value,
            "ratio_exact": frac_text(self.exact) if self.exact is not None else None,
            "optimum_exact": frac_text(1 / self.exact) if self.exact is not None else None,
            "mode": self.mode,
            "solve_millis": self.solve_millis,
        }


def solve_ratio(params: Params, mode: Optional[str] = None) -> RatioEntry:
    """Build and solve the LP for *params*; ``mode`` is ``exact``, ``float`` or auto."""
    mode = mode or default_mode(params)
    lp = build_lp(params)
    start = time.perf_counter()
    result = solve_exact(lp) if mode == "exact" else solve_float(lp)
    millis = round((time.perf_counter() - start) * 1000)
    if not result.optimal:
        raise SolverError(f"LP for {params} ended {result.status.value}")
    ratio = result.ratio
    if mode == "exact":
        return RatioEntry(params.beta, params.beta_minus, ratio, float(ratio), mode, millis)
    return RatioEntry(params.beta, params.beta_minus, None, float(ratio), mode, millis)


def _solve_cell(job: tuple[int, int, Optional[str]]) -> RatioEntry:
    b, bm, mode = job
    return solve_ratio(Params(b, bm), mode)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity")
               else os.cpu_count() or 1)


def grid_cells(max_beta: int, diagonal: Optional[Iterable[int]] = None) -> list[tuple[int, int]]:
    """All valid pairs with ``beta <= max_beta``, or only ``beta_minus = beta - c``."""
    if diagonal is None:
        return [(b, bm) for b in range(2, max_beta + 1) for bm in range(1, b)]
    cs = sorted(set(diagonal))
    return sorted((b, b - c) for c in cs for b in range(c + 1, max_beta + 1))


@dataclass
class RatioTable:
    entries: dict[tuple[int, int], RatioEntry]

    @property
    def betas(self) -> list[int]:
        return sorted({b for b, _ in self.entries})

    def best(self) -> Optional[RatioEntry]:
        if not self.entries:
            return None
        return max(self.entries.values(),
                   key=lambda e: (e.exact if e.exact is not None else Fraction(e.value),
                                  -e.beta, -e.beta_minus))

    def to_csv(self) -> str:
        """Grid layout: one row per beta, one column per beta_minus, '-' elsewhere."""
        betas = self.betas
        top = max(betas, default=2)
        lines = ["beta\\beta_minus," + ",".join(str(c) for c in range(1, top))]
        for b in range(2, top + 1):
            cells = []
            for bm in range(1, top):
                e = self.entries.get((b, bm))
                cells.append(decimal_text(e.exact if e.exact is not None else e.value)
                             if e else "-")
            lines.append(f"{b}," + ",".join(cells))
        return "\n".join(lines) + "\n"

    def to_diagonal_csv(self, offsets: Iterable[int]) -> str:
        """One row per beta, one column per offset ``c`` (pair (beta, beta - c))."""
        offsets = sorted(set(offsets))
        lines = ["beta," + ",".join(f"beta-{c}" for c in offsets)]
        for b in self.betas:
            cells = []
            for c in offsets:
                e = self.entries.get((b, b - c))
                cells.append(decimal_text(e.exact if e.exact is not None else e.value)
                             if e else "-")
            lines.append(f"{b}," + ",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        best = self.best()
        return {
            "cells": [self.entries[k].to_json() for k in sorted(self.entries)],
            "best": best.to_json() if best else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    def to_svg(self, cell: int = 36) -> str:
        """Heatmap (x: beta_minus, y: beta) with the best cell circled."""
        top = max(self.betas, default=2)
        margin = 60
        cols, rows = top - 1, top - 1
        width, height = margin + cols * cell + 20, margin + rows * cell + 40
        values = [e.value for e in self.entries.values()]
        lo, hi = (min(values), max(values)) if values else (0.0, 1.0)
        span = hi - lo or 1.0
        best = self.best()
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
               f'font-family="sans-serif" font-size="{max(6, cell // 4)}">',
               f'<rect width="{width}" height="{height}" fill="white"/>']
        for (b, bm), e in sorted(self.entries.items()):
            t = (e.value - lo) / span
            fill = "#%02x%02x%02x" % (round(255 - 200 * t), round(255 - 120 * t), round(255 - 40 * t))
            x, y = margin + (bm - 1) * cell, margin + (b - 2) * cell
            title = escape(f"({b},{bm}): {decimal_text(e.exact if e.exact is not None else e.value)}")
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}" '
                       f'stroke="#999" stroke-width="0.5"><title>{title}</title></rect>')
            if cell >= 30:
                out.append(f'<text x="{x + cell / 2}" y="{y + cell / 2 + 3}" text-anchor="middle">'
                           f'{decimal_text(e.value, 2)}</text>')
        step = max(1, top // 20)
        for bm in range(1, top, step):
            out.append(f'<text x="{margin + (bm - 0.5) * cell}" y="{margin - 8}" '
                       f'text-anchor="middle">{bm}</text>')
        for b in range(2, top + 1, step):
            out.append(f'<text x="{margin - 8}" y="{margin + (b - 1.5) * cell + 3}" '
                       f'text-anchor="end">{b}</text>')
        out.append(f'<text x="{margin + cols * cell / 2}" y="{margin - 28}" '
                   f'text-anchor="middle">beta_minus</text>')
        out.append(f'<text x="16" y="{margin + rows * cell / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {margin + rows * cell / 2})">beta</text>')
        if best:
            cx = margin + (best.beta_minus - 0.5) * cell
            cy = margin + (best.beta - 1.5) * cell
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{cell * 0.55}" fill="none" '
                       f'stroke="green" stroke-width="3"/>')
            out.append(f'<text x="{margin}" y="{height - 12}">best: ({best.beta},{best.beta_minus}) '
                       f'= {decimal_text(best.exact if best.exact is not None else best.value)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def sweep(cells: Iterable[tuple[int, int]], mode: Optional[str] = None,
          workers: Optional[int] = None) -> RatioTable:
    """Solve every cell, one job per cell; results are keyed, so order is irrelevant."""
    jobs = [(b, bm, mode) for b, bm in cells]
    for b, bm, _ in jobs:
        Params(b, bm)
    workers = workers or worker_count()
    if workers == 1 or len(jobs) <= 1:
        results = [_solve_cell(j) for j in jobs]
    else:
        # largest LPs first so the tail is short
        order = sorted(jobs, key=lambda j: -j[0])
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_solve_cell, order))
    return RatioTable({(e.beta, e.beta_minus): e for e in results})
