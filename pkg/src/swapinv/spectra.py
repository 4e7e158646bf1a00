"""Exhaustive computation of c-differential solution counts and spectra.

For a table F and twist c, the engine counts solutions of
F(x+a) - c*F(x) = b.  Per Definition of the uniformity, the row a = 0 is
admissible exactly when c != 1.  Counting never materializes a q^2 x q
structure: rows stream through length-q accumulators (or per-pass joint
bincounts of size q^2), keeping memory O(q^2) at worst.

Two code paths exist on purpose: `cdiff_count` is a plain Python scan
used as the reference, while the vectorized paths gather through the
field's cached tables.  Tests cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fields import FieldCtx
from .tables import FuncTable, swap01, swap1g

WITNESS_CAP = 16


@dataclass(frozen=True)
class SpectrumReport:
    """Per-c histogram of solution counts with the max and its witnesses."""

    c: int
    max_count: int
    witnesses: tuple          # (a, b) pairs attaining max_count, smallest first
    histogram: dict           # count -> frequency over all admissible (a, b)


@dataclass(frozen=True)
class CaseProbe:
    """Solution count of one (c, a, b) instance split by the P_a point set."""

    gamma: Optional[int]
    c: int
    a: int
    b: int
    count_in_pa: int
    count_outside_pa: int
    pa: tuple

    @property
    def total(self) -> int:
        return self.count_in_pa + self.count_outside_pa

    @property
    def degenerate(self) -> bool:
        return self.a == 0


def _a_start(c: int) -> int:
    return 1 if c == 1 else 0


def cdiff_count(table: FuncTable, c: int, a: int, b: int) -> int:
    """#{x : F(x+a) - c*F(x) = b} by direct scan (reference path)."""
    ctx = table.ctx
    count = 0
    for x in ctx.elements():
        if ctx.sub(table(ctx.add(x, a)), ctx.mul(c, table(x))) == b:
            count += 1
    return count


def difference_row(table: FuncTable, c: int, a: int) -> np.ndarray:
    """Values F(x+a) - c*F(x) for x = 0..q-1."""
    ctx = table.ctx
    images = table.images
    if ctx.add_t is not None:
        fxa = images[ctx.add_t[a]]
        neg_cfx = ctx.neg_t[ctx.mul_t[c][images]]
        return ctx.add_t[fxa, neg_cfx]
    return np.array([ctx.sub(table(ctx.add(x, a)), ctx.mul(c, table(x)))
                     for x in ctx.elements()], dtype=np.int64)


def c_row_histogram(table: FuncTable, c: int, a: int) -> np.ndarray:
    """Counts over all b for fixed (c, a); one O(q) pass."""
    return np.bincount(difference_row(table, c, a), minlength=table.ctx.q)


def c_uniformity(table: FuncTable, c: int, witness_cap: int = WITNESS_CAP) -> SpectrumReport:
    """Exact spectrum for one c: max over admissible (a, b), witnesses, histogram."""
    q = table.ctx.q
    hist = np.zeros(q + 1, dtype=np.int64)
    best = 0
    wits: list = []
    for a in range(_a_start(c), q):
        row = c_row_histogram(table, c, a)
        hist += np.bincount(row, minlength=q + 1)
        m = int(row.max())
        if m > best:
            best = m
            wits = [(a, int(b)) for b in np.flatnonzero(row == m)[:witness_cap]]
        elif m == best and len(wits) < witness_cap:
            for b in np.flatnonzero(row == m)[:witness_cap - len(wits)]:
                wits.append((a, int(b)))
    histogram = {int(k): int(v) for k, v in enumerate(hist) if v}
    return SpectrumReport(c=c, max_count=best, witnesses=tuple(wits), histogram=histogram)


def max_at_least(table: FuncTable, c: int, threshold: int) -> int:
    """Early-exit scan: stop at the first row whose max reaches threshold.

    Returns that row max (>= threshold) on early exit, else the exact max,
    so the value never exceeds the exact maximum and the threshold verdict
    always agrees with exact mode.
    """
    q = table.ctx.q
    best = 0
    for a in range(_a_start(c), q):
        m = int(c_row_histogram(table, c, a).max())
        if m >= threshold:
            return m
        best = max(best, m)
    return best


def differential_max(table: FuncTable, c: int) -> int:
    """Exact uniformity for one c, batched over all rows at once."""
    ctx = table.ctx
    q = ctx.q
    if ctx.add_t is None:
        return max(int(c_row_histogram(table, c, a).max())
                   for a in range(_a_start(c), q))
    images = table.images
    fxa = images[ctx.add_t]                       # (a, x) -> F(x+a)
    neg_cfx = ctx.neg_t[ctx.mul_t[c][images]]     # (x,)
    b_mat = ctx.add_t[fxa, neg_cfx[None, :]]
    base = np.arange(q, dtype=np.int64)[:, None] * q
    counts = np.bincount((b_mat + base).ravel(), minlength=q * q).reshape(q, q)
    rows = counts[1:] if c == 1 else counts
    return int(rows.max())


def uniformity_by_c(table: FuncTable) -> np.ndarray:
    """Exact uniformity for every c at once: entry [c] = max over admissible (a, b)."""
    ctx = table.ctx
    q = ctx.q
    if ctx.add_t is None:
        return np.array([differential_max(table, c) for c in range(q)], dtype=np.int64)
    images = table.images
    neg_cfx = ctx.neg_t[ctx.mul_t[:, images]]     # (c, x) -> -c*F(x)
    base = np.arange(q, dtype=np.int64)[:, None] * q
    best = np.zeros(q, dtype=np.int64)
    for a in range(q):
        fxa = images[ctx.add_t[a]]
        b_mat = ctx.add_t[fxa[None, :], neg_cfx]  # (c, x)
        counts = np.bincount((b_mat + base).ravel(), minlength=q * q).reshape(q, q)
        rowmax = counts.max(axis=1)
        if a == 0:
            rowmax[1] = 0                          # a = 0 inadmissible for c = 1
        np.maximum(best, rowmax, out=best)
    return best


def threshold_survey_by_c(table: FuncTable, threshold: int, cs=None) -> np.ndarray:
    """Running per-c max with a global early exit.

    Scans rows a = 0, 1, ... and stops once every watched c has seen a
    count >= threshold.  Watched entries therefore report a value in
    [threshold, exact max]; unwatched or never-crossing entries report
    their exact max (all rows were seen).  Deterministic for fixed inputs.
    """
    ctx = table.ctx
    q = ctx.q
    watch = np.arange(q) if cs is None else np.asarray(list(cs), dtype=np.int64)
    if ctx.add_t is None:
        watched = set(watch.tolist())
        out = np.zeros(q, dtype=np.int64)
        for c in range(q):
            out[c] = (max_at_least(table, c, threshold) if c in watched
                      else differential_max(table, c))
        return out
    images = table.images
    neg_cfx = ctx.neg_t[ctx.mul_t[:, images]]
    base = np.arange(q, dtype=np.int64)[:, None] * q
    best = np.zeros(q, dtype=np.int64)
    for a in range(q):
        fxa = images[ctx.add_t[a]]
        b_mat = ctx.add_t[fxa[None, :], neg_cfx]
        counts = np.bincount((b_mat + base).ravel(), minlength=q * q).reshape(q, q)
        rowmax = counts.max(axis=1)
        if a == 0:
            rowmax[1] = 0
        np.maximum(best, rowmax, out=best)
        if watch.size and best[watch].min() >= threshold:
            break
    return best


def full_c_sweep(table: FuncTable, c_filter: str = "all") -> list:
    """c_uniformity for each admissible c, in index order."""
    starts = {"all": 0, "exclude_0": 1, "exclude_0_1": 2}
    if c_filter not in starts:
        raise ValueError(f"c_filter must be one of {sorted(starts)}")
    return [c_uniformity(table, c) for c in range(starts[c_filter], table.ctx.q)]


def classify_pcn(report: SpectrumReport) -> str:
    if report.max_count == 1:
        return "PcN"
    if report.max_count == 2:
        return "APcN"
    return f"neither({report.max_count})"


def pa_point_set(family: str, ctx: FieldCtx, a: int, gamma: Optional[int] = None) -> tuple:
    """The exception set P_a, duplicates collapsed, sorted by index."""
    if family == "swap01":
        pts = {0, 1, ctx.neg(a), ctx.sub(1, a)}
    elif family == "swap1g":
        if gamma is None or gamma in (0, 1):
            raise ValueError("swap1g requires gamma outside {0, 1}")
        pts = {0, 1, gamma, ctx.neg(a), ctx.sub(1, a), ctx.sub(gamma, a)}
    else:
        raise ValueError(f"unknown family {family!r}")
    return tuple(sorted(pts))


def pa_probe(family: str, ctx: FieldCtx, c: int, a: int, b: int,
             gamma: Optional[int] = None) -> CaseProbe:
    """Split the solution count of F(x+a) - c*F(x) = b by membership in P_a."""
    if family == "swap01":
        if gamma is not None:
            raise ValueError("swap01 takes no gamma")
        table = swap01(ctx)
    elif family == "swap1g":
        if gamma is None or gamma in (0, 1):
            raise ValueError("swap1g requires gamma outside {0, 1}")
        table = swap1g(ctx, gamma)
    else:
        raise ValueError(f"unknown family {family!r}")
    pa = pa_point_set(family, ctx, a, gamma)
    pa_set = set(pa)
    count_in = count_out = 0
    for x in ctx.elements():
        if ctx.sub(table(ctx.add(x, a)), ctx.mul(c, table(x))) == b:
            if x in pa_set:
                count_in += 1
            else:
                count_out += 1
    return CaseProbe(gamma=gamma, c=c, a=a, b=b, count_in_pa=count_in,
                     count_outside_pa=count_out, pa=pa)
