"""Function tables on F_{p^n}: the inverse map, swapped inverses, and
degree-one affine compositions.

A table stores the full image vector (q entries), since every downstream
pass reads each entry many times.  Tables are immutable after
construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fields import FieldCtx, make_field


@dataclass(frozen=True, eq=False)
class FuncTable:
    """A total function F_{p^n} -> F_{p^n} as an index-addressed image table."""

    ctx: FieldCtx
    images: np.ndarray
    is_perm: bool = field(init=False)

    def __post_init__(self):
        dtype = np.uint16 if self.ctx.q <= 0xFFFF else np.uint32
        images = np.ascontiguousarray(self.images, dtype=dtype)
        if images.shape != (self.ctx.q,):
            raise ValueError(f"images must have length q={self.ctx.q}")
        images.setflags(write=False)
        object.__setattr__(self, "images", images)
        perm = bool(np.array_equal(np.sort(images), np.arange(self.ctx.q)))
        object.__setattr__(self, "is_perm", perm)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __eq__(self, other):
        return (isinstance(other, FuncTable) and self.ctx == other.ctx
                and np.array_equal(self.images, other.images))

    def __repr__(self):
        return f"FuncTable(q={self.ctx.q}, is_perm={self.is_perm})"


def inverse_table(ctx: FieldCtx) -> FuncTable:
    """F(x) = x^(q-2), the inverse function with F(0) = 0."""
    if ctx.inv_t is not None:
        images = ctx.inv_t.copy()
    else:
        images = np.array([ctx.inv0(x) for x in ctx.elements()], dtype=np.int64)
    return FuncTable(ctx, images)


def swapped_inverse(ctx: FieldCtx, alpha: int, beta: int) -> FuncTable:
    """Inverse composed with the transposition exchanging alpha and beta.

    F(alpha) = inv0(beta), F(beta) = inv0(alpha), F = inv0 elsewhere.
    """
    if alpha == beta:
        raise ValueError("swap points must differ")
    images = np.array(inverse_table(ctx).images, dtype=np.int64)
    images[alpha] = ctx.inv0(beta)
    images[beta] = ctx.inv0(alpha)
    return FuncTable(ctx, images)


def swap01(ctx: FieldCtx) -> FuncTable:
    """The swapped inverse exchanging 0 and 1."""
    return swapped_inverse(ctx, 0, 1)


def swap1g(ctx: FieldCtx, gamma: int) -> FuncTable:
    """The swapped inverse exchanging 1 and gamma, gamma not in {0, 1}."""
    if gamma in (0, 1):
        raise ValueError("gamma must differ from 0 and 1")
    return swapped_inverse(ctx, 1, gamma)


def affine_compose(table: FuncTable, a1: int, a0: int, side: str) -> FuncTable:
    """Compose with the degree-one map A(x) = a1*x + a0, a1 != 0.

    side="post" gives A o F; side="pre" gives F o A.
    """
    if a1 == 0:
        raise ValueError("degree-one map needs a1 != 0")
    ctx = table.ctx
    affine = np.array([ctx.add(ctx.mul(a1, x), a0) for x in ctx.elements()],
                      dtype=np.int64)
    if side == "post":
        images = affine[table.images]
    elif side == "pre":
        images = table.images[affine]
    else:
        raise ValueError(f"side must be 'pre' or 'post', not {side!r}")
    return FuncTable(ctx, images)


# ----------------------------------------------------------------------
# Text import/export: line 1 "p n", line 2 modulus coefficients
# (constant term first), line 3 the q image indices.

def dump_table(table: FuncTable) -> str:
    ctx = table.ctx
    return "\n".join([
        f"{ctx.p} {ctx.n}",
        " ".join(str(c) for c in ctx.modulus),
        " ".join(str(v) for v in table.images),
    ]) + "\n"


def write_table(table: FuncTable, path) -> None:
    Path(path).write_text(dump_table(table))


def parse_table(text: str) -> FuncTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 3:
        raise ValueError("table format is three lines: 'p n', modulus, images")
    p, n = (int(t) for t in lines[0].split())
    modulus = tuple(int(t) for t in lines[1].split())
    ctx = make_field(p, n, modulus=modulus)
    images = [int(t) for t in lines[2].split()]
    if len(images) != ctx.q or not all(0 <= v < ctx.q for v in images):
        raise ValueError("images line must hold q indices in [0, q)")
    return FuncTable(ctx, np.array(images, dtype=np.int64))


def read_table(path) -> FuncTable:
    return parse_table(Path(path).read_text())
