"""Closed-form predictors for the uniformity classifications.

Each predictor evaluates its theorem's conditions with exact field
arithmetic and returns a Prediction carrying labels for the clauses that
fired, so a sweep mismatch names the disagreeing clause.  Where a clause
involves an ambiguous square root (sqrt(5), sqrt(-3)), both roots are
evaluated, one per theorem bullet, and the results ORed.

Squareness conventions: "nonzero square" tests chi = +1 and "not a
square" tests chi = -1 (strict), so chi = 0 fails both.  The brute-force
sweeps are the arbiter for these readings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fields import FieldCtx


@dataclass(frozen=True)
class Prediction:
    """Either an exact value (lo == hi) or an inclusive range."""

    lo: int
    hi: int
    clauses: tuple = ()

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    @classmethod
    def exact_value(cls, value: int, *clauses: str) -> "Prediction":
        return cls(value, value, tuple(clauses))

    @classmethod
    def bounded(cls, lo: int, hi: int) -> "Prediction":
        return cls(lo, hi)

    def __str__(self):
        return str(self.lo) if self.exact else f"[{self.lo},{self.hi}]"


def predict_du_inv(p: int, n: int) -> Prediction:
    """Differential uniformity of the inverse function: 2, 3 or 4 by q mod 3."""
    if p % 2 == 0:
        raise ValueError("odd characteristic only")
    if p == 3:
        return Prediction.exact_value(3, "du_inv:p=3")
    if pow(p, n, 3) == 2:
        return Prediction.exact_value(2, "du_inv:q=2 mod 3")
    return Prediction.exact_value(4, "du_inv:q=1 mod 3")


def predict_cdu_inv(ctx: FieldCtx, c: int) -> Prediction:
    """c-differential uniformity of the inverse, c outside {0,1}: 2 or 3.

    2 exactly when neither c^2-4c nor 1-4c is a nonzero square.  The two
    values are the discriminants of the only rows that can reach three
    solutions (b = 1/a and b = c/a); c = 4 and c = 1/4 zero one of them
    but the other must still fail to be a nonzero square, so chi = 0
    counts as "not a square" here.  Verified exhaustively by the sweep.
    """
    if c in (0, 1):
        raise ValueError("c must avoid {0, 1}")
    four = ctx.element(4)
    d1 = ctx.sub(ctx.mul(c, c), ctx.mul(four, c))
    d2 = ctx.sub(1, ctx.mul(four, c))
    if ctx.chi(d1) != 1 and ctx.chi(d2) != 1:
        return Prediction.exact_value(2, "cdu_inv:c^2-4c and 1-4c both nonsquares")
    return Prediction.exact_value(3, "cdu_inv:otherwise")


def _predict_du_swap01(ctx: FieldCtx) -> Prediction:
    p, n, q = ctx.p, ctx.n, ctx.q
    if p == 3 and n % 2 == 0:
        return Prediction.exact_value(5, "du01:p=3 and n even")
    clauses = []
    if p == 5 and n % 4 == 0:
        clauses.append("du01:p=5, n=0 mod 4")
    if q % 5 in (1, 4) and p != 3:
        root5 = ctx.sqrt(ctx.element(5))
        half = ctx.inv0(ctx.element(2))
        for s in (root5, ctx.neg(root5)):
            if ctx.chi(ctx.mul(ctx.add(ctx.element(-5), s), half)) == 1:
                clauses.append("du01:q=±1 mod 5, (-5±sqrt5)/2 square")
                break
    if q % 3 == 1 and p != 5:
        root = ctx.sqrt(ctx.element(-3))
        half = ctx.inv0(ctx.element(2))
        three = ctx.element(3)
        for s in (root, ctx.neg(root)):
            if ctx.chi(ctx.mul(ctx.add(ctx.element(-5), ctx.mul(three, s)), half)) == 1:
                clauses.append("du01:q=1 mod 3, (-5±3sqrt-3)/2 nonzero square")
                break
    if clauses:
        return Prediction.exact_value(4, *clauses)
    return Prediction.exact_value(3, "du01:otherwise")


def predict_cdu_swap01(ctx: FieldCtx, c: int) -> Prediction:
    """Uniformity of Inv o (0,1) for q > 5, c != 0.

    c = 1: exact 3, 4 or 5 (full classification).  c outside {0,1}:
    exact 5 when one of the three theorem clauses fires, else in [3,4].
    """
    if ctx.q <= 5:
        raise ValueError("classification requires q > 5")
    if c == 0:
        raise ValueError("c must be nonzero")
    if c == 1:
        return _predict_du_swap01(ctx)
    q = ctx.q
    clauses = []
    minus2 = ctx.element(-2)
    if q % 8 in (1, 7) and c in (minus2, ctx.inv0(minus2)):
        clauses.append("cdu01:q=±1 mod 8, c in {-2,-1/2}")
    if q % 3 == 1:
        m3 = ctx.element(-3)
        root = ctx.sqrt(m3)
        five = ctx.element(5)
        sixth = ctx.inv0(ctx.element(6))
        for s in (root, ctx.neg(root)):
            if s == five:  # the bullet's side condition sqrt(-3) != 5
                continue
            if c not in (s, ctx.inv0(s)):
                continue
            if ctx.chi(ctx.mul(ctx.add(m3, ctx.mul(five, s)), sixth)) == 1:
                clauses.append("cdu01:q=1 mod 3, c=sqrt(-3) bullet")
                break
    if q % 5 in (1, 4):
        four = ctx.element(4)
        seven = ctx.element(7)
        thirty = ctx.element(30)
        c2 = ctx.mul(c, c)
        if ctx.sub(ctx.add(c2, ctx.mul(four, c)), 1) == 0 and \
                ctx.chi(ctx.sub(seven, ctx.mul(thirty, c))) == 1:
            clauses.append("cdu01:q=±1 mod 5, c^2+4c-1=0, 7-30c square")
        if ctx.sub(ctx.sub(c2, ctx.mul(four, c)), 1) == 0 and \
                ctx.chi(ctx.sub(seven, ctx.mul(thirty, ctx.inv0(c)))) == 1:
            clauses.append("cdu01:q=±1 mod 5, c^2-4c-1=0, 7-30/c square")
    if clauses:
        return Prediction.exact_value(5, *clauses)
    return Prediction.bounded(3, 4)


def predict_lemma_a1(ctx: FieldCtx) -> Prediction:
    """The pinned count at (c, a, b) = (-1/2, 1, 1/2) for Inv o (0,1), q > 5."""
    if ctx.q <= 5:
        raise ValueError("q > 5 required")
    if ctx.q % 8 in (1, 7):
        return Prediction.exact_value(5, "lemma_a1:q=±1 mod 8")
    return Prediction.exact_value(3, "lemma_a1:q=±3 mod 8")


def predict_du_swap1g(ctx: FieldCtx, gamma: int) -> Prediction:
    """Differential uniformity of Inv o (1,gamma): 7, 6, or at most 5."""
    if gamma in (0, 1):
        raise ValueError("gamma must avoid {0, 1}")
    minus1 = ctx.neg(1)
    if gamma == minus1 and ctx.p == 5 and ctx.n % 2 == 0:
        return Prediction.exact_value(7, "du1g:gamma=-1, p=5, n even")
    if gamma == minus1 and (ctx.q % 8 == 1 or ctx.q % 15 in (1, 4)):
        return Prediction.exact_value(6, "du1g:gamma=-1, q=1 mod 8 or q=1,4 mod 15")
    return Prediction.bounded(1, 5)


def predict_cdu_swap1g(ctx: FieldCtx, gamma: int, c: int) -> Prediction:
    """Uniformity of Inv o (1,gamma) for c outside {0,1}: 6 or at most 5.

    6 exactly when gamma*c^2 + 2(gamma^2+gamma+1)*c + gamma = 0, c != -1,
    and -c is a square.
    """
    if gamma in (0, 1):
        raise ValueError("gamma must avoid {0, 1}")
    if c in (0, 1):
        raise ValueError("c must avoid {0, 1}")
    if (_gamma_quadratic(ctx, gamma, c) == 0 and c != ctx.neg(1)
            and ctx.chi(ctx.neg(c)) == 1):
        return Prediction.exact_value(6, "cdu1g:gamma c^2+2(gamma^2+gamma+1)c+gamma=0, -c square")
    return Prediction.bounded(1, 5)


def _gamma_quadratic(ctx: FieldCtx, gamma: int, c: int) -> int:
    """gamma*c^2 + 2*(gamma^2 + gamma + 1)*c + gamma."""
    g2 = ctx.mul(gamma, gamma)
    mid = ctx.mul(ctx.element(2), ctx.add(ctx.add(g2, gamma), 1))
    return ctx.add(ctx.add(ctx.mul(gamma, ctx.mul(c, c)), ctx.mul(mid, c)), gamma)


def outside_pa_predicate(family: str, ctx: FieldCtx, c: int, a: int, b: int,
                         gamma: Optional[int] = None) -> bool:
    """True iff F(x+a) - c*F(x) = b has two solutions outside P_a.

    The shared conditions: (ab+c-1)^2 - 4abc a nonzero square, b != 0,
    and the two swap01 linear non-vanishing conditions; the swap1g family
    adds its two gamma conditions.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if family not in ("swap01", "swap1g"):
        raise ValueError(f"unknown family {family!r}")
    if family == "swap1g" and (gamma is None or gamma in (0, 1)):
        raise ValueError("swap1g requires gamma outside {0, 1}")
    if b == 0:
        return False
    ab = ctx.mul(a, b)
    t = ctx.sub(ctx.add(ab, c), 1)
    disc = ctx.sub(ctx.mul(t, t), ctx.mul(ctx.element(4), ctx.mul(ab, c)))
    if ctx.chi(disc) != 1:
        return False
    bc1 = ctx.sub(ctx.add(b, c), 1)
    if ctx.add(ctx.mul(ctx.add(b, c), a), bc1) == 0:
        return False
    if ctx.add(ctx.mul(ctx.sub(1, b), a), bc1) == 0:
        return False
    if family == "swap1g":
        bg = ctx.mul(b, gamma)
        gw = ctx.mul(gamma, ctx.sub(ctx.add(bg, c), 1))
        if ctx.add(ctx.mul(ctx.add(bg, c), a), gw) == 0:
            return False
        if ctx.add(ctx.mul(ctx.sub(1, bg), a), gw) == 0:
            return False
    return True


def pa_fourcase_swap1g(ctx: FieldCtx, gamma: int, c: int):
    """The unique (a, b) giving four P_a solutions for c outside {0,1}, if any.

    Exists iff gamma*c^2 + 2(gamma^2+gamma+1)*c + gamma = 0 and c != -1;
    then a = (gamma^2 - c)/(gamma + c) and b = (1 - c)/(1 + gamma).  The
    divisions are guarded: the supporting argument rules out c = -gamma
    and gamma = -1 under the conditions, so a violated guard is reported
    rather than skipped.
    """
    if gamma in (0, 1):
        raise ValueError("gamma must avoid {0, 1}")
    if c in (0, 1):
        raise ValueError("c must avoid {0, 1}")
    if _gamma_quadratic(ctx, gamma, c) != 0 or c == ctx.neg(1):
        return None
    if ctx.add(gamma, c) == 0 or ctx.add(gamma, 1) == 0:
        raise ArithmeticError(
            f"four-solution case division guard violated at gamma={gamma}, c={c}")
    a = ctx.mul(ctx.sub(ctx.mul(gamma, gamma), c), ctx.inv0(ctx.add(gamma, c)))
    b = ctx.mul(ctx.sub(1, c), ctx.inv0(ctx.add(1, gamma)))
    return (a, b)


def du_fourcase_swap1g(ctx: FieldCtx, gamma: int) -> list:
    """All (a, b) with four P_a solutions at c = 1; nonempty only for gamma = -1.

    Pairs come from the roots of a^4 - 3a^2 + 1 (b = 1/a, q = ±1 mod 5)
    and of a^2 = 2 (b = a, q = ±1 mod 8), with a outside
    {0, ±1, ±gamma, ±(gamma-1)}.
    """
    if gamma in (0, 1):
        raise ValueError("gamma must avoid {0, 1}")
    if gamma != ctx.neg(1):
        return []
    gm1 = ctx.sub(gamma, 1)
    excluded = {0, 1, ctx.neg(1), gamma, ctx.neg(gamma), gm1, ctx.neg(gm1)}
    out = []
    if ctx.q % 5 in (1, 4):
        root5 = ctx.sqrt(ctx.element(5))
        half = ctx.inv0(ctx.element(2))
        roots = set()
        for s in (root5, ctx.neg(root5)):
            roots.add(ctx.mul(ctx.add(ctx.neg(1), s), half))  # a^2 + a - 1 = 0
            roots.add(ctx.mul(ctx.add(1, s), half))           # a^2 - a - 1 = 0
        for a in sorted(roots):
            if a not in excluded:
                out.append((a, ctx.inv0(a)))
    if ctx.q % 8 in (1, 7):
        root2 = ctx.sqrt(ctx.element(2))
        for a in sorted({root2, ctx.neg(root2)}):
            if a not in excluded:
                out.append((a, a))
    return sorted(out)


def chi_congruence_table(v: int, p: int, n: int) -> int:
    """The textbook chi values of -1, 5, -3, 2 from q mod 4, 5, 3, 8."""
    if v == -1:
        return 1 if pow(p, n, 4) == 1 else -1
    if v == 5:
        if p == 5:
            raise ValueError("chi(5) table needs p != 5")
        return 1 if pow(p, n, 5) in (1, 4) else -1
    if v == -3:
        if p == 3:
            raise ValueError("chi(-3) table needs p != 3")
        return 1 if pow(p, n, 3) == 1 else -1
    if v == 2:
        return 1 if pow(p, n, 8) in (1, 7) else -1
    raise ValueError(f"no congruence table for {v}")
