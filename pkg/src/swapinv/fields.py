"""Arithmetic in F_{p^n} for odd primes p.

Field elements are plain integer indices in [0, q), q = p^n: the base-p
digits of an index are the coefficients of the representing polynomial,
digit i = coefficient of x^i.  Index 0 is the additive identity, index 1
the multiplicative identity, and constants embed as their own value, so
the prime subfield occupies indices 0..p-1.

The modulus is chosen deterministically (lexicographically smallest monic
irreducible polynomial, coefficient vectors compared as base-p integers
with the constant term least significant), so indices are reproducible
across runs.  For q up to a configurable threshold the full add/mul
tables are materialized as numpy arrays; above it every operation reduces
polynomials on the fly.
"""

from __future__ import annotations

import functools
from typing import Iterator, Optional

import numpy as np

DEFAULT_TABLE_CAP = 4096
DEFAULT_ORDER_CAP = 1 << 20


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


# ----------------------------------------------------------------------
# Polynomial helpers over F_p.  Coefficient tuples are little-endian
# (constant term first) and trimmed of leading zeros.

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mulmod(a, b, f, p):
    """a*b reduced mod the monic polynomial f, all over F_p."""
    if not a or not b:
        return ()
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    n = len(f) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n):
                prod[k - n + j] = (prod[k - n + j] - c * f[j]) % p
        prod[k] = 0
    return _poly_trim(prod)


def _poly_powmod(a, e, f, p):
    result = (1,)
    base = a
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_mod(a, b, p):
    """Remainder of a modulo b (b nonzero and trimmed), over F_p."""
    r = list(_poly_trim(a))
    db = len(b) - 1
    binv = pow(b[-1], p - 2, p)
    while r and len(r) - 1 >= db:
        c = (r[-1] * binv) % p
        if c:
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def poly_is_irreducible(f, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    f has no irreducible factor of degree d iff gcd(x^(p^d) - x, f) = 1;
    checking d up to deg(f)/2 decides irreducibility.
    """
    f = tuple(f)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    h = (0, 1)
    for _ in range(n // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(diff, f, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int):
    """Lexicographically smallest monic irreducible degree-n poly over F_p.

    Candidates x^n + c_(n-1)x^(n-1) + ... + c_0 are ordered by the base-p
    integer c_0 + c_1*p + ... ; for n = 1 the result is the polynomial x.
    """
    if n == 1:
        return (0, 1)
    for v in range(p ** n):
        coeffs = []
        t = v
        for _ in range(n):
            coeffs.append(t % p)
            t //= p
        f = tuple(coeffs) + (1,)
        if poly_is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------


class FieldCtx:
    """Immutable description of F_{p^n} plus cached arithmetic tables.

    Safe to share across workers: every operation is a pure function of
    (ctx, inputs) and the numpy tables are marked read-only.
    """

    __slots__ = ("p", "n", "q", "modulus", "chi_exp", "_pp", "_red",
                 "add_t", "mul_t", "neg_t", "inv_t", "chi_t")

    def __init__(self, p, n, modulus, table_cap=DEFAULT_TABLE_CAP):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self.chi_exp = (self.q - 1) // 2
        self._pp = tuple(p ** i for i in range(n))
        # reduction rows: x^(n+j) mod modulus as n coefficients, j = 0..n-2
        red = []
        if n >= 2:
            cur = tuple((-c) % p for c in self.modulus[:n])  # x^n mod f
            red.append(cur)
            for _ in range(n - 2):
                shifted = (0,) + cur[: n - 1]
                carry = cur[n - 1]
                cur = tuple((shifted[i] + carry * red[0][i]) % p for i in range(n))
                red.append(cur)
        self._red = tuple(red)
        if self.q <= table_cap:
            self._build_tables()
        else:
            self.add_t = self.mul_t = self.neg_t = self.inv_t = self.chi_t = None

    # -- construction ---------------------------------------------------

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        pp = np.array(self._pp, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // pp[None, :]) % p  # (q, n)

        neg_t = (((p - digits) % p) @ pp).astype(np.uint16)

        add_t = np.empty((q, q), dtype=np.uint16)
        chunk = max(1, (1 << 22) // max(q * n, 1))
        for lo in range(0, q, chunk):
            hi = min(lo + chunk, q)
            s = (digits[lo:hi, None, :] + digits[None, :, :]) % p
            add_t[lo:hi] = s @ pp

        mul_t = np.empty((q, q), dtype=np.uint16)
        if n == 1:
            for lo in range(0, q, chunk):
                hi = min(lo + chunk, q)
                mul_t[lo:hi] = (idx[lo:hi, None] * idx[None, :]) % p
        else:
            red = np.array(self._red, dtype=np.int64)  # (n-1, n)
            for x in range(q):
                xd = digits[x]
                acc = np.zeros((q, 2 * n - 1), dtype=np.int64)
                for i in range(n):
                    if xd[i]:
                        acc[:, i:i + n] += xd[i] * digits
                low = acc[:, :n] + acc[:, n:] @ red
                mul_t[x] = (low % p) @ pp

        inv_t = np.argmax(mul_t == 1, axis=1).astype(np.uint16)  # row 0 -> 0

        sq = mul_t[np.arange(q), np.arange(q)]
        chi_t = np.full(q, -1, dtype=np.int8)
        chi_t[sq] = 1
        chi_t[0] = 0

        for a in (add_t, mul_t, neg_t, inv_t, chi_t):
            a.setflags(write=False)
        self.add_t, self.mul_t = add_t, mul_t
        self.neg_t, self.inv_t, self.chi_t = neg_t, inv_t, chi_t

    # -- element encoding -----------------------------------------------

    def digits(self, x: int):
        return tuple((x // pi) % self.p for pi in self._pp)

    def index(self, coeffs) -> int:
        return sum((c % self.p) * pi for c, pi in zip(coeffs, self._pp))

    def element(self, k: int) -> int:
        """Embed the integer k via the prime subfield (k mod p)."""
        return k % self.p

    def elements(self) -> Iterator[int]:
        """All q elements in index order, starting from 0."""
        return iter(range(self.q))

    # -- arithmetic ------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.n == 1:
            return (x + y) % self.p
        if self.add_t is not None:
            return int(self.add_t[x, y])
        return self.index(a + b for a, b in zip(self.digits(x), self.digits(y)))

    def neg(self, x: int) -> int:
        if self.n == 1:
            return (-x) % self.p
        if self.neg_t is not None:
            return int(self.neg_t[x])
        return self.index(-a for a in self.digits(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.n == 1:
            return (x * y) % self.p
        if self.mul_t is not None:
            return int(self.mul_t[x, y])
        prod = _poly_mulmod(self.digits(x), self.digits(y), self.modulus, self.p)
        return self.index(prod)

    def pow(self, x: int, e: int) -> int:
        if self.n == 1:
            return pow(x, e, self.p) if e else 1 % self.p
        r, b = 1, x
        while e > 0:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def inv0(self, x: int) -> int:
        """x^(q-2): the inverse for x != 0, and 0 for x = 0."""
        if self.inv_t is not None:
            return int(self.inv_t[x])
        return self.pow(x, self.q - 2)

    def chi(self, x: int) -> int:
        """Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise."""
        if self.chi_t is not None:
            return int(self.chi_t[x])
        r = self.pow(x, self.chi_exp)
        if r == 0:
            return 0
        return 1 if r == 1 else -1

    def sqrt(self, x: int) -> Optional[int]:
        """A square root of x with the smaller index, or None if chi(x) = -1."""
        c = self.chi(x)
        if c == -1:
            return None
        if x == 0:
            return 0
        if self.q % 4 == 3:
            r = self.pow(x, (self.q + 1) // 4)
        else:
            r = self._tonelli_shanks(x)
        return min(r, self.neg(r))

    def _tonelli_shanks(self, x: int) -> int:
        q1, s = self.q - 1, 0
        while q1 % 2 == 0:
            q1 //= 2
            s += 1
        z = 2
        while self.chi(z) != -1:
            z += 1
        m, c = s, self.pow(z, q1)
        t, r = self.pow(x, q1), self.pow(x, (q1 + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.mul(b, b)
            m, c = i, self.mul(b, b)
            t, r = self.mul(t, c), self.mul(r, b)
        return r

    # ---------------------------------------------------------------------

    def poly_str(self, coeffs=None) -> str:
        """Pretty form of a coefficient vector (default: the modulus)."""
        coeffs = self.modulus if coeffs is None else coeffs
        terms = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == 1 else f"{c}{xs}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, q={self.q})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))


@functools.lru_cache(maxsize=None)
def _cached_field(p, n, modulus, table_cap):
    return FieldCtx(p, n, modulus, table_cap=table_cap)


def make_field(p: int, n: int, *, modulus=None, table_cap: int = DEFAULT_TABLE_CAP,
               order_cap: int = DEFAULT_ORDER_CAP) -> FieldCtx:
    """Construct F_{p^n} with the deterministic smallest irreducible modulus.

    An explicit modulus (constant term first, monic, irreducible, degree n)
    may be supplied, e.g. when reloading an exported table.
    """
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    if p == 2 or p % 2 == 0:
        raise ValueError(f"p must be odd, got {p}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p ** n > order_cap:
        raise ValueError(f"field order {p}^{n} exceeds the cap {order_cap}")
    if modulus is None:
        modulus = smallest_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if n == 1:
            if modulus != (0, 1):
                raise ValueError("degree-1 modulus must be the polynomial x")
        elif not poly_is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
    return _cached_field(p, n, modulus, table_cap)


def arith(ctx: FieldCtx, op: str, x: int, y: int = 0) -> int:
    """Dispatch form of the basic arithmetic: op in {add, sub, neg, mul}."""
    if op == "add":
        return ctx.add(x, y)
    if op == "sub":
        return ctx.sub(x, y)
    if op == "neg":
        return ctx.neg(x)
    if op == "mul":
        return ctx.mul(x, y)
    raise ValueError(f"unknown op {op!r}")


def quad_root_count(ctx: FieldCtx, a2: int, a1: int, a0: int) -> int:
    """Number of roots of a2*x^2 + a1*x + a0 over the field, a2 != 0.

    Decided by the character of the discriminant a1^2 - 4*a0*a2:
    chi = +1 -> 2 roots, chi = 0 -> 1, chi = -1 -> 0.
    """
    if a2 == 0:
        raise ValueError("leading coefficient must be nonzero")
    d = ctx.sub(ctx.mul(a1, a1), ctx.mul(ctx.element(4), ctx.mul(a0, a2)))
    c = ctx.chi(d)
    return 2 if c == 1 else (1 if c == 0 else 0)
