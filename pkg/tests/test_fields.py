import itertools

import numpy as np
import pytest

from swapinv.fields import (FieldCtx, arith, is_prime, make_field,
                            poly_is_irreducible, quad_root_count,
                            smallest_irreducible)


def brute_irreducible_quadratics(p):
    """Oracle: all monic irreducible quadratics over F_p by root search."""
    out = []
    for c1 in range(p):
        for c0 in range(p):
            if all((x * x + c1 * x + c0) % p != 0 for x in range(p)):
                out.append((c0, c1, 1))
    return out


class TestMakeField:
    def test_prime_field(self):
        ctx = make_field(3, 1)
        assert (ctx.p, ctx.n, ctx.q) == (3, 1, 3)
        assert ctx.modulus == (0, 1)
        assert ctx.chi_exp == 1

    def test_f9_modulus_is_smallest_irreducible(self):
        # oracle: enumerate all 9 monic quadratics over F_3; the
        # irreducible ones are x^2+1, x^2+x+2, x^2+2x+2, and x^2+1 has
        # the smallest base-3 value (1 + 0*3 = 1)
        cands = brute_irreducible_quadratics(3)
        assert (1, 0, 1) in cands and (2, 0, 1) not in cands
        smallest = min(cands, key=lambda f: f[0] + 3 * f[1])
        assert smallest == (1, 0, 1)
        assert make_field(3, 2).modulus == (1, 0, 1)

    def test_f25_modulus_matches_enumeration(self):
        cands = brute_irreducible_quadratics(5)
        smallest = min(cands, key=lambda f: f[0] + 5 * f[1])
        assert smallest == (2, 0, 1)  # x^2+2; x^2+1 has root 2
        ctx = make_field(5, 2)
        assert ctx.q == 25
        assert ctx.modulus == smallest

    @pytest.mark.parametrize("p,n", [(4, 1), (2, 3), (9, 1), (15, 2)])
    def test_rejects_bad_characteristic(self, p, n):
        with pytest.raises(ValueError):
            make_field(p, n)

    def test_rejects_bad_degree_and_cap(self):
        with pytest.raises(ValueError):
            make_field(7, 0)
        with pytest.raises(ValueError):
            make_field(7, 3, order_cap=300)

    def test_explicit_modulus_validated(self):
        ctx = make_field(3, 2, modulus=(2, 1, 1))  # x^2+x+2, irreducible
        assert ctx.modulus == (2, 1, 1)
        with pytest.raises(ValueError):
            make_field(3, 2, modulus=(2, 0, 1))  # x^2+2 = (x+1)(x+2)
        with pytest.raises(ValueError):
            make_field(3, 2, modulus=(1, 0, 2))  # not monic

    def test_chi_exp_invariant(self):
        for p, n in [(3, 3), (5, 2), (19, 1)]:
            ctx = make_field(p, n)
            assert ctx.q == p ** n
            assert 2 * ctx.chi_exp == ctx.q - 1


class TestArithmetic:
    def test_f7_basics(self):
        ctx = make_field(7, 1)
        assert ctx.add(3, 5) == 1
        assert arith(ctx, "add", 3, 5) == 1
        assert arith(ctx, "sub", 3, 5) == 5
        assert arith(ctx, "neg", 3) == 4
        assert arith(ctx, "mul", 3, 5) == 1
        with pytest.raises(ValueError):
            arith(ctx, "div", 1, 2)

    def test_mul_identity_everywhere(self):
        for p, n in [(3, 2), (7, 1), (5, 3)]:
            ctx = make_field(p, n)
            assert all(ctx.mul(x, 1) == x for x in ctx.elements())

    def test_f9_x_squared_reduces_to_minus_one(self):
        ctx = make_field(3, 2)  # modulus x^2+1
        x_el = ctx.index((0, 1))
        assert x_el == 3
        assert ctx.mul(x_el, x_el) == 2  # -1
        assert ctx.neg(1) == 2

    def test_table_and_scalar_paths_agree(self):
        t = make_field(3, 4)
        s = FieldCtx(3, 4, t.modulus, table_cap=1)
        assert s.add_t is None and s.mul_t is None
        for x, y in itertools.product(range(0, 81, 7), range(0, 81, 5)):
            assert t.add(x, y) == s.add(x, y)
            assert t.mul(x, y) == s.mul(x, y)
            assert t.neg(x) == s.neg(x)
            assert t.inv0(x) == s.inv0(x)
            assert t.chi(x) == s.chi(x)

    def test_inv0(self):
        for p, n in [(7, 1), (3, 2), (5, 2), (11, 1)]:
            ctx = make_field(p, n)
            assert ctx.inv0(0) == 0
            assert ctx.inv0(1) == 1
            for x in range(1, ctx.q):
                assert ctx.mul(x, ctx.inv0(x)) == 1
                assert ctx.inv0(ctx.inv0(x)) == x
        assert make_field(7, 1).inv0(3) == 5

    def test_element_embedding(self):
        ctx = make_field(7, 2)
        assert ctx.element(-1) == 6
        assert ctx.element(9) == 2
        assert ctx.neg(1) == ctx.element(-1)


class TestChiAndSqrt:
    def test_chi_values_f7(self):
        ctx = make_field(7, 1)
        assert ctx.chi(0) == 0
        assert ctx.chi(2) == 1   # 7 = -1 mod 8
        assert ctx.chi(6) == -1  # chi(-1), 7 = 3 mod 4

    def test_chi_multiplicative_and_balanced(self):
        for p, n in [(7, 1), (3, 2), (5, 2), (13, 1), (3, 3)]:
            ctx = make_field(p, n)
            q = ctx.q
            assert sum(1 for x in range(1, q) if ctx.chi(x) == 1) == (q - 1) // 2
            for x in range(1, q):
                for y in range(1, q, 3):
                    assert ctx.chi(ctx.mul(x, y)) == ctx.chi(x) * ctx.chi(y)

    def test_sqrt_canonical_and_total(self):
        ctx = make_field(7, 1)
        assert ctx.sqrt(0) == 0
        assert ctx.sqrt(4) == 2  # roots {2,5}, smaller index
        assert ctx.sqrt(3) is None  # squares mod 7 are {1,2,4}

    @pytest.mark.parametrize("p,n", [(7, 1), (13, 1), (3, 2), (5, 2), (3, 4), (11, 2)])
    def test_sqrt_exhaustive(self, p, n):
        ctx = make_field(p, n)
        for x in ctx.elements():
            r = ctx.sqrt(x)
            if r is None:
                assert ctx.chi(x) == -1
            else:
                assert ctx.mul(r, r) == x
                if x != 0:
                    assert r < ctx.neg(r)


class TestQuadRootCount:
    def test_examples(self):
        f3 = make_field(3, 1)
        # x^2+1 over F_3: D = -4 = 2, chi_3(2) = -1 -> no roots;
        # enumeration confirms
        assert quad_root_count(f3, 1, 0, 1) == 0
        assert sum(1 for x in range(3) if (x * x + 1) % 3 == 0) == 0
        for ctx in (f3, make_field(7, 1), make_field(5, 2)):
            assert quad_root_count(ctx, 1, 0, ctx.neg(1)) == 2  # x^2-1
            two = ctx.element(2)
            assert quad_root_count(ctx, 1, ctx.neg(two), 1) == 1  # (x-1)^2

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            quad_root_count(make_field(3, 1), 0, 1, 1)

    @pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)])
    def test_agrees_with_enumeration(self, p, n):
        ctx = make_field(p, n)
        q = ctx.q
        for a2 in range(1, q):
            for a1 in range(q):
                # roots of a2 x^2 + a1 x + a0 for every a0 at once:
                # count occurrences of -(a2 x^2 + a1 x) over x
                vals = [ctx.neg(ctx.add(ctx.mul(a2, ctx.mul(x, x)), ctx.mul(a1, x)))
                        for x in range(q)]
                freq = np.bincount(vals, minlength=q)
                for a0 in range(q):
                    assert quad_root_count(ctx, a2, a1, a0) == freq[a0]


def test_quad_root_count_exhaustive_all_fields_to_343():
    # vectorized enumeration cross-check: every quadratic over every odd
    # prime power q <= 343 (about half a minute)
    from swapinv.sweeps import prime_powers
    for p, n, _ in prime_powers(2, 343):
        ctx = make_field(p, n)
        q = ctx.q
        mul, add, neg, chi = ctx.mul_t, ctx.add_t, ctx.neg_t, ctx.chi_t
        idx = np.arange(q)
        sq = mul[idx, idx]
        four = ctx.element(4)
        base = (idx.astype(np.int64) * q)[:, None]
        for a2 in range(1, q):
            a2sq = mul[a2][sq]                       # a2*x^2 per x
            # values a2 x^2 + a1 x for all (x, a1)
            vals = add[a2sq[:, None], np.asarray(mul.T)]
            flat = (neg[vals].astype(np.int64).T + base).ravel()
            freq = np.bincount(flat, minlength=q * q).reshape(q, q)
            expected = freq                          # expected[a1, a0] = #roots
            d = add[sq[:, None], neg[mul[mul[four, a2]]][None, :]]  # (a1, a0)
            chid = chi[d].astype(np.int64)
            predicted = np.where(chid == 1, 2, np.where(chid == 0, 1, 0))
            assert np.array_equal(predicted, expected)


class TestMisc:
    def test_enumerate_order(self):
        assert list(make_field(3, 1).elements()) == [0, 1, 2]
        assert len(list(make_field(3, 2).elements())) == 9
        assert next(make_field(5, 1).elements()) == 0

    def test_is_prime(self):
        assert [m for m in range(2, 30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_poly_is_irreducible_quartic(self):
        # degree-4 root-freeness is not enough: (x^2+1)^2 = x^4+2x^2+1 has
        # no roots over F_3 but is reducible
        assert not poly_is_irreducible((1, 0, 2, 0, 1), 3)
        assert make_field(3, 4).modulus != (1, 0, 2, 0, 1)

    def test_smallest_irreducible_various(self):
        assert smallest_irreducible(3, 1) == (0, 1)
        f = smallest_irreducible(3, 4)
        assert poly_is_irreducible(f, 3) and len(f) == 5

    def test_ctx_equality_and_cache(self):
        assert make_field(7, 1) is make_field(7, 1)
        assert make_field(3, 2) == FieldCtx(3, 2, (1, 0, 1))
        assert make_field(3, 2) != make_field(3, 2, modulus=(2, 1, 1))

    def test_tables_read_only(self):
        ctx = make_field(7, 1)
        with pytest.raises(ValueError):
            ctx.mul_t[0, 0] = 1
