import numpy as np
import pytest

from swapinv.fields import make_field
from swapinv.tables import (FuncTable, affine_compose, dump_table,
                            inverse_table, parse_table, read_table, swap01,
                            swap1g, swapped_inverse, write_table)


class TestInverseTable:
    def test_fixed_points_and_f7(self):
        ctx = make_field(7, 1)
        inv = inverse_table(ctx)
        assert inv(0) == 0
        assert inv(1) == 1
        assert inv(3) == 5
        assert inv.is_perm

    def test_matches_scalar_inv0(self):
        for p, n in [(3, 2), (11, 1), (5, 2)]:
            ctx = make_field(p, n)
            inv = inverse_table(ctx)
            assert all(inv(x) == ctx.inv0(x) for x in ctx.elements())


class TestSwappedInverse:
    def test_swap01(self):
        ctx = make_field(7, 1)
        f = swap01(ctx)
        assert f(0) == 1 and f(1) == 0
        assert all(f(x) == ctx.inv0(x) for x in range(2, 7))
        assert f.is_perm

    def test_swap1g(self):
        ctx = make_field(7, 1)
        gamma = 3
        f = swap1g(ctx, gamma)
        assert f(1) == ctx.inv0(gamma) == 5
        assert f(gamma) == 1
        assert f(2) == 4
        assert f.is_perm

    def test_rejects_equal_points_and_bad_gamma(self):
        ctx = make_field(7, 1)
        with pytest.raises(ValueError):
            swapped_inverse(ctx, 2, 2)
        with pytest.raises(ValueError):
            swap1g(ctx, 0)
        with pytest.raises(ValueError):
            swap1g(ctx, 1)

    def test_differs_from_inverse_in_exactly_two_positions(self):
        for p, n in [(7, 1), (3, 2), (5, 2)]:
            ctx = make_field(p, n)
            inv = inverse_table(ctx)
            for alpha in range(ctx.q):
                for beta in range(ctx.q):
                    if alpha == beta:
                        continue
                    f = swapped_inverse(ctx, alpha, beta)
                    diff = {x for x in ctx.elements() if f(x) != inv(x)}
                    assert diff == {alpha, beta}

    def test_degenerate_swap_with_own_inverse_allowed(self):
        # beta = inv0(alpha) is permitted and yields an ordinary table
        ctx = make_field(7, 1)
        f = swapped_inverse(ctx, 3, 5)  # 5 = 3^-1
        assert f.is_perm
        assert f(3) == 3 and f(5) == 5


class TestAffineCompose:
    def test_identity_map(self):
        ctx = make_field(7, 1)
        f = swap01(ctx)
        for side in ("pre", "post"):
            assert affine_compose(f, 1, 0, side) == f

    def test_post_compose_example(self):
        # A(x) = 2x+1 applied after Inv over F_7: G(3) = 2*5+1 = 4
        ctx = make_field(7, 1)
        g = affine_compose(inverse_table(ctx), 2, 1, "post")
        assert g(3) == 4

    def test_rejects_degenerate(self):
        ctx = make_field(7, 1)
        with pytest.raises(ValueError):
            affine_compose(inverse_table(ctx), 0, 1, "post")
        with pytest.raises(ValueError):
            affine_compose(inverse_table(ctx), 1, 1, "sideways")

    def test_permutation_flag_preserved(self):
        ctx = make_field(5, 2)
        f = swap1g(ctx, 7)
        assert affine_compose(f, 3, 11, "pre").is_perm
        assert affine_compose(f, 3, 11, "post").is_perm

    def test_swap_normalization_identity(self):
        # Inv o (1, alpha^-1 beta) = A o (Inv o (alpha, beta)) o A, A(x) = alpha*x
        for p, n in [(7, 1), (3, 2), (11, 1)]:
            ctx = make_field(p, n)
            for alpha in range(1, ctx.q):
                for beta in range(ctx.q):
                    if beta == alpha:
                        continue
                    lhs = swapped_inverse(ctx, 1, ctx.mul(ctx.inv0(alpha), beta))
                    rhs = affine_compose(
                        affine_compose(swapped_inverse(ctx, alpha, beta), alpha, 0, "pre"),
                        alpha, 0, "post")
                    assert lhs == rhs


class TestImportExport:
    def test_round_trip_bit_exact(self, tmp_path):
        ctx = make_field(3, 2)
        f = swap1g(ctx, 5)
        path = tmp_path / "table.txt"
        write_table(f, path)
        g = read_table(path)
        assert g == f
        assert dump_table(g) == path.read_text()

    def test_format_shape(self):
        ctx = make_field(3, 1)
        text = dump_table(inverse_table(ctx))
        lines = text.splitlines()
        assert lines[0] == "3 1"
        assert lines[1] == "0 1"
        assert lines[2] == "0 1 2"

    def test_parse_validates(self):
        with pytest.raises(ValueError):
            parse_table("3 1\n0 1\n0 1\n")  # wrong image count
        with pytest.raises(ValueError):
            parse_table("3 1\n0 1\n0 1 5\n")  # index out of range
        with pytest.raises(ValueError):
            parse_table("3 2\n2 0 1\n" + " ".join("0" * 1) + "\n")  # reducible modulus

    def test_non_permutation_table_allowed(self):
        f = parse_table("3 1\n0 1\n0 0 1\n")
        assert not f.is_perm
        assert f(0) == 0 and f(1) == 0


class TestFuncTable:
    def test_length_validated(self):
        ctx = make_field(3, 1)
        with pytest.raises(ValueError):
            FuncTable(ctx, np.array([0, 1], dtype=np.uint16))

    def test_images_read_only(self):
        f = inverse_table(make_field(7, 1))
        with pytest.raises(ValueError):
            f.images[0] = 3
