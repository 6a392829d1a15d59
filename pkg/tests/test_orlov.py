import random

import pytest

from mfkit import mf
from mfkit.graded import DegreeMultiset
from mfkit.mf import BettiTable
from mfkit.orlov import (
    CohomologyTable,
    HypersurfaceContext,
    Phi0Descriptor,
    betti_to_table,
    check_bgs,
    check_rho,
    dual_table,
    euclid_split,
    phi0_residue,
    rho_of_mf,
    rho_of_table,
    shamash_degrees,
    table_to_betti,
)

from _factories import random_reduced_mf

CTX34 = HypersurfaceContext(3, 4)


def random_context(rng, n_max=6, d_extra=4):
    n = rng.randint(1, n_max)
    d = rng.randint(n + 1, n + 1 + d_extra)  # a <= 0
    return HypersurfaceContext(n, d)


def random_betti(rng, size=6):
    counts = {}
    for _ in range(rng.randint(0, size)):
        key = (rng.randint(0, 1), rng.randint(-10, 10))
        counts[key] = counts.get(key, 0) + rng.randint(1, 5)
    return BettiTable.from_mapping(counts)


def random_table(ctx, rng, size=6):
    counts = {}
    for _ in range(rng.randint(0, size)):
        key = (rng.randint(0, ctx.n), rng.randint(-2, ctx.n + 2))
        counts[key] = counts.get(key, 0) + rng.randint(1, 5)
    return CohomologyTable.from_mapping(ctx.n, counts)


class TestContext:
    def test_derived_quantities(self):
        assert (CTX34.a, CTX34.e) == (0, 1)
        ctx = HypersurfaceContext(4, 7)
        assert (ctx.a, ctx.e) == (-2, 2)

    def test_bounds(self):
        with pytest.raises(ValueError):
            HypersurfaceContext(0, 3)
        with pytest.raises(ValueError):
            HypersurfaceContext(3, 0)


class TestEuclidSplit:
    def test_examples(self):
        assert euclid_split(CTX34, 0) == (0, 0)
        assert euclid_split(CTX34, 2) == (0, 2)
        assert euclid_split(CTX34, 6) == (-1, 2)

    def test_defining_property(self):
        rng = random.Random(3)
        for _ in range(300):
            ctx = random_context(rng)
            j = rng.randint(-30, 30)
            q, r = euclid_split(ctx, j)
            assert ctx.a - j == q * ctx.d - r
            assert 0 <= r < ctx.d


class TestTranslate:
    def test_empty(self):
        assert betti_to_table(CTX34, BettiTable.from_mapping({})).entries == ()

    def test_degree_zero_generators(self):
        table = betti_to_table(CTX34, BettiTable.from_mapping({(1, 0): 2}))
        assert table.entries == (((0, 0), 2),)
        assert table.out_of_support() == ()

    def test_out_of_support_flagged(self):
        table = betti_to_table(CTX34, BettiTable.from_mapping({(0, 2): 2}))
        assert table.entries == (((2, 3), 2),)
        assert table.out_of_support() == ((2, 3),)

    def test_total_preserved(self):
        rng = random.Random(13)
        for _ in range(100):
            ctx = random_context(rng)
            betti = random_betti(rng)
            assert betti_to_table(ctx, betti).total() == betti.total()

    def test_fano_rejected(self):
        with pytest.raises(ValueError, match="Fano"):
            betti_to_table(HypersurfaceContext(3, 2), BettiTable.from_mapping({}))


class TestInvert:
    def test_example(self):
        table = CohomologyTable.from_mapping(3, {(0, 0): 2})
        assert table_to_betti(CTX34, table).mapping() == {(1, 0): 2}

    def test_empty(self):
        assert table_to_betti(CTX34, CohomologyTable.from_mapping(3, {})).entries == ()

    def test_roundtrips_both_ways(self):
        rng = random.Random(17)
        for _ in range(100):
            ctx = random_context(rng)
            betti = random_betti(rng)
            assert table_to_betti(ctx, betti_to_table(ctx, betti)) == betti
            table = random_table(ctx, rng)
            assert betti_to_table(ctx, table_to_betti(ctx, table)) == table

    def test_out_of_range_p_rejected(self):
        table = CohomologyTable.from_mapping(3, {(-2, 0): 1})
        with pytest.raises(ValueError, match="outside"):
            table_to_betti(HypersurfaceContext(3, 4), table)


class TestRho:
    def test_fermat_pipeline(self):
        F = mf.fermat(2, 2)
        assert rho_of_mf(F) == 4 == 2 ** (CTX34.e + 1)
        table = betti_to_table(CTX34, mf.betti(F))
        assert rho_of_table(table) == 4

    def test_zero_rank(self):
        from mfkit.algebra import QQ, parse_poly
        assert rho_of_mf(mf.zero_mf(parse_poly("x0^4", QQ, 1))) == 0

    def test_reduction_before_counting(self):
        F = mf.fermat(2, 2)
        padded = mf.direct_sum(mf.trivial_one_f(F.f), F)
        assert rho_of_mf(mf.reduce(padded)) == 4

    def test_non_reduced_rejected(self):
        F = mf.fermat(2, 2)
        padded = mf.direct_sum(F, mf.trivial_one_f(F.f))
        with pytest.raises(ValueError, match="reduced"):
            rho_of_mf(padded)

    def test_translated_total_is_double_rank(self):
        rng = random.Random(19)
        for _ in range(30):
            F = random_reduced_mf(rng, nvars=4, d=4)
            table = betti_to_table(CTX34, mf.betti(F))
            assert table.total() == 2 * F.rank0 == rho_of_mf(F)


class TestDualTable:
    def test_example(self):
        table = CohomologyTable.from_mapping(3, {(0, 0): 2})
        assert dual_table(CTX34, table).entries == (((3, 2), 2),)

    def test_involution_and_total(self):
        rng = random.Random(23)
        for _ in range(100):
            ctx = random_context(rng)
            counts = {}
            for _ in range(rng.randint(0, 6)):
                key = (rng.randint(0, ctx.n), rng.randint(0, ctx.n - 1))
                counts[key] = counts.get(key, 0) + rng.randint(1, 5)
            table = CohomologyTable.from_mapping(ctx.n, counts)
            dualized = dual_table(ctx, table)
            assert dual_table(ctx, dualized) == table
            assert dualized.total() == table.total()

    def test_out_of_support_rejected(self):
        table = CohomologyTable.from_mapping(3, {(2, 3): 2})
        with pytest.raises(ValueError, match="out-of-support"):
            dual_table(CTX34, table)


class TestPhi0:
    def test_structure_sheaf_window(self):
        assert phi0_residue(CTX34, 0) == Phi0Descriptor(0, 0, 2)

    def test_interior_twist(self):
        assert phi0_residue(CTX34, -2) == Phi0Descriptor(2, -2, 0)

    def test_zero_case(self):
        assert phi0_residue(HypersurfaceContext(3, 5), 0) is None

    def test_zero_iff_window_exceeds_a(self):
        rng = random.Random(29)
        for _ in range(300):
            ctx = random_context(rng)
            l = rng.randint(-30, 30)
            normalized = -((-l) % ctx.d)
            assert (phi0_residue(ctx, l) is None) == (normalized > ctx.a)

    def test_period_two_shift(self):
        rng = random.Random(31)
        for _ in range(300):
            ctx = random_context(rng)
            l = rng.randint(-30, 30)
            base = phi0_residue(ctx, l)
            stepped = phi0_residue(ctx, l + ctx.d)
            if base is None:
                assert stepped is None
            else:
                assert stepped == Phi0Descriptor(base.exterior_power, base.twist, base.shift + 2)

    def test_fano_rejected(self):
        with pytest.raises(ValueError, match="Fano"):
            phi0_residue(HypersurfaceContext(2, 2), 0)


class TestShamash:
    def test_first_terms(self):
        assert shamash_degrees(3, 4, 0) == DegreeMultiset((0,))
        assert shamash_degrees(3, 4, -1) == DegreeMultiset((1, 1, 1, 1))
        assert shamash_degrees(3, 4, -2) == DegreeMultiset.from_iterable([2] * 6 + [4])
        assert shamash_degrees(3, 4, -3) == DegreeMultiset.from_iterable([3] * 4 + [5] * 4)

    def test_rank_totals(self):
        import math
        for n in range(1, 7):
            for d in range(1, 9):
                for m in range(0, -7, -1):
                    expected = sum(
                        math.comb(n + 1, -m - 2 * j)
                        for j in range(0, (-m) // 2 + 1)
                        if 0 <= -m - 2 * j <= n + 1
                    )
                    assert len(shamash_degrees(n, d, m)) == expected

    def test_positive_degree_rejected(self):
        with pytest.raises(ValueError):
            shamash_degrees(3, 4, 1)


class TestCheckBgs:
    def test_fermat_at_equality(self):
        verdict = check_bgs(CTX34, mf.fermat(2, 2))
        assert verdict.passed and verdict.applicable
        assert verdict.value == verdict.bound == 2

    def test_trivial_marked_inapplicable(self):
        F = mf.fermat(2, 2)
        verdict = check_bgs(CTX34, mf.trivial_one_f(F.f))
        assert verdict.trivial and not verdict.applicable

    def test_would_be_counterexample(self):
        rng = random.Random(37)
        F = random_reduced_mf(rng, nvars=5, d=5)
        while F.rank0 != 1:
            F = random_reduced_mf(rng, nvars=5, d=5)
        verdict = check_bgs(HypersurfaceContext(4, 5), F)
        assert not verdict.passed
        assert verdict.value == 1 and verdict.bound == 4

    def test_hypotheses_recorded(self):
        verdict = check_bgs(CTX34, mf.fermat(2, 2))
        assert any("irreducible" in note for note in verdict.notes)
        assert any("smooth" in note for note in verdict.notes)


class TestCheckRho:
    def test_pass_at_equality(self):
        verdict = check_rho(CTX34, 4)
        assert verdict.passed and verdict.value == verdict.bound == 4

    def test_point_sheaf_on_cubic(self):
        from mfkit.bott import rho_point
        verdict = check_rho(HypersurfaceContext(2, 3), rho_point(2))
        assert verdict.passed

    def test_fano_rejected(self):
        with pytest.raises(ValueError, match="a = n\\+1-d <= 0"):
            check_rho(HypersurfaceContext(2, 2), 2)
