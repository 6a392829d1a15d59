"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import random
import time

from mfkit import mf
from mfkit.bott import (
    bott,
    bott_vector,
    restricted_bott,
    rho_line_bundle,
    rho_point,
    rho_structure_sheaf,
)
from mfkit.mf import BettiTable
from mfkit.orlov import (
    CohomologyTable,
    HypersurfaceContext,
    betti_to_table,
    check_bgs,
    check_rho,
    phi0_residue,
    rho_of_mf,
    shamash_degrees,
    table_to_betti,
)

import pytest

from _factories import FP13, random_elementary, random_reduced_mf, random_valid_mf


def _announce(number: int, description: str) -> None:
    print(f"ACCEPTANCE {number:02d}: PASS - {description}")


def chi_sheaf_of_lines(n: int, m: int) -> int:
    num = 1
    for k in range(1, n + 1):
        num *= m + k
    return num // math.factorial(n)


def chi_twisted_differentials(n: int, p: int, l: int) -> int:
    if p < 0 or p > n:
        return 0
    if p == 0:
        return chi_sheaf_of_lines(n, l)
    return math.comb(n + 1, p) * chi_sheaf_of_lines(n, l - p) - chi_twisted_differentials(n, p - 1, l)


def test_criterion_01_bott_symmetry_and_concentration():
    start = time.perf_counter()
    for n in range(1, 7):
        for p in range(n + 1):
            for l in range(-12, 13):
                for q in range(n + 1):
                    assert bott(n, p, q, l) == bott(n, n - p, n - q, -l)
                assert len(bott_vector(n, p, l).entries) <= 1
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    _announce(1, f"Bott Serre symmetry + concentration, n <= 6, |l| <= 12 ({elapsed:.3f}s)")


def test_criterion_02_rho_structure_sheaf():
    start = time.perf_counter()
    for n in range(1, 9):
        for d in range(n + 1, 13):
            value = rho_structure_sheaf(n, d)
            # Closed form recomputed with plain math.comb and explicit guards.
            closed_form = 1
            for r in range(n + 1):
                top1, k1 = d, d - r
                top2, k2 = d - r - 1, n - r
                term1 = math.comb(top1, k1) if 0 <= k1 <= top1 else 0
                term2 = math.comb(top2, k2) if 0 <= k2 <= top2 else 0
                closed_form += term1 * term2
            restricted_sum = sum(restricted_bott(n, d, r, 0).total() for r in range(n + 1))
            assert value == closed_form == restricted_sum
            if d == n + 1:
                assert value == 2 ** (n + 1)
            assert value >= 2 ** (n // 2 + 1)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    _announce(2, f"rho(O_X) closed form = restricted sum, 1 <= n <= 8 ({elapsed:.3f}s)")


def test_criterion_03_fano_counterexamples():
    assert rho_line_bundle(2, 1, -1) == 2
    assert rho_line_bundle(2, 1, 0) == 2
    assert rho_line_bundle(2, 2, 0) == 2
    with pytest.raises(ValueError):
        check_rho(HypersurfaceContext(2, 1), 2)
    with pytest.raises(ValueError):
        check_rho(HypersurfaceContext(2, 2), 2)
    _announce(3, "Fano counterexamples rho = 2 and a > 0 rejection")


def test_criterion_04_point_sheaf():
    for n in range(1, 11):
        assert rho_point(n) == 2 ** n
        assert rho_point(n) >= 2 ** (n // 2 + 1)
    _announce(4, "rho(point) = 2^n >= 2^(e+1), 1 <= n <= 10")


def test_criterion_05_fermat_pipeline():
    start = time.perf_counter()
    ctx = HypersurfaceContext(3, 4)
    F = mf.fermat(2, 2)
    assert mf.validate(F) == []
    assert mf.is_reduced(F)
    assert F.rank0 == 2
    assert mf.betti(F).mapping() == {(1, 0): 2, (0, 2): 2}
    assert rho_of_mf(F) == 4 == 2 ** (ctx.e + 1)
    verdict = check_bgs(ctx, F)
    assert verdict.passed and verdict.value == verdict.bound == 2 == 2 ** ctx.e
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    _announce(5, f"Fermat pipeline at n=3, d=4 ({elapsed:.3f}s)")


def test_criterion_06_tensor_soundness():
    rng = random.Random(2024)
    for _ in range(100):
        d = rng.randint(2, 4)
        left = random_elementary(FP13, 4, d, rng, variables=(0, 1))
        while True:
            right = random_elementary(FP13, 4, d, rng, variables=(2, 3))
            if not (left.f + right.f).is_zero:
                break
        T = mf.tensor(left, right)
        assert mf.validate(T) == []
        assert T.rank0 == 2
    # Rank recurrence 2^(t-1) for t <= 5 iterated elementary factors.
    factors = [
        random_elementary(FP13, 10, 4, rng, variables=(2 * k, 2 * k + 1))
        for k in range(5)
    ]
    T = factors[0]
    for t, factor in enumerate(factors[1:], start=2):
        T = mf.tensor(T, factor)
        assert T.rank0 == 2 ** (t - 1)
    _announce(6, "100 random elementary tensors validate; rank 2^(t-1) for t <= 5")


def test_criterion_07_reduction():
    rng = random.Random(2025)
    for k in range(1, 5):
        F = random_reduced_mf(rng)
        padded = F
        for _ in range(k):
            trivial = mf.trivial_one_f(F.f) if rng.random() < 0.5 else mf.trivial_f_one(F.f)
            padded = mf.direct_sum(padded, mf.twist(trivial, rng.randint(-2, 2)))
        reduced = mf.reduce(padded)
        assert reduced.rank0 == F.rank0
        assert mf.betti(reduced) == mf.betti(F)
    for _ in range(100):
        F = random_valid_mf(rng)
        R = mf.reduce(F)
        assert mf.reduce(R) == R
        assert mf.is_reduced(R)
    _announce(7, "reduction strips k <= 4 trivial summands; idempotent on 100 inputs")


def test_criterion_08_shift_twist_algebra():
    rng = random.Random(2026)
    for _ in range(100):
        F = random_valid_mf(rng)
        assert mf.shift(mf.shift(F)) == mf.twist(F, F.d)
    _announce(8, "shift^2 = twist-by-d bit-exactly on 100 random factorizations")


def test_criterion_09_translation_roundtrip():
    rng = random.Random(2027)
    for _ in range(200):
        n = rng.randint(1, 6)
        ctx = HypersurfaceContext(n, rng.randint(n + 1, n + 5))
        counts = {}
        for _ in range(rng.randint(0, 6)):
            key = (rng.randint(0, 1), rng.randint(-10, 10))
            counts[key] = counts.get(key, 0) + rng.randint(1, 5)
        betti_table = BettiTable.from_mapping(counts)
        assert table_to_betti(ctx, betti_to_table(ctx, betti_table)) == betti_table
        table_counts = {}
        for _ in range(rng.randint(0, 6)):
            key = (rng.randint(0, ctx.n), rng.randint(-2, ctx.n + 2))
            table_counts[key] = table_counts.get(key, 0) + rng.randint(1, 5)
        table = CohomologyTable.from_mapping(ctx.n, table_counts)
        assert betti_to_table(ctx, table_to_betti(ctx, table)) == table
    ctx = HypersurfaceContext(3, 4)
    for _ in range(30):
        F = random_reduced_mf(rng, nvars=4, d=4)
        assert betti_to_table(ctx, mf.betti(F)).total() == 2 * F.rank0
    _announce(9, "200 translation roundtrips; table totals equal 2*rank(F0)")


def test_criterion_10_shamash_degrees():
    for n in range(1, 7):
        for d in range(1, 9):
            for m in (0, -1, -2, -3, -4):
                expected: dict[int, int] = {}
                for j in range(0, (-m) // 2 + 1):
                    s = -m - 2 * j
                    if 0 <= s <= n + 1:
                        mult = math.comb(n + 1, s)
                        if mult:
                            expected[s + j * d] = expected.get(s + j * d, 0) + mult
                got: dict[int, int] = {}
                for deg in shamash_degrees(n, d, m):
                    got[deg] = got.get(deg, 0) + 1
                assert got == expected, (n, d, m)
    spot = shamash_degrees(3, 4, -2)
    assert sorted(spot) == [2] * math.comb(4, 2) + [4]
    _announce(10, "Shamash degrees match the resolution terms for m in {0..-4}")


def test_criterion_11_phi0_descriptor_identities():
    rng = random.Random(2028)
    for _ in range(500):
        n = rng.randint(1, 6)
        ctx = HypersurfaceContext(n, rng.randint(n + 1, n + 5))
        l = rng.randint(-30, 30)
        normalized = -((-l) % ctx.d)
        descriptor = phi0_residue(ctx, l)
        assert (descriptor is None) == (normalized > ctx.a)
        stepped = phi0_residue(ctx, l + ctx.d)
        if descriptor is None:
            assert stepped is None
        else:
            assert stepped is not None
            assert stepped.exterior_power == descriptor.exterior_power
            assert stepped.twist == descriptor.twist
            assert stepped.shift == descriptor.shift + 2
    _announce(11, "phi0 zero window and period-2 shift identity on 500 samples")


def test_criterion_12_euler_consistency():
    for n in range(1, 7):
        for d in range(1, 9):
            for r in range(n + 1):
                for t in range(-8, 9):
                    got = restricted_bott(n, d, r, t).euler()
                    want = chi_twisted_differentials(n, r, r + t) - chi_twisted_differentials(n, r, r + t - d)
                    assert got == want, (n, d, r, t)
    _announce(12, "restricted Bott alternating sums match ambient Euler differences")
