"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from mfkit import mf
from mfkit.algebra import GF, Field, GaussianRational, Polynomial
from mfkit.graded import DegreeMultiset, HomogeneousMatrix

FP13 = GF(13)


def random_scalar(field: Field, rng: random.Random, nonzero: bool = False):
    while True:
        if field.kind == "Q":
            s = field.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        elif field.kind == "Qi":
            s = GaussianRational(
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            )
        else:
            s = field.coerce(rng.randrange(field.p))
        if s or not nonzero:
            return s


def random_polynomial(field: Field, nvars: int, rng: random.Random,
                      max_degree: int = 4, max_terms: int = 4) -> Polynomial:
    pairs = []
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        pairs.append((tuple(exps), random_scalar(field, rng)))
    return Polynomial.from_pairs(field, nvars, pairs)


def random_homogeneous(field: Field, nvars: int, degree: int, rng: random.Random,
                       max_terms: int = 3, variables=None) -> Polynomial:
    """Nonzero homogeneous polynomial of the exact degree, optionally
    supported on a subset of the variables."""
    allowed = list(variables) if variables is not None else list(range(nvars))
    while True:
        pairs = []
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * nvars
            for _ in range(degree):
                exps[rng.choice(allowed)] += 1
            pairs.append((tuple(exps), random_scalar(field, rng, nonzero=True)))
        p = Polynomial.from_pairs(field, nvars, pairs)
        if not p.is_zero:
            return p


def random_homogeneous_matrix(field: Field, nvars: int, source: DegreeMultiset,
                              target: DegreeMultiset, rng: random.Random,
                              density: float = 0.7) -> HomogeneousMatrix:
    zero = Polynomial.zero(field, nvars)
    rows = []
    for r in range(len(target)):
        row = []
        for c in range(len(source)):
            expected = source[c] - target[r]
            if expected < 0 or rng.random() > density:
                row.append(zero)
            else:
                row.append(random_homogeneous(field, nvars, expected, rng))
        rows.append(tuple(row))
    return HomogeneousMatrix(field, nvars, source, target, tuple(rows))


def random_elementary(field: Field, nvars: int, d: int, rng: random.Random,
                      variables=None) -> mf.MatrixFactorization:
    """Rank-one factorization (u, v) of u*v with deg u + deg v = d and
    both factors nonconstant (so the result is reduced)."""
    if d < 2:
        raise ValueError("need d >= 2 for a reduced rank-one factorization")
    m = rng.randint(1, d - 1)
    u = random_homogeneous(field, nvars, m, rng, variables=variables)
    v = random_homogeneous(field, nvars, d - m, rng, variables=variables)
    return mf.rank_one(v * u, u, v)


def random_reduced_mf(rng: random.Random, field: Field = FP13, nvars: int = 4,
                      d: int | None = None) -> mf.MatrixFactorization:
    """Reduced factorization: an elementary factor, possibly tensored
    with a second one, then twisted and/or shifted."""
    if d is None:
        d = rng.choice([2, 3, 4])
    F = random_elementary(field, nvars, d, rng)
    if rng.random() < 0.6:
        while True:
            G = random_elementary(field, nvars, d, rng)
            if not (F.f + G.f).is_zero:
                break
        F = mf.tensor(F, G)
    F = mf.twist(F, rng.randint(-3, 3))
    if rng.random() < 0.5:
        F = mf.shift(F)
    return F


def random_valid_mf(rng: random.Random, field: Field = FP13) -> mf.MatrixFactorization:
    """Valid factorization that may carry trivial summands."""
    F = random_reduced_mf(rng, field=field)
    for _ in range(rng.randint(0, 2)):
        trivial = mf.trivial_one_f(F.f) if rng.random() < 0.5 else mf.trivial_f_one(F.f)
        F = mf.direct_sum(F, mf.twist(trivial, rng.randint(-2, 2)))
    return F
