import random

import pytest

from confstab.budget import BudgetExceededError, SizeBudget
from confstab.snf import invariant_factors_of_columns, smith_normal_form, snf_with_row_transform
from confstab.sparse import SparseMatrix

from oracles import det_fraction, determinantal_divisors


def diag_of(D: SparseMatrix) -> list[int]:
    return [D[(t, t)] for t in range(min(D.nrows, D.ncols))]


def check_snf(M: SparseMatrix):
    D, U, V = smith_normal_form(M)
    assert (U @ M @ V) == D
    # diagonal, nonnegative, divisibility chain
    assert all(i == j for (i, j) in D.entries)
    d = diag_of(D)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    assert abs(det_fraction(U.rows())) == 1
    assert abs(det_fraction(V.rows())) == 1
    return d


def test_zero_matrix():
    M = SparseMatrix.zero(3, 4)
    D, U, V = smith_normal_form(M)
    assert D.is_zero()
    assert U == SparseMatrix.identity(3)
    assert V == SparseMatrix.identity(4)


def test_identity_matrix():
    for k in (1, 2, 5):
        M = SparseMatrix.identity(k)
        D, U, V = smith_normal_form(M)
        assert D == M
        assert U == SparseMatrix.identity(k)
        assert V == SparseMatrix.identity(k)


def test_diag_2_3():
    M = SparseMatrix.from_rows([[2, 0], [0, 3]])
    d = check_snf(M)
    assert d == [1, 6]
    assert determinantal_divisors(M) == [1, 6]


def test_known_rectangular():
    M = SparseMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    d = check_snf(M)
    assert d == determinantal_divisors(M) + [0] * (3 - len(determinantal_divisors(M)))


def test_batch_against_determinantal_divisors():
    rng = random.Random(20240811)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        M = SparseMatrix.from_rows(rows)
        d = check_snf(M)
        oracle = determinantal_divisors(M)
        got = [x for x in d if x != 0]
        assert got == oracle, (rows, got, oracle)


def test_row_transform_variant_matches():
    rng = random.Random(7)
    for _ in range(20):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        M = SparseMatrix.from_rows(rows)
        cols = M.columns()
        factors, row_order, u_rows, uinv_cols = snf_with_row_transform(cols, m)
        plain = invariant_factors_of_columns(cols, m)
        assert factors == plain
        oracle = [x for x in determinantal_divisors(M)]
        assert [x for x in factors if x != 0] == oracle
        # U and U^{-1} really are mutually inverse: (U^{-1} U)[a, b] =
        # sum_r U^{-1}[a, r] U[r, b] with uinv stored as columns
        prod: dict[tuple[int, int], int] = {}
        for r in range(m):
            urow = u_rows.get(r, {})
            ucol = uinv_cols.get(r, {})
            for b, w in urow.items():
                for a, v in ucol.items():
                    prod[(a, b)] = prod.get((a, b), 0) + v * w
        prod = {k: v for k, v in prod.items() if v}
        assert prod == {(i, i): 1 for i in range(m)}


def test_budget_guard():
    tiny = SizeBudget(max_dim=2, max_columns=10, max_entries=10)
    M = SparseMatrix.identity(5)
    with pytest.raises(BudgetExceededError):
        smith_normal_form(M, tiny)


def test_rejects_field_coefficients():
    from confstab.rings import GF
    M = SparseMatrix.identity(2, GF(2))
    with pytest.raises(ValueError):
        smith_normal_form(M)
