"""Exact linear algebra tests.

rank is cross-checked against a brute-force determinant-minor oracle for
matrices with at most 8 columns, per the module contract.
"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzv.linalg import (
    EchelonForm,
    SparseMatrix,
    rank,
    read_echelon,
    read_matrix,
    rref,
    solve_for,
    write_echelon,
    write_matrix,
)


# ---------------------------------------------------------------------------
# oracle

def det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    for j in range(n):
        if rows[0][j]:
            piv = rows[0][j]
            sub = []
            for r in rows[1:]:
                sub.append([r[k] - r[j] * rows[0][k] / piv
                            for k in range(n) if k != j])
            sign = -1 if j % 2 else 1
            return sign * piv * det(sub)
    return Fraction(0)


def rank_oracle(m: SparseMatrix) -> int:
    dense = [[Fraction(r.get(c, 0)) for c in range(m.n_cols)]
             for r in m.rows]
    best = 0
    for k in range(min(len(dense), m.n_cols), 0, -1):
        for ri in combinations(range(len(dense)), k):
            for ci in combinations(range(m.n_cols), k):
                sub = [[dense[i][j] for j in ci] for i in ri]
                if det(sub):
                    return k
    return best


def from_dense(rows, n_cols) -> SparseMatrix:
    m = SparseMatrix(n_cols)
    for r in rows:
        m.add_row({c: v for c, v in enumerate(r) if v})
    return m


matrices_st = st.integers(1, 4).flatmap(
    lambda nc: st.lists(
        st.lists(st.fractions(min_value=-3, max_value=3,
                              max_denominator=4),
                 min_size=nc, max_size=nc),
        min_size=0, max_size=5).map(lambda rows: from_dense(rows, nc)))


# ---------------------------------------------------------------------------
# rref basics

def test_identity_any_order():
    m = from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    for order in ([0, 1, 2], [2, 1, 0], [1, 2, 0]):
        e = rref(m, order)
        assert e.rank == 3
        assert set(e.pivots) == {0, 1, 2}


def test_zero_matrix():
    m = from_dense([[0, 0], [0, 0]], 2)
    e = rref(m, [0, 1])
    assert e.rank == 0 and rank(m) == 0


def test_dependent_rows():
    m = from_dense([[1, 2], [2, 4]], 2)
    e = rref(m, [0, 1])
    assert e.rank == 1
    assert e.rows[e.pivots[0]] == {0: 1, 1: 2}


def test_pivot_normalized_and_cleared():
    m = from_dense([[2, 1, 1], [4, 1, 0]], 3)
    e = rref(m, [0, 1, 2])
    for c, i in e.pivots.items():
        assert e.rows[i][c] == 1
        for i2 in range(len(e.rows)):
            if i2 != i:
                assert c not in e.rows[i2]


def test_col_order_changes_pivots_not_rank():
    m = from_dense([[1, 1, 0], [0, 1, 1]], 3)
    e1 = rref(m, [0, 1, 2])
    e2 = rref(m, [2, 1, 0])
    assert e1.rank == e2.rank == 2
    assert set(e1.pivots) == {0, 1}
    assert set(e2.pivots) == {2, 1}


def test_solve_for():
    # x + 2y = 0
    m = from_dense([[1, 2]], 2)
    e = rref(m, [0, 1])
    assert solve_for(e, 0) == {1: Fraction(-2)}
    assert solve_for(e, 1) is None


def test_rejects_bad_col_order():
    m = from_dense([[1]], 1)
    with pytest.raises(ValueError):
        rref(m, [0, 0])


# ---------------------------------------------------------------------------
# properties

@given(matrices_st)
@settings(max_examples=50, deadline=None)
def test_rank_matches_minor_oracle(m):
    assert rank(m) == rank_oracle(m)


@given(matrices_st, st.randoms())
@settings(max_examples=40, deadline=None)
def test_rank_invariances(m, rng):
    r = rank(m)
    rows = list(m.rows)
    rng.shuffle(rows)
    scaled = []
    for row in rows:
        k = Fraction(rng.choice([1, 2, 3, -1, -5]), rng.choice([1, 2, 7]))
        scaled.append({c: k * v for c, v in row.items()})
    m2 = SparseMatrix(m.n_cols, rows=scaled)
    assert rank(m2) == r
    order = list(range(m.n_cols))
    rng.shuffle(order)
    assert rref(m, order).rank == r


@given(matrices_st)
@settings(max_examples=40, deadline=None)
def test_rref_idempotent(m):
    order = list(range(m.n_cols))
    e = rref(m, order)
    m2 = SparseMatrix(m.n_cols, rows=e.rows)
    e2 = rref(m2, order)
    assert e2.pivots.keys() == e.pivots.keys()
    assert sorted(map(sorted, (r.items() for r in e2.rows))) == \
        sorted(map(sorted, (r.items() for r in e.rows)))


@given(matrices_st)
@settings(max_examples=40, deadline=None)
def test_row_space_preserved(m):
    # every original row reduces to zero against the echelon rows
    order = list(range(m.n_cols))
    e = rref(m, order)
    pos = {c: i for i, c in enumerate(order)}
    for row in m.rows:
        work = {c: Fraction(v) for c, v in row.items()}
        for c in order:
            if c in work and c in e.pivots:
                k = work[c]
                for c2, v in e.rows[e.pivots[c]].items():
                    s = work.get(c2, 0) - k * v
                    if s:
                        work[c2] = s
                    else:
                        work.pop(c2, None)
        assert not work


# ---------------------------------------------------------------------------
# files

def test_matrix_file_roundtrip(tmp_path):
    m = SparseMatrix(3, ["001", "011", "111"])
    m.add_row({0: Fraction(1, 2), 2: -3})
    m.add_row({})
    m.add_row({1: 7})
    p = tmp_path / "m.txt"
    write_matrix(m, p, degree=3)
    m2, deg = read_matrix(p)
    assert deg == 3
    assert m2.column_labels == m.column_labels
    assert [{c: Fraction(v) for c, v in r.items()} for r in m2.rows] == \
        [{0: Fraction(1, 2), 2: Fraction(-3)}, {}, {1: Fraction(7)}]


def test_echelon_file_roundtrip(tmp_path):
    m = from_dense([[1, 2, 0], [0, 0, 3]], 3)
    e = rref(m, [0, 1, 2])
    p = tmp_path / "e.txt"
    write_echelon(e, p)
    e2 = read_echelon(p)
    assert e2.pivots == e.pivots
    assert e2.rows == e.rows
    assert e2.rank == e.rank
