"""Exact linear algebra: canonical forms, set operations, certificates."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interdec.errors import DimensionMismatch, InputError, NotContained
from interdec.linalg import (
    GF,
    QQ,
    Matrix,
    complement_within,
    contains,
    full_space,
    intersect,
    is_direct_sum,
    quotient_dim,
    rank,
    rref,
    solve_exact,
    subspace_from_generators,
    sum_subspaces,
    zero_subspace,
)


def Q(x):
    return Fraction(x)


def sp(ambient, rows, field=QQ):
    return subspace_from_generators(ambient, rows, field)


# the three lines in the plane used throughout
def L1():
    return sp(2, [[1, 0]])


def L2():
    return sp(2, [[0, 1]])


def L3():
    return sp(2, [[1, 1]])


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def test_rational_parse_and_format():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert QQ.parse(-2) == Fraction(-2)
    assert QQ.format(Fraction(3, 4)) == "3/4"
    assert QQ.format(Fraction(5, 1)) == 5
    with pytest.raises(InputError):
        QQ.parse("1/0")
    with pytest.raises(InputError):
        QQ.parse("a")
    with pytest.raises(InputError):
        QQ.parse(0.5)


def test_prime_field_requires_prime():
    with pytest.raises(InputError):
        GF(4)
    with pytest.raises(InputError):
        GF(1)
    GF(2)
    GF(97)


def test_prime_field_arithmetic():
    f = GF(5)
    assert f.parse(7) == 2
    assert f.add(3, 4) == 2
    assert f.mul(3, 4) == 2
    assert f.inv(2) == 3
    assert f.neg(2) == 3
    with pytest.raises(InputError):
        f.parse("2")


# ---------------------------------------------------------------------------
# rref / rank
# ---------------------------------------------------------------------------

def test_rref_scaling():
    m = Matrix.from_rows([[Q(2), Q(0)], [Q(0), Q(3)]])
    assert rref(m).row_lists() == [[1, 0], [0, 1]]


def test_rref_zero_matrix_keeps_shape():
    m = Matrix.from_rows([[Q(0), Q(0)], [Q(0), Q(0)]])
    r = rref(m)
    assert (r.rows, r.cols) == (2, 2)
    assert r.row_lists() == [[0, 0], [0, 0]]


def test_rref_duplicate_row():
    m = Matrix.from_rows([[Q(1), Q(1)], [Q(1), Q(1)]])
    assert rref(m).row_lists() == [[1, 1], [0, 0]]


def test_rank_examples():
    assert rank(Matrix.from_rows([[Q(0)] * 3] * 2)) == 0
    ident = Matrix.from_rows([[Q(int(i == j)) for j in range(4)] for i in range(4)])
    assert rank(ident) == 4
    assert rank(Matrix.from_rows([[Q(1), Q(2)], [Q(2), Q(4)]])) == 1


def test_matrix_shape_checked():
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, (Q(1), Q(2), Q(3)))
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[Q(1), Q(2)], [Q(3)]])


# ---------------------------------------------------------------------------
# subspace construction
# ---------------------------------------------------------------------------

def test_subspace_from_generators_examples():
    s = sp(2, [[1, 0], [2, 0]])
    assert s.dim == 1
    assert s == L1()

    assert sp(2, []).dim == 0
    assert sp(2, []) == zero_subspace(2)

    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert sp(4, ident) == full_space(4)


def test_subspace_generator_dimension_check():
    with pytest.raises(DimensionMismatch):
        sp(3, [[1, 0]])


def test_subspace_accepts_string_entries():
    s = sp(2, [["1/2", 0]])
    assert s == L1()


def test_canonical_basis_form():
    s = sp(3, [[2, 4, 0], [1, 2, 1]])
    # pivots 1, zeros above and below, increasing pivot columns
    assert s.basis == ((Q(1), Q(2), Q(0)), (Q(0), Q(0), Q(1)))


# ---------------------------------------------------------------------------
# sum / intersect / contains
# ---------------------------------------------------------------------------

def test_sum_examples():
    assert sum_subspaces(L1(), L2()) == full_space(2)
    u = sp(2, [[1, 2]])
    assert sum_subspaces(u, zero_subspace(2)) == u
    assert sum_subspaces(L1(), L3()) == full_space(2)


def test_intersect_examples():
    assert intersect(full_space(2), L3()) == L3()
    assert intersect(L1(), L2()) == zero_subspace(2)
    u = sp(3, [[1, 0, 0], [0, 1, 0]])
    w = sp(3, [[0, 1, 0], [0, 0, 1]])
    assert intersect(u, w) == sp(3, [[0, 1, 0]])


def test_contains_examples():
    assert contains(full_space(2), L1())
    assert not contains(L1(), L3())
    assert contains(L1(), zero_subspace(2))


def test_ambient_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        sum_subspaces(L1(), sp(3, [[1, 0, 0]]))
    with pytest.raises(DimensionMismatch):
        intersect(L1(), sp(3, [[1, 0, 0]]))
    with pytest.raises(DimensionMismatch):
        sum_subspaces(L1(), sp(2, [[1, 0]], GF(2)))


def test_membership_of_single_vectors():
    assert L3().contains_vector([2, 2])
    assert not L3().contains_vector([1, 0])
    assert L3().contains_vector([0, 0])


# ---------------------------------------------------------------------------
# complements and direct sums
# ---------------------------------------------------------------------------

def test_complement_examples():
    u = sp(3, [[1, 0, 0], [0, 1, 1]])
    assert complement_within(zero_subspace(3), u) == u
    assert complement_within(u, u) == zero_subspace(3)
    # greedy rule on the full plane against the first axis keeps (0,1)
    assert complement_within(L1(), full_space(2)) == L2()


def test_complement_requires_containment():
    with pytest.raises(NotContained):
        complement_within(L3(), L1())


def test_is_direct_sum_examples():
    assert is_direct_sum([L1(), L2()])
    assert not is_direct_sum([L1(), L2(), L3()])
    u = sp(2, [[1, 2]])
    assert is_direct_sum([u, zero_subspace(2), zero_subspace(2)])
    assert is_direct_sum([])


def test_quotient_dim_examples():
    assert quotient_dim(full_space(2), L1()) == 1
    u = sp(2, [[1, 2]])
    assert quotient_dim(u, u) == 0
    with pytest.raises(NotContained):
        quotient_dim(L1(), L3())


def test_solve_exact():
    cols = [(Q(1), Q(0)), (Q(1), Q(1))]
    assert solve_exact(cols, (Q(3), Q(2)), QQ) == [Q(1), Q(2)]
    assert solve_exact([(Q(1), Q(0))], (Q(0), Q(1)), QQ) is None


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

entries = st.integers(min_value=-3, max_value=3)


def rows_strategy(ambient, max_rows=4):
    return st.lists(
        st.lists(entries, min_size=ambient, max_size=ambient),
        min_size=0,
        max_size=max_rows,
    )


@st.composite
def subspace_pairs(draw):
    ambient = draw(st.integers(min_value=1, max_value=5))
    field = draw(st.sampled_from([QQ, GF(2), GF(5)]))
    u = sp(ambient, draw(rows_strategy(ambient)), field)
    w = sp(ambient, draw(rows_strategy(ambient)), field)
    return u, w


@given(subspace_pairs())
def test_modular_law(pair):
    u, w = pair
    meet = intersect(u, w)
    join = sum_subspaces(u, w)
    assert meet.dim + join.dim == u.dim + w.dim
    assert contains(u, meet) and contains(w, meet)
    assert contains(join, u) and contains(join, w)


@given(subspace_pairs())
def test_sum_is_commutative_and_canonical(pair):
    u, w = pair
    assert sum_subspaces(u, w) == sum_subspaces(w, u)
    assert intersect(u, w) == intersect(w, u)


@st.composite
def generators_two_ways(draw):
    """One subspace described by two different generating sets."""
    ambient = draw(st.integers(min_value=1, max_value=5))
    field = draw(st.sampled_from([QQ, GF(2), GF(5)]))
    base = draw(rows_strategy(ambient))
    parsed = [[field.parse(e) for e in r] for r in base]
    # second description: sums of pairs plus scalings, same span
    other = list(parsed)
    for i in range(len(parsed)):
        j = (i + 1) % len(parsed)
        other.append(
            [field.add(a, b) for a, b in zip(parsed[i], parsed[j])]
        )
        other.append([field.add(a, a) for a in parsed[i]])
    return ambient, field, base, other


@given(generators_two_ways())
def test_canonicity_across_generating_sets(case):
    ambient, field, base, other = case
    assert sp(ambient, base, field) == sp(ambient, other, field)


@given(subspace_pairs())
def test_complement_certificate(pair):
    u, w = pair
    big = sum_subspaces(u, w)
    s = complement_within(w, big)
    assert is_direct_sum([s, w])
    assert sum_subspaces(s, w) == big
    assert s.dim == quotient_dim(big, w)


def pinned_element_direct(parts, ambient, field):
    """Pinned-element criterion: each part meets the sum of the others in 0."""
    from interdec.linalg import span_of_subspaces

    for i, x in enumerate(parts):
        rest = span_of_subspaces(
            ambient, [y for j, y in enumerate(parts) if j != i], field
        )
        if intersect(x, rest).dim != 0:
            return False
    return True


@st.composite
def subspace_lists(draw):
    ambient = draw(st.integers(min_value=1, max_value=6))
    field = draw(st.sampled_from([QQ, GF(2)]))
    count = draw(st.integers(min_value=1, max_value=5))
    parts = [
        sp(ambient, draw(rows_strategy(ambient, max_rows=2)), field)
        for _ in range(count)
    ]
    return ambient, field, parts


@settings(max_examples=60)
@given(subspace_lists())
def test_direct_sum_agrees_with_pinned_criterion(case):
    ambient, field, parts = case
    assert is_direct_sum(parts) == pinned_element_direct(parts, ambient, field)


@given(subspace_pairs())
def test_operations_are_deterministic(pair):
    u, w = pair
    assert intersect(u, w) == intersect(u, w)
    assert sum_subspaces(u, w) == sum_subspaces(u, w)
    assert complement_within(
        intersect(u, w), sum_subspaces(u, w)
    ) == complement_within(intersect(u, w), sum_subspaces(u, w))
