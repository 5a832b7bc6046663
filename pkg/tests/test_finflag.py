"""Field towers, subspace enumeration, flags, Hermitian structure."""

import itertools
import random

import pytest

from perdom.finflag import (
    BudgetError,
    HermitianData,
    contains,
    enumerate_flag_points,
    enumerate_subspaces,
    frobenius_point,
    frobenius_subspace,
    gaussian_binomial,
    intersection_dim,
    is_k_rational,
    make_tower,
    mu_flag_type,
    nullspace,
    rank,
    rref,
    subspace_from_rows,
)


def test_field_axioms_exhaustive_up_to_64():
    # full associativity/distributivity sweep for orders up to 64
    for q, m in ((2, 2), (3, 1), (2, 3), (3, 2), (4, 2), (5, 2), (3, 3), (2, 6)):
        t = make_tower(q, m)
        els = list(t.elements)
        for a, b, c in itertools.product(els, repeat=3):
            assert t.add(a, t.add(b, c)) == t.add(t.add(a, b), c)
            assert t.mul(a, t.mul(b, c)) == t.mul(t.mul(a, b), c)
            assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
        for a in els:
            assert t.add(a, 0) == a and t.mul(a, 1) == a
            assert t.add(a, t.neg(a)) == 0
            if a:
                assert t.mul(a, t.inv(a)) == 1


def test_field_axioms_sampled_f125():
    t = make_tower(5, 3)
    rng = random.Random(3)
    for _ in range(600):
        a, b, c = (rng.randrange(t.size) for _ in range(3))
        assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
        assert t.mul(a, t.mul(b, c)) == t.mul(t.mul(a, b), c)


def test_frobenius_fixed_field_sizes():
    for q, m in ((2, 2), (2, 3), (3, 2), (4, 3), (5, 3)):
        t = make_tower(q, m)
        assert len(t.subfield(1)) == q
        assert len(t.subfield(m)) == t.size


def test_frobenius_is_field_automorphism():
    t = make_tower(4, 2)
    rng = random.Random(5)
    for _ in range(100):
        a, b = rng.randrange(t.size), rng.randrange(t.size)
        assert t.frobenius(t.add(a, b)) == t.add(t.frobenius(a), t.frobenius(b))
        assert t.frobenius(t.mul(a, b)) == t.mul(t.frobenius(a), t.frobenius(b))


def test_subspace_counts():
    assert len(enumerate_subspaces(make_tower(2, 1), 3, 1)) == 7
    assert len(enumerate_subspaces(make_tower(4, 1), 2, 1)) == 5
    assert len(enumerate_subspaces(make_tower(3, 1), 3, 2)) == 13


def test_subspace_budget():
    with pytest.raises(BudgetError):
        enumerate_subspaces(make_tower(5, 3), 3, 1, budget=10)


def test_rational_subspaces_count_matches_base_field():
    t = make_tower(2, 2)
    rational = enumerate_subspaces(t, 3, 1, subfield_deg=1)
    assert len(rational) == gaussian_binomial(3, 1, 2) == 7
    assert all(is_k_rational(s, t) for s in rational)


def test_rationality_examples():
    t = make_tower(2, 2)
    e1 = subspace_from_rows(t, [[1, 0, 0]], 3)
    assert is_k_rational(e1, t)
    gen = next(x for x in t.elements if x not in t.subfield(1))
    crooked = subspace_from_rows(t, [[1, gen]], 2)
    assert not is_k_rational(crooked, t)
    # rationality is the same as Frobenius stability
    assert frobenius_subspace(t, e1) == e1
    assert frobenius_subspace(t, crooked) != crooked


def test_canonicalization_idempotent():
    t = make_tower(3, 1)
    rows = [[1, 2, 0], [2, 1, 1]]
    once, _ = rref(t, rows)
    twice, _ = rref(t, once)
    assert once == twice


def test_rank_and_intersection():
    t = make_tower(2, 1)
    a = subspace_from_rows(t, [[1, 0, 0], [0, 1, 0]], 3)
    b = subspace_from_rows(t, [[0, 1, 0], [0, 0, 1]], 3)
    assert intersection_dim(t, a, b) == 1
    assert rank(t, list(a.rows) + list(b.rows)) == 3
    assert contains(t, a, subspace_from_rows(t, [[1, 1, 0]], 3))


def test_nullspace_dimension():
    t = make_tower(2, 2)
    rows = [[1, 0, 1]]
    ker = nullspace(t, rows, 3)
    assert len(ker) == 2
    for v in ker:
        assert t.add(v[0], v[2]) == 0


def test_mu_flag_type():
    weights, dims = mu_flag_type([1, 0, -1])
    assert weights == (1, 0, -1) and dims == (1, 2)
    weights, dims = mu_flag_type([2, -1, -1])
    assert dims == (1,)
    weights, dims = mu_flag_type([0, 0, 0])
    assert dims == ()


def test_flag_counts():
    t2 = make_tower(2, 1)
    weights, dims = mu_flag_type([1, 0, -1])
    assert len(enumerate_flag_points(t2, 3, weights, dims)) == 21
    weights, dims = mu_flag_type([2, -1, -1])
    assert len(enumerate_flag_points(t2, 3, weights, dims)) == 7
    t4 = make_tower(4, 1)
    weights, dims = mu_flag_type([1, -1])
    assert len(enumerate_flag_points(t4, 2, weights, dims)) == 5


def test_frobenius_point_cycles_divide_m():
    t = make_tower(2, 3)
    weights, dims = mu_flag_type([1, -1])
    points = enumerate_flag_points(t, 2, weights, dims)
    index = {x: i for i, x in enumerate(points)}
    for x in points:
        cur = x
        length = 0
        while True:
            cur = frobenius_point(cur, t)
            length += 1
            assert cur in index
            if cur == x:
                break
        assert 3 % length == 0
    # m-fold application is the identity
    for x in points:
        cur = x
        for _ in range(3):
            cur = frobenius_point(cur, t)
        assert cur == x


def test_hermitian_form_and_perp():
    t = make_tower(2, 2)
    h = HermitianData(tower=t, n=3)
    e1 = subspace_from_rows(t, [[1, 0, 0]], 3)
    assert h.form_value([1, 0, 0], [1, 0, 0]) == 0  # isotropic
    perp = h.perp(e1)
    assert perp.dim == 2 and contains(t, perp, e1)


def test_twisted_frobenius_squares_to_plain():
    t = make_tower(2, 2)
    h = HermitianData(tower=t, n=3)
    weights, dims = mu_flag_type([1, 0, -1])
    for x in enumerate_flag_points(t, 3, weights, dims)[:40]:
        twice = h.twisted_frobenius(h.twisted_frobenius(x))
        plain2 = frobenius_point(frobenius_point(x, t), t)
        assert twice == plain2


def test_hermitian_nondegenerate():
    t = make_tower(3, 2)
    h = HermitianData(tower=t, n=3)
    full = subspace_from_rows(t, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert h.perp(full).dim == 0
