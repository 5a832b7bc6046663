"""Destabilizing subcomplexes and their reduced rational homology."""

import pytest

from helpers import verifier
from perdom.complex import (
    SemistablePointError,
    TitsSubcomplex,
    acyclicity_sweep,
    boundary_matrices,
    build_t_x,
    reduced_homology,
)
from perdom.semistable import is_semistable, semistable_indices


def test_single_vertex_is_acyclic():
    c = TitsSubcomplex(vertex_keys=("v",), simplices=(((0,),),))
    assert reduced_homology(c) == (0,)


def test_two_disjoint_vertices():
    c = TitsSubcomplex(vertex_keys=("a", "b"), simplices=(((0,), (1,)),))
    assert reduced_homology(c) == (1,)


def test_hollow_triangle_has_a_circle():
    c = TitsSubcomplex(
        vertex_keys=(0, 1, 2),
        simplices=(((0,), (1,), (2,)), ((0, 1), (0, 2), (1, 2))),
    )
    assert reduced_homology(c) == (0, 1)


def test_filled_triangle_is_acyclic():
    c = TitsSubcomplex(
        vertex_keys=(0, 1, 2),
        simplices=(((0,), (1,), (2,)), ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),)),
    )
    assert reduced_homology(c) == (0, 0, 0)


def test_boundary_of_boundary_vanishes():
    c = TitsSubcomplex(
        vertex_keys=(0, 1, 2),
        simplices=(((0,), (1,), (2,)), ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),)),
    )
    mats = boundary_matrices(c)
    d1, d2 = mats[1], mats[2]
    rows = len(d1)
    cols = len(d2[0])
    inner = len(d2)
    for i in range(rows):
        for j in range(cols):
            assert sum(d1[i][k] * d2[k][j] for k in range(inner)) == 0


def test_build_rejects_semistable_points():
    ctx = verifier("a1_reg", 2)
    ss = semistable_indices(ctx)
    with pytest.raises(SemistablePointError):
        build_t_x(ctx, ss[0])


def test_t_x_rational_point_of_p1_is_single_vertex():
    ctx = verifier("a1_reg", 1)
    c = build_t_x(ctx, 0)
    assert c.num_vertices == 1 and len(c.simplices) == 1


def test_t_x_rational_point_of_p2_is_a_cone():
    ctx = verifier("a2_min", 1)
    c = build_t_x(ctx, 0)
    # the point's own line plus every rational plane through it
    assert c.num_vertices == 1 + 3
    assert len(c.simplices[1]) == 3  # line-plane incidences
    assert reduced_homology(c) == (0, 0)


def test_t_x_standard_flag_contains_both_subspaces():
    ctx = verifier("a2_reg", 1)
    std = next(
        i
        for i, x in enumerate(ctx.points)
        if x.chain[0].rows == ((1, 0, 0),) and x.chain[1].rows == ((1, 0, 0), (0, 1, 0))
    )
    c = build_t_x(ctx, std)
    dims = sorted(key[1] for key in c.vertex_keys)
    assert 1 in dims and 2 in dims
    assert all(b == 0 for b in reduced_homology(c))


def test_u3_complexes_are_single_chambers():
    ctx = verifier("u3_reg", 2)
    for i in range(len(ctx.points)):
        if is_semistable(ctx, i).verdict:
            continue
        c = build_t_x(ctx, i)
        assert c.num_vertices == 1
        assert reduced_homology(c) == (0,)


def test_euler_characteristic_consistency():
    ctx = verifier("a2_reg", 2)
    for i in range(0, len(ctx.points), 7):
        if is_semistable(ctx, i).verdict:
            continue
        c = build_t_x(ctx, i)
        betti = reduced_homology(c)
        assert c.euler_characteristic() == 1 + sum(
            (-1) ** k * b for k, b in enumerate(betti)
        )


def test_sweep_reports():
    rep = acyclicity_sweep(verifier("a1_reg", 2), keep_details=True)
    assert rep.all_acyclic
    assert rep.non_semistable == 3
    assert len(rep.per_point) == 3
    rep = acyclicity_sweep(verifier("a2_min", 2))
    assert rep.all_acyclic and rep.non_semistable == 21
