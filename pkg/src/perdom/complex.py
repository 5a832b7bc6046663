"""Destabilizing subcomplexes of the rational Tits complex and their homology.

For the special linear group the complex is modeled concretely: vertices are
destabilizing rational subspaces, simplices are chains under inclusion.  For
the quasi-split unitary group on 3 variables the rational building is a set
of points (every proper rational parabolic is minimal), so the subcomplex is
its vertex set.  Homology is reduced and rational, by exact rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .finflag import Subspace, contains
from .semistable import VerifierContext, is_semistable


class SemistablePointError(ValueError):
    """Raised when a destabilizing complex is requested at a semistable point."""


@dataclass
class TitsSubcomplex:
    """Simplices grouped by dimension; a simplex is a tuple of vertex indices."""

    vertex_keys: tuple
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_keys)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))


def build_t_x(ctx: VerifierContext, index: int) -> TitsSubcomplex:
    """The subcomplex spanned by everything that destabilizes one point."""
    report = is_semistable(ctx, index, collect_all=True)
    if report.verdict:
        raise SemistablePointError(f"point {index} is semistable; the complex is empty")

    if ctx.mode == "split":
        subs = sorted(
            {t.subspace for t, _ in report.destabilizers},
            key=lambda s: (s.dim, s.rows),
        )
        keys = tuple(("subspace", s.dim, s.rows) for s in subs)
        simplices = _chain_simplices(ctx, subs)
    else:
        flags = sorted(
            {t.flag for t, _ in report.destabilizers},
            key=lambda f: tuple(s.rows for s in f.chain),
        )
        keys = tuple(("chamber",) + tuple(s.rows for s in f.chain) for f in flags)
        simplices = (tuple((i,) for i in range(len(flags))),)
    return TitsSubcomplex(vertex_keys=keys, simplices=simplices)


def _chain_simplices(ctx: VerifierContext, subs: list[Subspace]):
    """All chains of nested subspaces, listed per simplex dimension."""
    n = len(subs)
    below = [[j for j in range(i) if contains(ctx.tower, subs[i], subs[j])] for i in range(n)]
    levels: list[list[tuple[int, ...]]] = [[(i,) for i in range(n)]]
    while True:
        # a chain extends by any larger subspace containing its top member
        nxt = [
            chain + (j,)
            for chain in levels[-1]
            for j in range(chain[-1] + 1, n)
            if chain[-1] in below[j]
        ]
        if not nxt:
            break
        levels.append(nxt)
    return tuple(tuple(level) for level in levels)


def boundary_matrices(complex_: TitsSubcomplex) -> list[list[list[int]]]:
    """Boundary maps including the augmentation in degree 0."""
    mats = []
    aug = [[1 for _ in complex_.simplices[0]]] if complex_.simplices else [[]]
    mats.append(aug)
    for k in range(1, len(complex_.simplices)):
        lower_index = {s: i for i, s in enumerate(complex_.simplices[k - 1])}
        rows = len(complex_.simplices[k - 1])
        mat = [[0] * len(complex_.simplices[k]) for _ in range(rows)]
        for col, simplex in enumerate(complex_.simplices[k]):
            for drop in range(len(simplex)):
                face = simplex[:drop] + simplex[drop + 1 :]
                mat[lower_index[face]][col] = (-1) ** drop
        mats.append(mat)
    return mats


def _rank_rational(matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def reduced_homology(complex_: TitsSubcomplex) -> tuple[int, ...]:
    """Reduced rational Betti numbers, one per simplex dimension present."""
    if complex_.num_vertices == 0:
        raise ValueError("empty complex")
    mats = boundary_matrices(complex_)
    ranks = [_rank_rational(m) for m in mats]
    # check the complex property while we are at it
    for k in range(len(mats) - 1):
        if not _composes_to_zero(mats[k], mats[k + 1]):
            raise AssertionError("boundary of boundary is nonzero")
    betti = []
    for k, level in enumerate(complex_.simplices):
        dim_ck = len(level)
        rank_in = ranks[k]
        rank_out = ranks[k + 1] if k + 1 < len(mats) else 0
        betti.append(dim_ck - rank_in - rank_out)
    return tuple(betti)


def _composes_to_zero(a, b) -> bool:
    if not a or not a[0] or not b or not b[0]:
        return True
    rows_a, cols_a = len(a), len(a[0])
    cols_b = len(b[0])
    assert len(b) == cols_a
    for i in range(rows_a):
        for j in range(cols_b):
            if sum(a[i][k] * b[k][j] for k in range(cols_a)) != 0:
                return False
    return True


@dataclass
class SweepReport:
    instance: str
    m: int
    total_points: int
    non_semistable: int
    violations: tuple
    per_point: tuple

    @property
    def all_acyclic(self) -> bool:
        return not self.violations


def acyclicity_sweep(ctx: VerifierContext, fail_fast: bool = False, keep_details: bool = False) -> SweepReport:
    """Check that every non-semistable point has an acyclic destabilizing complex."""
    violations = []
    per_point = []
    non_ss = 0
    for i in range(len(ctx.points)):
        if is_semistable(ctx, i).verdict:
            continue
        non_ss += 1
        complex_ = build_t_x(ctx, i)
        betti = reduced_homology(complex_)
        counts = tuple(len(level) for level in complex_.simplices)
        if keep_details:
            per_point.append({"point": i, "simplices": counts, "betti": betti})
        if any(betti):
            violations.append({"point": i, "simplices": counts, "betti": betti})
            if fail_fast:
                break
    name = "x".join(f"{f}{r}" for f, r in ctx.gd.datum.cartan_type)
    return SweepReport(
        instance=name,
        m=ctx.m,
        total_points=len(ctx.points),
        non_semistable=non_ss,
        violations=tuple(violations),
        per_point=tuple(per_point),
    )
