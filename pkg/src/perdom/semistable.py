"""Semistability oracle and stratification checks by brute-force enumeration.

A point is semistable when its weighted flag pairs non-negatively against
every rational test filtration; the test set is the full list of rational
subspaces for the special linear group and the rational twisted flags for the
quasi-split unitary group on 3 variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cohom import GroupData
from .finflag import (
    BudgetError,
    FieldTower,
    FlagPoint,
    HermitianData,
    Subspace,
    contains,
    enumerate_flag_points,
    enumerate_subspaces,
    enumerate_twisted_fixed_flags,
    flag_count,
    frobenius_point,
    full_space,
    gaussian_binomial,
    intersection_dim,
    make_tower,
    mu_flag_type,
    rank,
    subspace_from_rows,
)


@dataclass(frozen=True)
class Filtration:
    """Decreasing weights with their increasing subspaces; last space is full."""

    weights: tuple[Fraction, ...]
    spaces: tuple[Subspace, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.spaces):
            raise ValueError("one subspace per weight")
        for a, b in zip(self.weights, self.weights[1:]):
            if a <= b:
                raise ValueError("weights must strictly decrease")
        dims = [s.dim for s in self.spaces]
        if any(a >= b for a, b in zip(dims, dims[1:])):
            raise ValueError("subspaces must strictly increase")
        if self.spaces[-1].dim != self.spaces[-1].ncols:
            raise ValueError("final step must be the ambient space")

    @property
    def ambient_dim(self) -> int:
        return self.spaces[-1].ncols


def filtration_pairing(tower: FieldTower, f: Filtration, g: Filtration) -> Fraction:
    """Sum of a*b over the graded intersection dimensions of two filtrations.

    The bigraded dimension at (a, b) is computed by inclusion-exclusion on
    the four pairwise intersections around the step.
    """
    if f.ambient_dim != g.ambient_dim:
        raise ValueError("ambient mismatch")
    ka, kb = len(f.spaces), len(g.spaces)
    inter = [[intersection_dim(tower, f.spaces[i], g.spaces[j]) for j in range(kb)] for i in range(ka)]

    def v(i, j):
        if i < 0 or j < 0:
            return 0
        return inter[i][j]

    total = Fraction(0)
    for i in range(ka):
        for j in range(kb):
            d = v(i, j) - v(i - 1, j) - v(i, j - 1) + v(i - 1, j - 1)
            if d:
                total += f.weights[i] * g.weights[j] * d
    return total


def flag_filtration(tower: FieldTower, x: FlagPoint, n: int) -> Filtration:
    return Filtration(weights=x.weights, spaces=x.chain + (full_space(tower, n),))


def subspace_coweight_filtration(tower: FieldTower, sub: Subspace, n: int) -> Filtration:
    """Two-step filtration of a fundamental-coweight conjugate at a subspace."""
    d = sub.dim
    if d <= 0 or d >= n:
        raise ValueError("subspace must be proper and nonzero")
    return Filtration(
        weights=(Fraction(n - d, n), Fraction(-d, n)),
        spaces=(sub, full_space(tower, n)),
    )


def coordinate_filtration(tower: FieldTower, coords) -> Filtration:
    """Filtration of a torus cocharacter: coordinate spans by weight level."""
    coords = [Fraction(c) for c in coords]
    n = len(coords)
    weights = sorted(set(coords), reverse=True)
    spaces = []
    for w in weights:
        rows = [[int(j == i) for j in range(n)] for i, c in enumerate(coords) if c >= w]
        spaces.append(subspace_from_rows(tower, rows, n))
    if spaces[-1].dim != n:
        weights.append(min(coords) - 1)
        spaces.append(full_space(tower, n))
    return Filtration(weights=tuple(weights), spaces=tuple(spaces))


def slope(tower: FieldTower, point_filt: Filtration, test_filt: Filtration) -> Fraction:
    """Hilbert-Mumford weight: minus the filtration pairing."""
    return -filtration_pairing(tower, point_filt, test_filt)


# ---------------------------------------------------------------------------
# verifier context

@dataclass(frozen=True)
class TestDatum:
    """One rational test filtration with its orbit label and witness datum."""

    orbit_index: int
    kind: str  # "subspace" or "flag"
    subspace: Subspace | None
    flag: FlagPoint | None
    filtration: Filtration


@dataclass
class SlopeReport:
    point_index: int
    destabilizers: tuple[tuple[TestDatum, Fraction], ...]

    @property
    def verdict(self) -> bool:
        return not self.destabilizers


@dataclass
class VerifierContext:
    gd: GroupData
    m: int
    tower: FieldTower
    n: int
    mode: str  # "split" or "u3"
    points: list[FlagPoint]
    tests: list[TestDatum]
    hermitian: HermitianData | None
    point_filts: list[Filtration]


def verifier_mode(gd: GroupData) -> str | None:
    """Which brute-force model supports this instance, if any."""
    if len(gd.datum.cartan_type) != 1 or gd.datum.cartan_type[0][0] != "A":
        return None
    if gd.is_split:
        return "split"
    if gd.datum.cartan_type[0][1] == 2 and gd.action.order == 2:
        return "u3"
    return None


def build_verifier(gd: GroupData, m: int, budget: int = 10**7) -> VerifierContext:
    """Enumerate the points over the degree-m extension of the reflex field
    and the full rational test set."""
    mode = verifier_mode(gd)
    if mode is None:
        raise ValueError("brute force supports split SL_n and quasi-split U_3 only")
    if m < 1:
        raise ValueError("m must be at least 1")
    n = gd.datum.ambient_dim
    weights, dims = mu_flag_type(gd.mu.coords)
    q = gd.q

    if mode == "split":
        if flag_count(n, dims, q**m) > budget:
            raise BudgetError(f"{flag_count(n, dims, q ** m)} flags exceed budget {budget}")
        tower = make_tower(q, m)
        points = enumerate_flag_points(tower, n, weights, dims, budget=budget)
        tests = []
        for d in range(1, n):
            for sub in enumerate_subspaces(tower, n, d, subfield_deg=1, budget=budget):
                tests.append(
                    TestDatum(
                        orbit_index=gd.orbits_delta.orbit_of_root(d - 1),
                        kind="subspace",
                        subspace=sub,
                        flag=None,
                        filtration=subspace_coweight_filtration(tower, sub, n),
                    )
                )
        hermitian = None
    else:
        t = gd.muclass.e_degree
        s = t * m  # total Frobenius power defining the point field
        twisted = s % 2 == 1
        ext = 2 * m if (twisted or t == 2) else m
        tower = make_tower(q, ext)
        hermitian = HermitianData(tower=tower, n=n)
        if twisted:
            if dims not in ((), (1, 2)):
                raise AssertionError("a twist-fixed conjugacy class must give full flags")
            if not dims:
                points = [FlagPoint(chain=(), weights=weights)]
            else:
                if gaussian_binomial(n, 1, tower.size) > budget:
                    raise BudgetError("twisted line scan exceeds budget")
                points = enumerate_twisted_fixed_flags(hermitian, weights, conj_power=s, budget=budget)
                expected = q ** (3 * s) + 1
                assert len(points) == expected, (len(points), expected)
                assert all(hermitian.is_fixed(x, s) for x in points)
        else:
            sub_deg = s  # flags rational over F_{q^s} inside the tower
            if flag_count(n, dims, q**s) > budget:
                raise BudgetError("flag enumeration exceeds budget")
            points = enumerate_flag_points(tower, n, weights, dims, subfield_deg=sub_deg, budget=budget)
        tests = []
        for f in _rational_unitary_flags(hermitian, budget):
            tests.append(
                TestDatum(
                    orbit_index=0,
                    kind="flag",
                    subspace=None,
                    flag=f,
                    filtration=flag_filtration(tower, f, n),
                )
            )
        assert len(tests) == q**3 + 1, (len(tests), q**3 + 1)

    point_filts = [flag_filtration(tower, x, n) for x in points]
    return VerifierContext(
        gd=gd, m=m, tower=tower, n=n, mode=mode,
        points=points, tests=tests, hermitian=hermitian, point_filts=point_filts,
    )


def _rational_unitary_flags(herm: HermitianData, budget: int) -> list[FlagPoint]:
    """Flags fixed by the single-step twisted Frobenius: the rational chambers."""
    t = herm.tower
    out = []
    weights = (Fraction(1), Fraction(0), Fraction(-1))
    for line in enumerate_subspaces(t, herm.n, 1, subfield_deg=2, budget=budget):
        v = line.rows[0]
        if herm.form_value(v, v, 1) != 0:
            continue
        plane = herm.perp(line, 1)
        assert contains(t, plane, line)
        flag = FlagPoint(chain=(line, plane), weights=weights)
        assert herm.is_fixed(flag, 1)
        out.append(flag)
    return out


def is_semistable(ctx: VerifierContext, index: int, collect_all: bool = False) -> SlopeReport:
    """Slope verdict for one enumerated point; slope 0 counts as semistable."""
    filt = ctx.point_filts[index]
    destab = []
    for test in ctx.tests:
        value = slope(ctx.tower, filt, test.filtration)
        if value < 0:
            destab.append((test, value))
            if not collect_all:
                break
    return SlopeReport(point_index=index, destabilizers=tuple(destab))


def brute_force_ss_count(ctx: VerifierContext) -> int:
    return sum(1 for i in range(len(ctx.points)) if is_semistable(ctx, i).verdict)


def semistable_indices(ctx: VerifierContext) -> list[int]:
    return [i for i in range(len(ctx.points)) if is_semistable(ctx, i).verdict]


def per_point_rows(ctx: VerifierContext) -> list[dict]:
    """Full slope reports, one row per enumerated point."""
    rows = []
    for i in range(len(ctx.points)):
        report = is_semistable(ctx, i, collect_all=True)
        worst = min((v for _, v in report.destabilizers), default=None)
        rows.append(
            {
                "point": i,
                "semistable": report.verdict,
                "destabilizer_count": len(report.destabilizers),
                "worst_slope": worst,
                "chain": [[list(r) for r in s.rows] for s in ctx.points[i].chain],
            }
        )
    return rows


def points_csv(ctx: VerifierContext) -> str:
    """Per-point verdicts as CSV, slopes in exact rational notation."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["point", "semistable", "destabilizer_count", "worst_slope", "chain"])
    for row in per_point_rows(ctx):
        worst = "" if row["worst_slope"] is None else str(row["worst_slope"])
        writer.writerow(
            [row["point"], int(row["semistable"]), row["destabilizer_count"], worst,
             repr(row["chain"])]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# stratification by untwisted coweights, and its Bruhat cell description

def y_I_points(ctx: VerifierContext, I: frozenset[int]) -> frozenset[int]:
    """Indices of points with negative slope against every standard coweight
    whose orbit lies outside I."""
    if ctx.mode != "split":
        raise ValueError("stratification check requires a split instance")
    gd = ctx.gd
    filts = {
        k: coordinate_filtration(ctx.tower, gd.orbits_delta.twisted_coweights[k].coords)
        for k in range(gd.d_prime)
        if k not in I
    }
    out = []
    for i, pf in enumerate(ctx.point_filts):
        if all(slope(ctx.tower, pf, f) < 0 for f in filts.values()):
            out.append(i)
    return frozenset(out)


def _standard_flag_of(ctx: VerifierContext, coords) -> FlagPoint:
    weights, dims = mu_flag_type(coords)
    vals = [Fraction(c) for c in coords]
    chain = []
    for w in weights[:-1]:
        rows = [[int(j == i) for j in range(ctx.n)] for i, c in enumerate(vals) if c >= w]
        chain.append(subspace_from_rows(ctx.tower, rows, ctx.n))
    return FlagPoint(chain=tuple(chain), weights=weights)


def _relative_position(ctx: VerifierContext, x: FlagPoint):
    """B-orbit invariant: intersection dimensions against the coordinate flag."""
    standards = [
        subspace_from_rows(ctx.tower, [[int(j == i) for j in range(ctx.n)] for i in range(k)], ctx.n)
        for k in range(1, ctx.n)
    ]
    return tuple(
        tuple(intersection_dim(ctx.tower, e, s) for e in standards) for s in x.chain
    )


def bruhat_cells(ctx: VerifierContext) -> dict:
    """Partition of the points into cells indexed by Kostant representatives."""
    if ctx.mode != "split":
        raise ValueError("cell decomposition requires a split instance")
    gd = ctx.gd
    from .weyl import act

    rep_invariants = {}
    for w in gd.kostant:
        wmu = act(w, gd.mu)
        flag = _standard_flag_of(ctx, wmu.coords)
        inv = _relative_position(ctx, flag)
        if inv in rep_invariants.values():
            raise AssertionError("distinct representatives share a cell invariant")
        rep_invariants[w] = inv
    cells: dict = {w: [] for w in gd.kostant}
    by_inv = {inv: w for w, inv in rep_invariants.items()}
    for i, x in enumerate(ctx.points):
        inv = _relative_position(ctx, x)
        if inv not in by_inv:
            raise AssertionError("point outside every Bruhat cell")
        cells[by_inv[inv]].append(i)
    return cells


def bruhat_cells_check(ctx: VerifierContext, I: frozenset[int]):
    """Set equality of the stratum against the union of its Bruhat cells,
    plus the per-cell point count q^(m * length)."""
    gd = ctx.gd
    from .cohom import omega_I

    cells = bruhat_cells(ctx)
    q, m = gd.q, ctx.m
    sizes_ok = all(len(idx) == q ** (m * w.length) for w, idx in cells.items())
    allowed = {o.rep.matrix for o in omega_I(gd, I)}
    union: set[int] = set()
    for w, idx in cells.items():
        if w.matrix in allowed:
            union.update(idx)
    y_set = y_I_points(ctx, I)
    return (union == set(y_set)) and sizes_ok, {
        "y_count": len(y_set),
        "cell_union_count": len(union),
        "sizes_ok": sizes_ok,
        "expected_count": sum(q ** (m * o.rep.length) for o in omega_I(gd, I)),
    }


# ---------------------------------------------------------------------------
# sampled invariants

def frobenius_equivariance_holds(ctx: VerifierContext) -> bool:
    """Semistability is stable under Frobenius on every enumerated point."""
    lookup = {x: i for i, x in enumerate(ctx.points)}
    for i, x in enumerate(ctx.points):
        fx = frobenius_point(x, ctx.tower, ctx.hermitian)
        j = lookup.get(fx)
        if j is None:
            return False
        if is_semistable(ctx, i).verdict != is_semistable(ctx, j).verdict:
            return False
    return True


def _random_invertible_block(tower: FieldTower, size: int, rng: random.Random, subfield):
    while True:
        rows = [[rng.choice(subfield) for _ in range(size)] for _ in range(size)]
        if rank(tower, rows) == size:
            return rows


def random_parabolic_element(tower: FieldTower, n: int, d: int, rng: random.Random):
    """Random rational point of the stabilizer of the standard d-subspace."""
    subfield = sorted(tower.subfield(1))
    a = _random_invertible_block(tower, d, rng, subfield)
    c = _random_invertible_block(tower, n - d, rng, subfield)
    g = [[0] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            g[i][j] = a[i][j]
        for j in range(d, n):
            g[i][j] = rng.choice(subfield)
    for i in range(d, n):
        for j in range(d, n):
            g[i][j] = c[i - d][j - d]
    return g


def apply_matrix_to_subspace(tower: FieldTower, g, sub: Subspace) -> Subspace:
    rows = []
    for v in sub.rows:
        img = [0] * len(v)
        for i in range(len(v)):
            acc = 0
            for j in range(len(v)):
                acc = tower.add(acc, tower.mul(g[i][j], v[j]))
            img[i] = acc
        rows.append(img)
    return subspace_from_rows(tower, rows, sub.ncols)


def apply_matrix_to_point(tower: FieldTower, g, x: FlagPoint) -> FlagPoint:
    return FlagPoint(
        chain=tuple(apply_matrix_to_subspace(tower, g, s) for s in x.chain),
        weights=x.weights,
    )


def parabolic_invariance_sample(ctx: VerifierContext, seed: int, samples: int = 20) -> bool:
    """Spot-check that rational parabolic moves do not change the slope
    against the parabolic's own coweight filtration."""
    if ctx.mode != "split":
        return True
    rng = random.Random(seed)
    n = ctx.n
    for _ in range(samples):
        x = ctx.points[rng.randrange(len(ctx.points))]
        d = rng.randrange(1, n)
        std = subspace_from_rows(
            ctx.tower, [[int(j == i) for j in range(n)] for i in range(d)], n
        )
        test = subspace_coweight_filtration(ctx.tower, std, n)
        g = random_parabolic_element(ctx.tower, n, d, rng)
        gx = apply_matrix_to_point(ctx.tower, g, x)
        before = slope(ctx.tower, flag_filtration(ctx.tower, x, n), test)
        after = slope(ctx.tower, flag_filtration(ctx.tower, gx, n), test)
        if before != after:
            return False
    return True
