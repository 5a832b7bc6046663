"""Exact lattice-theoretic foundation: root data, pairings, fundamental weights.

Coordinate models are fixed once per family so every downstream value is
reproducible bit for bit:

* A_{n-1}: sum-zero vectors in Q^n, alpha_i = e_i - e_{i+1};
* B_n, C_n, D_n: standard orthogonal coordinates on Q^n;
* G_2: the standard 3-dimensional model, alpha_1 = e_1 - e_2 short.

Direct products concatenate coordinate blocks.  All arithmetic is exact
rational; the sign tests downstream tolerate no rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]

CHARACTER = "character"
COCHARACTER = "cocharacter"

WEYL_ORDER_BUDGET = 10**6


class UnsupportedTypeError(ValueError):
    """A Cartan family or rank outside the supported catalog."""


# ---------------------------------------------------------------------------
# small exact linear algebra kernel (Fraction entries throughout)

def frac_vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def vec_dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_vec(m: Matrix, v: Vec) -> Vec:
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(vec_dot(row, frac_vec(col)) for col in bt) for row in a)


def mat_transpose(m: Matrix) -> Matrix:
    return tuple(tuple(row) for row in zip(*m))


def mat_inv(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_in_span(vectors: Sequence[Vec], target: Vec) -> Vec | None:
    """Coefficients writing ``target`` in the span of ``vectors``, or None.

    The vectors are assumed linearly independent (they are simple roots).
    """
    rows = [list(v) + [t] for v, t in zip(zip(*vectors), target)]
    k = len(vectors)
    pivots: list[int] = []
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            raise ValueError("dependent vectors")
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    coeffs = [Fraction(0)] * k
    for col, pr in enumerate(pivots):
        coeffs[col] = rows[pr][-1]
    # consistency on the non-pivot rows
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class LatticeVec:
    """A rational vector tagged with the space it lives in."""

    side: str
    coords: Vec

    def __post_init__(self):
        if self.side not in (CHARACTER, COCHARACTER):
            raise ValueError(f"unknown side {self.side!r}")

    @property
    def dim(self) -> int:
        return len(self.coords)


def character(values: Iterable) -> LatticeVec:
    return LatticeVec(CHARACTER, frac_vec(values))


def cocharacter(values: Iterable) -> LatticeVec:
    return LatticeVec(COCHARACTER, frac_vec(values))


@dataclass(frozen=True)
class InnerProduct:
    """Invariant positive definite form on the cocharacter space.

    ``gram_inv`` doubles as the Gram matrix of the induced form on the
    character space, so that (chi, chi') = <chi*, chi'>.
    """

    gram: Matrix
    gram_inv: Matrix

    def value(self, u: LatticeVec, v: LatticeVec) -> Fraction:
        if u.side != v.side:
            raise ValueError("mixed sides in inner product")
        g = self.gram if u.side == COCHARACTER else self.gram_inv
        return vec_dot(u.coords, mat_vec(g, v.coords))


@dataclass(frozen=True)
class RootDatum:
    """Simple roots and coroots of a product of classical factors.

    ``cartan_matrix[i][j]`` is the pairing of the i-th simple coroot with the
    j-th simple root, the convention under which B_2 with alpha_1 long reads
    [[2, -1], [-2, 2]].
    """

    cartan_type: tuple[tuple[str, int], ...]
    ambient_dim: int
    simple_roots: tuple[LatticeVec, ...]
    simple_coroots: tuple[LatticeVec, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    factor_slices: tuple[tuple[int, int], ...]
    factor_root_ranges: tuple[tuple[int, int], ...]
    gram_scales: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)


_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2}


def classical_weyl_order(family: str, rank: int) -> int:
    import math

    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "G":
        return 12
    raise UnsupportedTypeError(f"family {family!r}")


def weyl_order(cartan_type: Sequence[tuple[str, int]]) -> int:
    order = 1
    for family, rank in cartan_type:
        order *= classical_weyl_order(family, rank)
    return order


def num_positive_roots(cartan_type: Sequence[tuple[str, int]]) -> int:
    total = 0
    for family, rank in cartan_type:
        if family == "A":
            total += rank * (rank + 1) // 2
        elif family in ("B", "C"):
            total += rank * rank
        elif family == "D":
            total += rank * (rank - 1)
        elif family == "G":
            total += 6
    return total


def _factor_data(family: str, rank: int):
    """Simple roots, coroots and gram scale of one factor in its own block."""
    e = lambda i, n: tuple(Fraction(int(j == i)) for j in range(n))
    if family == "A":
        n = rank + 1
        roots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank)]
        coroots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank)]
        scale = Fraction(1)
    elif family == "B":
        n = rank
        roots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
        roots.append(e(rank - 1, n))
        coroots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
        coroots.append(vec_scale(2, e(rank - 1, n)))
        scale = Fraction(1)
    elif family == "C":
        n = rank
        roots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
        roots.append(vec_scale(2, e(rank - 1, n)))
        coroots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
        coroots.append(e(rank - 1, n))
        scale = Fraction(2)
    elif family == "D":
        n = rank
        roots = [vec_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
        roots.append(vec_add(e(rank - 2, n), e(rank - 1, n)))
        coroots = [tuple(r) for r in roots]
        scale = Fraction(1)
    elif family == "G":
        n = 3
        roots = [frac_vec((1, -1, 0)), frac_vec((-2, 1, 1))]
        coroots = [frac_vec((1, -1, 0)), frac_vec((Fraction(-2, 3), Fraction(1, 3), Fraction(1, 3)))]
        scale = Fraction(3)
    else:
        raise UnsupportedTypeError(f"family {family!r}")
    return n, roots, coroots, scale


def build_root_datum(spec: Sequence[tuple[str, int]]) -> RootDatum:
    """Assemble the root datum of a product of classical factors.

    Rejects unsupported families or ranks, naming the offending component,
    and refuses types whose Weyl group would exceed the enumeration budget.
    """
    if not spec:
        raise UnsupportedTypeError("empty type")
    spec = tuple((str(f).upper(), int(r)) for f, r in spec)
    for idx, (family, rank) in enumerate(spec):
        if family not in _FAMILY_MIN_RANK:
            raise UnsupportedTypeError(f"component {idx}: family {family!r} not supported")
        if family == "G" and rank != 2:
            raise UnsupportedTypeError(f"component {idx}: G requires rank 2, got {rank}")
        if rank < _FAMILY_MIN_RANK[family]:
            raise UnsupportedTypeError(
                f"component {idx}: {family}_{rank} below minimal rank {_FAMILY_MIN_RANK[family]}"
            )
    if weyl_order(spec) > WEYL_ORDER_BUDGET:
        raise UnsupportedTypeError(
            f"Weyl order {weyl_order(spec)} exceeds budget {WEYL_ORDER_BUDGET}"
        )

    blocks = [_factor_data(f, r) for f, r in spec]
    ambient = sum(b[0] for b in blocks)
    roots: list[LatticeVec] = []
    coroots: list[LatticeVec] = []
    slices: list[tuple[int, int]] = []
    root_ranges: list[tuple[int, int]] = []
    scales: list[Fraction] = []
    offset = 0
    for n, broots, bcoroots, scale in blocks:
        pad = lambda v: tuple([Fraction(0)] * offset + list(v) + [Fraction(0)] * (ambient - offset - n))
        root_ranges.append((len(roots), len(roots) + len(broots)))
        roots.extend(character(pad(v)) for v in broots)
        coroots.extend(cocharacter(pad(v)) for v in bcoroots)
        slices.append((offset, offset + n))
        scales.append(scale)
        offset += n

    cartan = tuple(
        tuple(int(vec_dot(coroots[i].coords, roots[j].coords)) for j in range(len(roots)))
        for i in range(len(coroots))
    )
    return RootDatum(
        cartan_type=spec,
        ambient_dim=ambient,
        simple_roots=tuple(roots),
        simple_coroots=tuple(coroots),
        cartan_matrix=cartan,
        factor_slices=tuple(slices),
        factor_root_ranges=tuple(root_ranges),
        gram_scales=tuple(scales),
    )


# ---------------------------------------------------------------------------
# operations

def pairing(lam: LatticeVec, chi: LatticeVec) -> Fraction:
    """Natural pairing of a cocharacter with a character (exact, bilinear)."""
    if lam.side != COCHARACTER or chi.side != CHARACTER:
        raise ValueError("pairing expects (cocharacter, character)")
    if lam.dim != chi.dim:
        raise ValueError("ambient dimension mismatch")
    return vec_dot(lam.coords, chi.coords)


def _gram_from_scales(datum: RootDatum, scales: Sequence[Fraction]) -> InnerProduct:
    n = datum.ambient_dim
    gram = [[Fraction(0)] * n for _ in range(n)]
    for (start, stop), scale in zip(datum.factor_slices, scales):
        for i in range(start, stop):
            gram[i][i] = Fraction(scale)
    g = tuple(tuple(row) for row in gram)
    return InnerProduct(gram=g, gram_inv=mat_inv(g))


def inner_product_default(datum: RootDatum) -> InnerProduct:
    """Weyl-invariant form, short coroots of squared length 2 per factor."""
    return _gram_from_scales(datum, datum.gram_scales)


def rescaled_inner_product(datum: RootDatum, factors: Sequence) -> InnerProduct:
    """Default form rescaled by a positive rational on each simple factor."""
    factors = [Fraction(f) for f in factors]
    if len(factors) != len(datum.cartan_type):
        raise ValueError("one scale per simple factor required")
    if any(f <= 0 for f in factors):
        raise ValueError("scales must be positive")
    return _gram_from_scales(datum, [s * f for s, f in zip(datum.gram_scales, factors)])


def dualize(v: LatticeVec, datum: RootDatum, ip: InnerProduct | None = None) -> LatticeVec:
    """Image under the inner-product identification of X_* with X^*."""
    ip = ip or inner_product_default(datum)
    if v.side == COCHARACTER:
        return LatticeVec(CHARACTER, mat_vec(ip.gram, v.coords))
    return LatticeVec(COCHARACTER, mat_vec(ip.gram_inv, v.coords))


def fundamental_weights(datum: RootDatum) -> tuple[LatticeVec, ...]:
    """Characters in the root span dual to the simple coroots."""
    a_inv = mat_inv(tuple(tuple(Fraction(x) for x in row) for row in datum.cartan_matrix))
    weights = []
    for alpha in range(datum.rank):
        coeffs = [a_inv[j][alpha] for j in range(datum.rank)]
        vec = tuple(
            sum((c * r.coords[i] for c, r in zip(coeffs, datum.simple_roots)), Fraction(0))
            for i in range(datum.ambient_dim)
        )
        weights.append(LatticeVec(CHARACTER, vec))
    return tuple(weights)


def fundamental_coweights(datum: RootDatum, ip: InnerProduct | None = None) -> tuple[LatticeVec, ...]:
    ip = ip or inner_product_default(datum)
    return tuple(dualize(w, datum, ip) for w in fundamental_weights(datum))


def simple_reflection_matrix(datum: RootDatum, i: int) -> Matrix:
    """Reflection in the i-th simple root, acting on the cocharacter space.

    In these coordinate models the same matrix gives the character action,
    because every reflection is orthogonal for the plain dot product.
    """
    alpha = datum.simple_roots[i].coords
    alpha_v = datum.simple_coroots[i].coords
    n = datum.ambient_dim
    return tuple(
        tuple(Fraction(int(r == c)) - alpha[r] * alpha_v[c] for c in range(n))
        for r in range(n)
    )


def act_matrix(m: Matrix, v: LatticeVec) -> LatticeVec:
    return LatticeVec(v.side, mat_vec(m, v.coords))


def positive_roots(datum: RootDatum) -> tuple[LatticeVec, ...]:
    """All positive roots, as characters, by closing Delta under reflections."""
    gens = [simple_reflection_matrix(datum, i) for i in range(datum.rank)]
    seen = {r.coords for r in datum.simple_roots}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = mat_vec(g, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    simple = [r.coords for r in datum.simple_roots]
    out = []
    for v in sorted(seen):
        coeffs = solve_in_span(simple, v)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            out.append(LatticeVec(CHARACTER, v))
    return tuple(out)
