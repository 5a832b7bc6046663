"""Graded cohomology tables: sign sets, minimal parabolic labels, dimensions.

Everything here is exact: set membership is decided by signs of rational
pairings, dimensions are integer polynomials in q, and the point-count series
is an integer for every extension degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .galois import (
    DeltaOrbits,
    GaloisAction,
    MuClass,
    WOrbit,
    build_galois_action,
    delta_orbits,
    gamma_e,
    split_action,
    weyl_orbits,
)
from .rootdata import (
    InnerProduct,
    LatticeVec,
    RootDatum,
    build_root_datum,
    cocharacter,
    fundamental_coweights,
    inner_product_default,
    num_positive_roots,
)
from .weyl import (
    WeylElement,
    WeylGroup,
    act,
    dominant_representative,
    generate_weyl,
    kostant_reps,
    stabilizer_w_mu,
)


@dataclass(frozen=True)
class DimPoly:
    """Integer polynomial in q, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    @staticmethod
    def zero() -> "DimPoly":
        return DimPoly(())

    @staticmethod
    def monomial(degree: int, coeff: int = 1) -> "DimPoly":
        return DimPoly(tuple([0] * degree + [coeff])).trim()

    def trim(self) -> "DimPoly":
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return DimPoly(tuple(c))

    def __add__(self, other: "DimPoly") -> "DimPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return DimPoly(tuple(x + y for x, y in zip(a, b))).trim()

    def __sub__(self, other: "DimPoly") -> "DimPoly":
        return self + DimPoly(tuple(-c for c in other.coeffs))

    def __call__(self, q: int) -> int:
        return sum(c * q**k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{k}" if c != 1 else f"q^{k}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass
class GroupData:
    """A full problem instance: root datum, twist, dominant cocharacter, q."""

    datum: RootDatum
    ip: InnerProduct
    weyl: WeylGroup
    action: GaloisAction
    orbits_delta: DeltaOrbits
    mu_input: LatticeVec
    mu: LatticeVec
    dominance_normalized: bool
    w_mu: tuple[WeylElement, ...]
    kostant: tuple[WeylElement, ...]
    muclass: MuClass
    worbits: tuple[WOrbit, ...]
    q: int

    @property
    def d_prime(self) -> int:
        return self.orbits_delta.d_prime

    @property
    def is_split(self) -> bool:
        return self.action.is_trivial

    @property
    def q_e(self) -> int:
        return self.q ** self.muclass.e_degree

    def orbit_pairing(self, w: WeylElement, orbit_index: int) -> Fraction:
        """The sign quantity <w mu, orbit coweight> via the invariant form."""
        wmu = act(w, self.mu)
        return self.ip.value(wmu, self.orbits_delta.twisted_coweights[orbit_index])


def build_group_data(
    cartan_spec,
    mu_coords,
    q: int,
    twist: tuple | None = None,
    ip: InnerProduct | None = None,
    weyl_budget: int = 10**6,
) -> GroupData:
    """Assemble a problem instance; mu is conjugated dominant up front."""
    datum = build_root_datum(cartan_spec)
    ip = ip or inner_product_default(datum)
    if twist is None:
        action = split_action(datum)
    else:
        perm, order = twist
        action = build_galois_action(datum, tuple(int(p) - 1 for p in perm), int(order))
    orbits = delta_orbits(datum, action, ip)
    mu_in = cocharacter(mu_coords)
    if mu_in.dim != datum.ambient_dim:
        raise ValueError(f"mu must have length {datum.ambient_dim}")
    mu, moved = dominant_representative(datum, mu_in)
    W = generate_weyl(datum, budget=weyl_budget)
    w_mu = stabilizer_w_mu(W, mu)
    reps = kostant_reps(W, w_mu)
    muclass = gamma_e(datum, action, mu)
    worb = weyl_orbits(W, reps, action, muclass)
    return GroupData(
        datum=datum,
        ip=ip,
        weyl=W,
        action=action,
        orbits_delta=orbits,
        mu_input=mu_in,
        mu=mu,
        dominance_normalized=moved,
        w_mu=w_mu,
        kostant=reps,
        muclass=muclass,
        worbits=worb,
        q=q,
    )


# ---------------------------------------------------------------------------
# sign sets and the assembled table

def omega_I(gd: GroupData, I: frozenset[int]) -> tuple[WOrbit, ...]:
    """Orbits whose pairing against every coweight outside I is strictly positive."""
    out = []
    for orbit in gd.worbits:
        if all(
            gd.orbit_pairing(orbit.rep, k) > 0
            for k in range(gd.d_prime)
            if k not in I
        ):
            out.append(orbit)
    return tuple(out)


def minimal_I(gd: GroupData, orbit: WOrbit) -> frozenset[int]:
    """Smallest label set admitting the orbit: the non-positive pairing columns."""
    return frozenset(
        k for k in range(gd.d_prime) if gd.orbit_pairing(orbit.rep, k) <= 0
    )


@dataclass(frozen=True)
class CohomologySummand:
    orbit: WOrbit
    I: frozenset[int]
    degree: int
    twist: int
    galois_dim: int


@dataclass
class CohomologyTable:
    d_prime: int
    labels: tuple[str, ...]
    summands: tuple[CohomologySummand, ...]

    def by_degree(self) -> dict[int, list[CohomologySummand]]:
        out: dict[int, list[CohomologySummand]] = {}
        for s in self.summands:
            out.setdefault(s.degree, []).append(s)
        return dict(sorted(out.items()))

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({s.degree for s in self.summands}))


def _summand_sort_key(s: CohomologySummand):
    return (s.degree, s.twist, sorted(s.I), s.orbit.rep.word)


def assemble_cohomology(gd: GroupData) -> CohomologyTable:
    """One summand per orbit, placed by length and by the size of its label set."""
    summands = []
    for orbit in gd.worbits:
        I = minimal_I(gd, orbit)
        degree = 2 * orbit.length + (gd.d_prime - len(I))
        summands.append(
            CohomologySummand(
                orbit=orbit,
                I=I,
                degree=degree,
                twist=orbit.length,
                galois_dim=orbit.size,
            )
        )
    summands.sort(key=_summand_sort_key)
    return CohomologyTable(
        d_prime=gd.d_prime, labels=gd.orbits_delta.labels, summands=tuple(summands)
    )


def assemble_split_table(gd: GroupData) -> CohomologyTable:
    """Split-case table computed without any orbit machinery.

    Walks the Kostant representatives directly against the per-root
    fundamental coweights; serves as an independent regression path for the
    orbit-based assembly.
    """
    if not gd.is_split:
        raise ValueError("split path requires a split instance")
    coweights = fundamental_coweights(gd.datum, gd.ip)
    d = gd.datum.rank
    summands = []
    for w in gd.kostant:
        wmu = act(w, gd.mu)
        I = frozenset(i for i in range(d) if gd.ip.value(wmu, coweights[i]) <= 0)
        degree = 2 * w.length + (d - len(I))
        orbit = next(o for o in gd.worbits if o.rep.matrix == w.matrix)
        summands.append(
            CohomologySummand(orbit=orbit, I=I, degree=degree, twist=w.length, galois_dim=1)
        )
    summands.sort(key=_summand_sort_key)
    return CohomologyTable(
        d_prime=d, labels=gd.orbits_delta.labels, summands=tuple(summands)
    )


@dataclass(frozen=True)
class EulerTerm:
    sign: int
    I: frozenset[int]
    twist: int
    galois_dim: int


def euler_characteristic(table: CohomologyTable) -> tuple[EulerTerm, ...]:
    """Alternating sum of the table, one signed term per summand."""
    terms = [
        EulerTerm(
            sign=(-1) ** s.degree,
            I=s.I,
            twist=s.twist,
            galois_dim=s.galois_dim,
        )
        for s in table.summands
    ]
    return tuple(terms)


# ---------------------------------------------------------------------------
# dimension polynomials

def _roots_of_label(gd: GroupData, I: frozenset[int]) -> frozenset[int]:
    roots: set[int] = set()
    for k in I:
        roots.update(gd.orbits_delta.orbits[k])
    return frozenset(roots)


def _minimal_coset_reps(gd: GroupData, root_set: frozenset[int]):
    """Minimal-length representatives of W / W_I for a set of simple roots."""
    reps = []
    for w in gd.weyl.elements:
        ok = True
        for i in root_set:
            sw = gd.weyl.multiply(w, gd.weyl.by_matrix[_reflection(gd, i)])
            if sw.length < w.length:
                ok = False
                break
        if ok:
            reps.append(w)
    return reps


def _reflection(gd: GroupData, i: int):
    from .rootdata import simple_reflection_matrix

    return simple_reflection_matrix(gd.datum, i)


def dim_induced(gd: GroupData, I: frozenset[int]) -> DimPoly:
    """Point count of the I-parabolic quotient as a polynomial in q.

    Counted over fixed Bruhat cells: minimal coset representatives fixed by
    the twisting diagram automorphism, one cell of size q^l(w) each.  For
    split instances this is the classical parabolic Poincare polynomial.
    """
    root_set = _roots_of_label(gd, I)
    sigma = gd.action.matrix
    from .rootdata import mat_inv, mat_mul

    sigma_inv = mat_inv(sigma)
    poly = DimPoly.zero()
    for w in _minimal_coset_reps(gd, root_set):
        conj = mat_mul(mat_mul(sigma, w.matrix), sigma_inv)
        if conj == w.matrix:
            poly = poly + DimPoly.monomial(w.length)
    return poly


def dim_v(gd: GroupData, I: frozenset[int]) -> DimPoly:
    """Inclusion-exclusion over larger label sets on the induced dimensions."""
    rest = [k for k in range(gd.d_prime) if k not in I]
    poly = DimPoly.zero()
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            term = dim_induced(gd, I | frozenset(extra))
            if r % 2 == 0:
                poly = poly + term
            else:
                poly = poly - term
    return poly


def all_dim_polys(gd: GroupData) -> dict[frozenset[int], tuple[DimPoly, DimPoly]]:
    """(induced, quotient) dimension polynomials for every label subset."""
    out = {}
    induced = {}
    for r in range(gd.d_prime + 1):
        for I in itertools.combinations(range(gd.d_prime), r):
            induced[frozenset(I)] = dim_induced(gd, frozenset(I))
    for I, ipoly in induced.items():
        rest = [k for k in range(gd.d_prime) if k not in I]
        v = DimPoly.zero()
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                term = induced[I | frozenset(extra)]
                v = v + term if r % 2 == 0 else v - term
        out[I] = (ipoly, v)
    return out


def steinberg_dimension(gd: GroupData) -> int:
    """Expected bottom-parabolic quotient dimension, q^(number of positive roots)."""
    return gd.q ** num_positive_roots(gd.datum.cartan_type)


# ---------------------------------------------------------------------------
# point-count series

def lefschetz_series(gd: GroupData, table: CohomologyTable, m: int) -> int:
    """Predicted number of semistable points over the degree-m extension of E.

    Sums (-1)^degree * dim * trace over the summands, where the trace of the
    m-th Frobenius power on an f-element orbit module is f when f divides m
    and 0 otherwise, and each Tate twist contributes q_E^(m * twist).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    vdims = {}
    total = 0
    for s in table.summands:
        if s.I not in vdims:
            vdims[s.I] = dim_v(gd, s.I)(gd.q)
        f = s.galois_dim
        trace = f if m % f == 0 else 0
        if trace == 0:
            continue
        total += (-1) ** s.degree * vdims[s.I] * trace * gd.q_e ** (m * s.twist)
    return total
