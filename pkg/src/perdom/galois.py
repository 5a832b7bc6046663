"""Quasi-split Galois twist: diagram automorphisms, orbit coweights, W-orbits.

The Galois group is cyclic, generated by one Cartan-preserving permutation of
the simple roots; its action on the Weyl group is matrix conjugation, which is
cross-checked downstream by the requirement that Kostant representatives stay
Kostant representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    InnerProduct,
    LatticeVec,
    Matrix,
    RootDatum,
    fundamental_coweights,
    identity_matrix,
    inner_product_default,
    mat_inv,
    mat_mul,
    mat_vec,
    vec_add,
)
from .weyl import WeylElement, WeylGroup, dominant_representative, is_dominant


@dataclass(frozen=True)
class GaloisAction:
    """A cyclic group of diagram automorphisms with its linear realization."""

    perm: tuple[int, ...]
    order: int
    matrix: Matrix

    @property
    def is_trivial(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def power(self, k: int) -> Matrix:
        m = identity_matrix(len(self.matrix))
        for _ in range(k % self.order):
            m = mat_mul(self.matrix, m)
        return m


@dataclass(frozen=True)
class DeltaOrbits:
    """Partition of the simple roots into Galois orbits, with coweights."""

    orbits: tuple[tuple[int, ...], ...]
    twisted_coweights: tuple[LatticeVec, ...]
    labels: tuple[str, ...]

    @property
    def d_prime(self) -> int:
        return len(self.orbits)

    def orbit_of_root(self, i: int) -> int:
        for k, orbit in enumerate(self.orbits):
            if i in orbit:
                return k
        raise KeyError(i)


@dataclass(frozen=True)
class MuClass:
    """A dominant cocharacter with its reflex data inside the cyclic Galois group."""

    mu: LatticeVec
    e_degree: int
    gamma_e_order: int


@dataclass(frozen=True)
class WOrbit:
    """An orbit of Kostant representatives under the reflex subgroup."""

    rep: WeylElement
    members: tuple[WeylElement, ...]
    size: int
    length: int


def _perm_order(perm: tuple[int, ...]) -> int:
    order = 1
    n = len(perm)
    current = list(range(n))
    while True:
        current = [perm[i] for i in current]
        if current == list(range(n)):
            return order
        order += 1


def split_action(datum: RootDatum) -> GaloisAction:
    return build_galois_action(datum, tuple(range(datum.rank)), 1)


def build_galois_action(datum: RootDatum, perm, order: int) -> GaloisAction:
    """Isometric linear extension of a Cartan-preserving simple-root permutation.

    The matrix permutes simple coroots according to ``perm`` and is the
    identity on the orthogonal complement of their span.
    """
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(datum.rank)):
        raise ValueError("perm must be a permutation of the simple roots")
    a = datum.cartan_matrix
    for i in range(datum.rank):
        for j in range(datum.rank):
            if a[perm[i]][perm[j]] != a[i][j]:
                raise ValueError("perm does not preserve the Cartan matrix")
    base = _perm_order(perm)
    if order < 1 or order % base != 0:
        raise ValueError(f"order {order} is not a positive multiple of ord(perm) = {base}")

    n = datum.ambient_dim
    coroots = [c.coords for c in datum.simple_coroots]
    # complete the coroots to a basis with dot-orthogonal complement vectors
    basis = [list(v) for v in coroots]
    images = [list(datum.simple_coroots[perm[i]].coords) for i in range(datum.rank)]
    for candidate in range(n):
        e = [Fraction(0)] * n
        e[candidate] = Fraction(1)
        trial = basis + [e]
        if _full_rank(trial):
            # orthogonalize against the coroot span so "identity on the
            # complement" is meant for the invariant (block-scalar) form
            v = _project_out(e, coroots)
            basis.append(list(v))
            images.append(list(v))
        if len(basis) == n:
            break
    b = tuple(tuple(row) for row in zip(*basis))
    t = tuple(tuple(row) for row in zip(*images))
    matrix = mat_mul(t, mat_inv(b))

    action = GaloisAction(perm=perm, order=order, matrix=matrix)
    _validate_action(datum, action)
    return action


def _full_rank(rows) -> bool:
    work = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(work[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank == len(work)


def _project_out(v, span):
    """Dot-orthogonal projection of v away from the span (Gram-Schmidt)."""
    from .rootdata import vec_dot, vec_scale, vec_sub

    ortho = []
    for s in span:
        u = tuple(s)
        for t in ortho:
            u = vec_sub(u, vec_scale(vec_dot(u, t) / vec_dot(t, t), t))
        ortho.append(u)
    w = tuple(v)
    for t in ortho:
        w = vec_sub(w, vec_scale(vec_dot(w, t) / vec_dot(t, t), t))
    return w


def _validate_action(datum: RootDatum, action: GaloisAction) -> None:
    for i in range(datum.rank):
        if mat_vec(action.matrix, datum.simple_coroots[i].coords) != datum.simple_coroots[action.perm[i]].coords:
            raise AssertionError("matrix does not permute simple coroots as declared")
        if mat_vec(action.matrix, datum.simple_roots[i].coords) != datum.simple_roots[action.perm[i]].coords:
            raise AssertionError("matrix does not permute simple roots as declared")
    if action.power(action.order) != identity_matrix(datum.ambient_dim):
        raise AssertionError("matrix order does not divide the declared order")


def delta_orbits(datum: RootDatum, action: GaloisAction, ip: InnerProduct | None = None) -> DeltaOrbits:
    """Galois orbits on Delta and the literal orbit-summed coweights.

    Each coweight is the sum over all ``order`` group elements, so an orbit
    member appears with multiplicity order/|orbit|; only positivity matters
    downstream, and that is unaffected.
    """
    ip = ip or inner_product_default(datum)
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for i in range(datum.rank):
        if i in seen:
            continue
        orbit = []
        j = i
        while j not in orbit:
            orbit.append(j)
            j = action.perm[j]
        seen.update(orbit)
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda o: o[0])

    coweights = fundamental_coweights(datum, ip)
    twisted = []
    for orbit in orbits:
        base = coweights[orbit[0]].coords
        total = tuple(Fraction(0) for _ in range(datum.ambient_dim))
        for k in range(action.order):
            total = vec_add(total, mat_vec(action.power(k), base))
        twisted.append(LatticeVec(coweights[0].side, total))
    labels = tuple(f"a{k + 1}" for k in range(len(orbits)))
    return DeltaOrbits(orbits=tuple(orbits), twisted_coweights=tuple(twisted), labels=labels)


def gamma_e(datum: RootDatum, action: GaloisAction, mu: LatticeVec) -> MuClass:
    """Reflex data of a dominant cocharacter: [E:k] and the stabilizer order."""
    if not is_dominant(datum, mu):
        raise ValueError("mu must be dominant")
    t = next(
        k for k in range(1, action.order + 1)
        if mat_vec(action.power(k), mu.coords) == mu.coords
    )
    if action.order % t != 0:
        raise AssertionError("stabilizer index does not divide the group order")
    return MuClass(mu=mu, e_degree=t, gamma_e_order=action.order // t)


def normalize_dominant(datum: RootDatum, mu: LatticeVec) -> tuple[LatticeVec, bool]:
    return dominant_representative(datum, mu)


def weyl_orbits(
    W: WeylGroup,
    kostant: tuple[WeylElement, ...],
    action: GaloisAction,
    muclass: MuClass,
) -> tuple[WOrbit, ...]:
    """Orbits of the Kostant set under conjugation by the reflex subgroup."""
    gen = action.power(muclass.e_degree)
    gen_inv = mat_inv(gen)
    kostant_set = {w.matrix for w in kostant}
    seen: set[Matrix] = set()
    orbits: list[WOrbit] = []
    for w in kostant:
        if w.matrix in seen:
            continue
        members = []
        current = w
        while current.matrix not in {m.matrix for m in members}:
            members.append(current)
            conj = mat_mul(mat_mul(gen, current.matrix), gen_inv)
            if conj not in W.by_matrix:
                raise AssertionError("conjugation left the Weyl group; inconsistent action")
            current = W.by_matrix[conj]
            if current.matrix not in kostant_set:
                raise AssertionError("orbit escaped the Kostant set; inconsistent action")
        if len({m.length for m in members}) != 1:
            raise AssertionError("orbit members have unequal lengths")
        if muclass.gamma_e_order % len(members) != 0:
            raise AssertionError("orbit size does not divide the reflex group order")
        members.sort(key=lambda m: (m.length, m.word))
        seen.update(m.matrix for m in members)
        orbits.append(
            WOrbit(rep=members[0], members=tuple(members), size=len(members), length=members[0].length)
        )
    orbits.sort(key=lambda o: (o.length, o.rep.word))
    if sum(o.size for o in orbits) != len(kostant):
        raise AssertionError("orbits do not partition the Kostant set")
    return tuple(orbits)
