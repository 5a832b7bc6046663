"""Finite field towers, subspaces in echelon form, flags, Hermitian structure.

Field elements are integers 0..p^n-1 encoding polynomial coefficients base p;
multiplication runs on log/antilog tables, addition on a precomputed table.
Every subspace is kept in reduced row echelon form, which is the canonical
representative used for hashing and equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

SUBSPACE_BUDGET = 10**7


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


# ---------------------------------------------------------------------------
# polynomial helpers over F_p for constructing GF(p^n)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = _poly_trim(a)
    return a


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _poly_mod(a, b, p)
        a, b = b, a
    return a


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(f, p):
    n = len(f) - 1
    x = [0, 1]
    xq = _poly_powmod(x, p**n, f, p)
    diff = _poly_trim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)])
    if diff:
        return False
    for ell in _prime_factors(n):
        xk = _poly_powmod(x, p ** (n // ell), f, p)
        diff = _poly_trim([(a - b) % p for a, b in itertools.zip_longest(xk, x, fillvalue=0)])
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _find_irreducible(p, n):
    if n == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=n):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    raise ValueError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# the field tower

class FieldTower:
    """Arithmetic for F_{q^m} together with its distinguished base field F_q."""

    def __init__(self, q: int, ext_degree: int):
        p, base_deg = _factor_prime_power(q)
        self.p = p
        self.q = q
        self.m = ext_degree
        n = base_deg * ext_degree
        self.degree = n
        self.size = p**n
        self.modulus = _find_irreducible(p, n)
        self._build_tables()

    # integers encode coefficient vectors base p, little-endian
    def _to_poly(self, x: int):
        out = []
        while x:
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_poly(self, a) -> int:
        x = 0
        for c in reversed(a):
            x = x * self.p + (c % self.p)
        return x

    def _raw_mul(self, x: int, y: int) -> int:
        return self._from_poly(_poly_mod(_poly_mul(self._to_poly(x), self._to_poly(y), self.p), self.modulus, self.p))

    def _build_tables(self):
        size, p = self.size, self.p
        add = [[0] * size for _ in range(size)]
        for x in range(size):
            px = self._to_poly(x)
            for y in range(x, size):
                py = self._to_poly(y)
                s = self._from_poly(
                    [(a + b) % p for a, b in itertools.zip_longest(px, py, fillvalue=0)]
                )
                add[x][y] = s
                add[y][x] = s
        self._add = add
        self._neg = [self._from_poly([(-c) % p for c in self._to_poly(x)]) for x in range(size)]

        order = size - 1
        if order == 1:
            self._exp = [1]
            self._log = [0, 0]
            self._frob_q = [self.power(x, self.q) for x in range(size)]
            self._subfield_cache = {}
            return
        for g in range(2, size):
            exp = [1]
            cur = 1
            for _ in range(order):
                cur = self._raw_mul(cur, g)
                if cur == 1:
                    break
                exp.append(cur)
            if len(exp) == order:
                self._exp = exp
                log = [0] * size
                for i, v in enumerate(exp):
                    log[v] = i
                self._log = log
                break
        else:
            raise AssertionError("no primitive element found")
        self._frob_q = [self.power(x, self.q) for x in range(size)]
        self._subfield_cache: dict[int, frozenset[int]] = {}

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.size - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError
        return self._exp[(-self._log[x]) % (self.size - 1)]

    def power(self, x: int, e: int) -> int:
        if x == 0:
            return 0 if e else 1
        return self._exp[(self._log[x] * e) % (self.size - 1)]

    def frobenius(self, x: int, times: int = 1) -> int:
        """Apply x -> x^q the given number of times."""
        for _ in range(times % self.m if self.m else 0):
            x = self._frob_q[x]
        return x

    def subfield(self, j: int) -> frozenset[int]:
        """Elements of the subfield F_{q^j} (fixed points of frob^j)."""
        if j not in self._subfield_cache:
            self._subfield_cache[j] = frozenset(
                x for x in range(self.size) if self.frobenius(x, j) == x
            )
        return self._subfield_cache[j]

    @property
    def elements(self) -> range:
        return range(self.size)


@lru_cache(maxsize=None)
def make_tower(q: int, ext_degree: int) -> FieldTower:
    return FieldTower(q, ext_degree)


# ---------------------------------------------------------------------------
# linear algebra over a tower

def rref(tower: FieldTower, rows):
    """Canonical reduced row echelon form; zero rows are dropped."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = tower.inv(work[r][col])
        work[r] = [tower.mul(inv, x) for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [tower.sub(x, tower.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(tower: FieldTower, rows) -> int:
    return len(rref(tower, rows)[0])


def nullspace(tower: FieldTower, rows, ncols: int):
    """Canonical basis of the right kernel."""
    reduced, pivots = rref(tower, rows) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = tower.neg(reduced[r][fc])
        basis.append(vec)
    return rref(tower, basis)[0] if basis else ()


@dataclass(frozen=True)
class Subspace:
    """A subspace in canonical reduced echelon form."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @property
    def dim(self) -> int:
        return len(self.rows)


def subspace_from_rows(tower: FieldTower, rows, ncols: int) -> Subspace:
    reduced, _ = rref(tower, rows)
    return Subspace(rows=reduced, ncols=ncols)


def full_space(tower: FieldTower, n: int) -> Subspace:
    return Subspace(rows=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), ncols=n)


def contains(tower: FieldTower, big: Subspace, small: Subspace) -> bool:
    if small.dim > big.dim:
        return False
    return rank(tower, list(big.rows) + list(small.rows)) == big.dim


def intersection_dim(tower: FieldTower, a: Subspace, b: Subspace) -> int:
    if a.dim == 0 or b.dim == 0:
        return 0
    return a.dim + b.dim - rank(tower, list(a.rows) + list(b.rows))


def is_k_rational(sub: Subspace, tower: FieldTower, subfield_deg: int = 1) -> bool:
    """Entries of the canonical basis lie in the subfield; equivalent to
    stability under the subfield Frobenius."""
    field = tower.subfield(subfield_deg)
    return all(x in field for row in sub.rows for x in row)


def frobenius_subspace(tower: FieldTower, sub: Subspace, times: int = 1) -> Subspace:
    rows = [[tower.frobenius(x, times) for x in row] for row in sub.rows]
    return subspace_from_rows(tower, rows, sub.ncols)


def gaussian_binomial(n: int, k: int, Q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(
    tower: FieldTower,
    n: int,
    d: int,
    subfield_deg: int | None = None,
    budget: int = SUBSPACE_BUDGET,
) -> list[Subspace]:
    """All d-dimensional subspaces of the n-space, in canonical echelon form.

    With ``subfield_deg`` set, only subspaces whose canonical basis lies in
    F_{q^subfield_deg}; those are exactly the subspaces defined over that
    subfield.
    """
    if d == 0:
        return [Subspace(rows=(), ncols=n)]
    elements = sorted(tower.subfield(subfield_deg)) if subfield_deg else list(tower.elements)
    Q = len(elements)
    expected = gaussian_binomial(n, d, Q)
    if expected > budget:
        raise BudgetError(f"{expected} subspaces exceed budget {budget}")
    out = []
    for pivots in itertools.combinations(range(n), d):
        free_cells = [
            (i, j)
            for i in range(d)
            for j in range(pivots[i] + 1, n)
            if j not in pivots
        ]
        for values in itertools.product(elements, repeat=len(free_cells)):
            rows = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free_cells, values):
                rows[i][j] = v
            out.append(Subspace(rows=tuple(tuple(r) for r in rows), ncols=n))
    assert len(out) == expected
    return out


# ---------------------------------------------------------------------------
# flags

@dataclass(frozen=True)
class FlagPoint:
    """A weighted flag: proper subspaces of the chain plus the weight ladder.

    ``weights`` lists the distinct weights in decreasing order; the chain has
    one subspace per weight except the last, whose space is the full ambient.
    """

    chain: tuple[Subspace, ...]
    weights: tuple[Fraction, ...]

    @property
    def ncols(self) -> int:
        return self.chain[0].ncols if self.chain else 0


def mu_flag_type(mu_coords) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Distinct weights (decreasing) and proper chain dimensions of a cocharacter."""
    vals = [Fraction(v) for v in mu_coords]
    distinct = sorted(set(vals), reverse=True)
    dims = []
    run = 0
    for w in distinct[:-1]:
        run += vals.count(w)
        dims.append(run)
    return tuple(distinct), tuple(dims)


def flag_count(n: int, dims, Q: int) -> int:
    total = 1
    prev = 0
    for d in dims:
        total *= gaussian_binomial(n - prev, d - prev, Q)
        prev = d
    return total


def enumerate_flag_points(
    tower: FieldTower,
    n: int,
    weights,
    dims,
    subfield_deg: int | None = None,
    budget: int = SUBSPACE_BUDGET,
) -> list[FlagPoint]:
    """All flags with the given proper dimensions over the (sub)field."""
    Q = len(tower.subfield(subfield_deg)) if subfield_deg else tower.size
    expected = flag_count(n, dims, Q)
    if expected > budget:
        raise BudgetError(f"{expected} flags exceed budget {budget}")
    weights = tuple(Fraction(w) for w in weights)
    if not dims:
        return [FlagPoint(chain=(), weights=weights)]
    levels = {d: enumerate_subspaces(tower, n, d, subfield_deg, budget) for d in sorted(set(dims))}
    chains: list[tuple[Subspace, ...]] = [(s,) for s in levels[dims[0]]]
    for d in dims[1:]:
        nxt = []
        for chain in chains:
            last = chain[-1]
            for cand in levels[d]:
                if contains(tower, cand, last):
                    nxt.append(chain + (cand,))
        chains = nxt
    assert len(chains) == expected
    return [FlagPoint(chain=c, weights=weights) for c in chains]


# ---------------------------------------------------------------------------
# Hermitian structure for the quasi-split unitary group on 3 variables

@dataclass(frozen=True)
class HermitianData:
    """Antidiagonal Hermitian form together with its twisted Frobenius.

    The form is h(x, y) = sum_i x_i conj(y)_{n+1-i} with conj the q-power map;
    the induced twist on flags sends a chain to the reversed chain of
    conjugate-perpendicular spaces.
    """

    tower: FieldTower
    n: int

    def form_value(self, u, v, conj_power: int = 1) -> int:
        t = self.tower
        total = 0
        for i in range(self.n):
            total = t.add(total, t.mul(u[i], t.frobenius(v[self.n - 1 - i], conj_power)))
        return total

    def perp(self, sub: Subspace, conj_power: int = 1) -> Subspace:
        """Conjugate-orthogonal complement {x : h(x, w) = 0 for w in sub}."""
        t = self.tower
        rows = [
            [t.frobenius(row[self.n - 1 - j], conj_power) for j in range(self.n)]
            for row in sub.rows
        ]
        return Subspace(rows=nullspace(t, rows, self.n), ncols=self.n)

    def twisted_frobenius(self, x: FlagPoint) -> FlagPoint:
        chain = tuple(
            self.perp(frobenius_subspace(self.tower, s, 1), 0)
            for s in reversed(x.chain)
        )
        return FlagPoint(chain=chain, weights=x.weights)

    def is_fixed(self, x: FlagPoint, steps: int) -> bool:
        cur = x
        for _ in range(steps):
            cur = self.twisted_frobenius(cur)
        return cur == x


def frobenius_point(x: FlagPoint, tower: FieldTower, hermitian: HermitianData | None = None) -> FlagPoint:
    """Arithmetic Frobenius on a flag, twisted when Hermitian data is attached."""
    if hermitian is not None:
        return hermitian.twisted_frobenius(x)
    return FlagPoint(
        chain=tuple(frobenius_subspace(tower, s, 1) for s in x.chain),
        weights=x.weights,
    )


def enumerate_twisted_fixed_flags(
    herm: HermitianData,
    weights,
    conj_power: int,
    budget: int = SUBSPACE_BUDGET,
) -> list[FlagPoint]:
    """Full flags fixed by the twisted Frobenius taken to an odd power.

    The fixed flags are exactly (L, perp of L conjugated by q^conj_power) for
    L an isotropic line of the correspondingly twisted form; ambient must be
    the field of q^(2 * conj_power) elements.
    """
    t = herm.tower
    n = herm.n
    if n != 3:
        raise ValueError("twisted fixed-flag enumeration is implemented for 3-space")
    count = gaussian_binomial(n, 1, t.size)
    if count > budget:
        raise BudgetError(f"{count} candidate lines exceed budget {budget}")
    weights = tuple(Fraction(w) for w in weights)
    out = []
    for line in enumerate_subspaces(t, n, 1, budget=budget):
        v = line.rows[0]
        if herm.form_value(v, v, conj_power) != 0:
            continue
        plane = herm.perp(frobenius_subspace(t, line, conj_power), 0)
        assert contains(t, plane, line)
        out.append(FlagPoint(chain=(line, plane), weights=weights))
    return out
