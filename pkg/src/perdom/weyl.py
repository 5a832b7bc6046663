"""Weyl group enumeration: reduced words, lengths, actions, Kostant cosets.

Elements are identified by their exact matrix on the cocharacter space, which
makes equality testing canonical; reduced words are the BFS witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rootdata import (
    COCHARACTER,
    LatticeVec,
    Matrix,
    RootDatum,
    act_matrix,
    identity_matrix,
    mat_mul,
    num_positive_roots,
    pairing,
    simple_reflection_matrix,
    weyl_order,
)

WEYL_BUDGET = 10**6


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: Matrix
    length: int

    def __repr__(self):
        return f"w{list(self.word)}" if self.word else "w[]"


@dataclass
class WeylGroup:
    datum: RootDatum
    elements: tuple[WeylElement, ...]
    by_matrix: dict[Matrix, WeylElement] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.by_matrix[mat_mul(a.matrix, b.matrix)]

    def longest_length(self) -> int:
        return max(e.length for e in self.elements)


def generate_weyl(datum: RootDatum, budget: int = WEYL_BUDGET) -> WeylGroup:
    """Close the simple reflections under composition, by word length.

    BFS depth in the Cayley graph equals Coxeter length, so each element
    receives a reduced word and the correct length for free.
    """
    expected = weyl_order(datum.cartan_type)
    if expected > budget:
        raise BudgetError(f"Weyl order {expected} exceeds budget {budget}")
    gens = [simple_reflection_matrix(datum, i) for i in range(datum.rank)]
    ident = identity_matrix(datum.ambient_dim)
    first = WeylElement(word=(), matrix=ident, length=0)
    by_matrix = {ident: first}
    ordered = [first]
    frontier = [first]
    while frontier:
        nxt = []
        for w in frontier:
            for i, g in enumerate(gens):
                m = mat_mul(g, w.matrix)
                if m not in by_matrix:
                    el = WeylElement(word=(i,) + w.word, matrix=m, length=w.length + 1)
                    by_matrix[m] = el
                    nxt.append(el)
        nxt.sort(key=lambda e: e.word)
        ordered.extend(nxt)
        frontier = nxt
    if len(ordered) != expected:
        raise AssertionError(f"enumerated {len(ordered)} elements, expected {expected}")
    return WeylGroup(datum=datum, elements=tuple(ordered), by_matrix=by_matrix)


def act(w: WeylElement, v: LatticeVec) -> LatticeVec:
    """Exact action on either lattice; pairings are preserved by construction."""
    return act_matrix(w.matrix, v)


def inversion_count(W: WeylGroup, w: WeylElement, positives) -> int:
    """Number of positive roots sent negative; must equal the word length."""
    simple = [r.coords for r in W.datum.simple_roots]
    from .rootdata import solve_in_span

    count = 0
    for beta in positives:
        image = act(w, beta)
        coeffs = solve_in_span(simple, image.coords)
        if coeffs is None:
            raise AssertionError("root image left the root lattice")
        if all(c <= 0 for c in coeffs):
            count += 1
    return count


def is_dominant(datum: RootDatum, mu: LatticeVec) -> bool:
    return all(pairing(mu, alpha) >= 0 for alpha in datum.simple_roots)


def dominant_representative(datum: RootDatum, mu: LatticeVec) -> tuple[LatticeVec, bool]:
    """Conjugate mu into the dominant chamber; reports whether it moved."""
    if mu.side != COCHARACTER:
        raise ValueError("expected a cocharacter")
    moved = False
    current = mu
    limit = 2 * num_positive_roots(datum.cartan_type) + 1
    for _ in range(limit):
        bad = next(
            (i for i, alpha in enumerate(datum.simple_roots) if pairing(current, alpha) < 0),
            None,
        )
        if bad is None:
            return current, moved
        current = act_matrix(simple_reflection_matrix(datum, bad), current)
        moved = True
    raise AssertionError("dominance normalization failed to terminate")


def stabilizer_w_mu(W: WeylGroup, mu: LatticeVec) -> tuple[WeylElement, ...]:
    """The stabilizer of a dominant mu, checked to be the expected parabolic."""
    if not is_dominant(W.datum, mu):
        raise ValueError("mu must be dominant")
    stab = tuple(w for w in W.elements if act(w, mu).coords == mu.coords)
    zero_gens = [
        simple_reflection_matrix(W.datum, i)
        for i, alpha in enumerate(W.datum.simple_roots)
        if pairing(mu, alpha) == 0
    ]
    closure = {identity_matrix(W.datum.ambient_dim)}
    frontier = list(closure)
    while frontier:
        nxt = []
        for m in frontier:
            for g in zero_gens:
                prod = mat_mul(g, m)
                if prod not in closure:
                    closure.add(prod)
                    nxt.append(prod)
        frontier = nxt
    if closure != {w.matrix for w in stab}:
        raise AssertionError("stabilizer is not the parabolic generated by mu-orthogonal reflections")
    return stab


def kostant_reps(W: WeylGroup, w_mu: tuple[WeylElement, ...]) -> tuple[WeylElement, ...]:
    """Minimal-length representatives of W / W_mu, one per coset.

    The length minimum in each coset is asserted to be unique rather than
    trusted; elements come back sorted by (length, word).
    """
    member_set = {v.matrix for v in w_mu}
    if len(member_set) != len(w_mu):
        raise ValueError("duplicate elements in W_mu")
    covered: set[Matrix] = set()
    reps = []
    for w in sorted(W.elements, key=lambda e: (e.length, e.word)):
        if w.matrix in covered:
            continue
        coset = [W.multiply(w, v) for v in w_mu]
        lengths = sorted(c.length for c in coset)
        if len(lengths) > 1 and lengths[0] == lengths[1]:
            raise AssertionError("length minimum in coset is not unique")
        if lengths[0] != w.length:
            raise AssertionError("coset scan order violated minimality")
        covered.update(c.matrix for c in coset)
        reps.append(w)
    if len(reps) * len(w_mu) != W.order:
        raise AssertionError("coset count mismatch")
    return tuple(reps)
