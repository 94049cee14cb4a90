"""
Finite quadratic forms and their isometries.

A form is presented on cyclic generators g_1, ..., g_k of orders
d_1 | d_2 | ... | d_k.  ``q_gram[i][i]`` is q(g_i) in Q/2Z and
``q_gram[i][j]`` (i != j) is b(g_i, g_j) in Q/Z.  Elements of the group
are residue tuples x with 0 <= x_i < d_i.

Isometry groups and isomorphisms are found by exhaustive search, which
is exact and fast for groups of a few thousand elements.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

DEFAULT_BOUND = 10 ** 4


class BoundExceeded(ValueError):
    """The group is too large for brute-force enumeration."""


class NotAnIsometry(ValueError):
    pass


def isometry_bound() -> int:
    """Brute-force bound, overridable through ``FM_ISOM_BOUND``."""
    return int(os.environ.get("FM_ISOM_BOUND", DEFAULT_BOUND))


def mod2(x) -> Fraction:
    return Fraction(x) % 2


def mod1(x) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q_gram: tuple[tuple[Fraction, ...], ...]
    # Generator lifts in L (x) Q when the form came from a lattice.
    lifts: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        k = len(orders)
        q = [[Fraction(x) for x in row] for row in self.q_gram]
        if len(q) != k or any(len(row) != k for row in q):
            raise ValueError("q_gram must be a k x k matrix for k generators")
        for i, d in enumerate(orders):
            if d <= 1:
                raise ValueError(f"generator order {d} must exceed 1")
            if i and d % orders[i - 1]:
                raise ValueError(f"orders {orders} do not form a divisibility chain")
        for i in range(k):
            q[i][i] = mod2(q[i][i])
            if (q[i][i] * 2 * orders[i]).denominator != 1:
                raise ValueError(f"q(g_{i}) = {q[i][i]} incompatible with order {orders[i]}")
            for j in range(k):
                if i == j:
                    continue
                if q[i][j] % 1 != q[j][i] % 1:
                    raise ValueError(f"bilinear values b({i},{j}) and b({j},{i}) differ")
                q[i][j] = mod1(q[i][j])
                if (q[i][j] * orders[i]).denominator != 1:
                    raise ValueError(f"b(g_{i}, g_{j}) = {q[i][j]} incompatible with order {orders[i]}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q_gram", tuple(map(tuple, q)))

    @classmethod
    def cyclic(cls, d: int, q) -> "FiniteQuadraticForm":
        """Z/d with q(g) = q; the trivial form when d == 1."""
        if d == 1:
            return cls((), ())
        return cls((d,), ((Fraction(q),),))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.orders))

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(xi) % d for xi, d in zip(x, self.orders))

    def q(self, x: Sequence[int]) -> Fraction:
        return q_value(self, x)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        k = self.rank
        g = self.q_gram
        tot = Fraction(0)
        for i in range(k):
            if not x[i]:
                continue
            for j in range(k):
                if not y[j]:
                    continue
                # b(x, x) = q(x) mod 1
                tot += x[i] * y[j] * g[i][j]
        return tot % 1

    def is_zero(self, x: Sequence[int]) -> bool:
        return all(xi % d == 0 for xi, d in zip(x, self.orders))

    def element_order(self, x: Sequence[int]) -> int:
        from math import gcd
        out = 1
        for xi, d in zip(x, self.orders):
            o = d // gcd(xi % d, d)
            out = out * o // gcd(out, o)
        return out

    def __str__(self):
        if not self.orders:
            return "trivial form"
        parts = " + ".join(f"Z/{d}" for d in self.orders)
        qs = ", ".join(str(self.q_gram[i][i]) for i in range(self.rank))
        return f"({parts}; q = [{qs}])"


def q_value(F: FiniteQuadraticForm, x: Sequence[int]) -> Fraction:
    """q(x) = sum x_i^2 q(g_i) + 2 sum_{i<j} x_i x_j b(g_i, g_j)  mod 2."""
    if len(x) != F.rank:
        raise ValueError(f"element of length {len(x)} for a form on {F.rank} generators")
    g = F.q_gram
    tot = Fraction(0)
    for i in range(F.rank):
        if x[i]:
            tot += x[i] * x[i] * g[i][i]
            for j in range(i + 1, F.rank):
                tot += 2 * x[i] * x[j] * g[i][j]
    return tot % 2


def negate(F: FiniteQuadraticForm) -> FiniteQuadraticForm:
    q = tuple(tuple(-v for v in row) for row in F.q_gram)
    return FiniteQuadraticForm(F.orders, q)


# -- isometries ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class DiscIsometry:
    """Automorphism given by an integer matrix; column j is the image of g_j."""

    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]]) -> "DiscIsometry":
        k = len(images)
        return cls(tuple(tuple(int(images[j][i]) for j in range(k)) for i in range(k)))

    @property
    def images(self) -> tuple[tuple[int, ...], ...]:
        k = len(self.matrix)
        return tuple(tuple(self.matrix[i][j] for i in range(k)) for j in range(k))

    def apply(self, F: FiniteQuadraticForm, x: Sequence[int]) -> tuple[int, ...]:
        m = self.matrix
        k = len(m)
        return tuple(sum(m[i][j] * x[j] for j in range(k)) % F.orders[i] for i in range(k))

    def __repr__(self):
        return f"DiscIsometry({[list(r) for r in self.matrix]})"


def identity(F: FiniteQuadraticForm) -> DiscIsometry:
    k = F.rank
    return DiscIsometry(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))


def scalar(F: FiniteQuadraticForm, a: int) -> DiscIsometry:
    """x -> a x (an isometry only when a^2 q = q, e.g. a = -1)."""
    k = F.rank
    return DiscIsometry(
        tuple(tuple((a if i == j else 0) % F.orders[i] for j in range(k)) for i in range(k))
    )


def compose(F: FiniteQuadraticForm, phi: DiscIsometry, psi: DiscIsometry) -> DiscIsometry:
    """phi o psi."""
    return DiscIsometry.from_images([phi.apply(F, col) for col in psi.images])


def _hom_to(F, G, images) -> DiscIsometry:
    return DiscIsometry.from_images([G.reduce(y) for y in images])


def is_isometry(F: FiniteQuadraticForm, phi: DiscIsometry, target: Optional[FiniteQuadraticForm] = None) -> bool:
    """Check that phi is a bijective q-preserving homomorphism F -> target."""
    G = F if target is None else target
    if F.orders != G.orders or len(phi.matrix) != F.rank:
        return False
    imgs = phi.images
    for j, y in enumerate(imgs):
        if any(G.reduce([F.orders[j] * v for v in y])):
            return False  # image order does not divide d_j
        if q_value(G, y) != F.q_gram[j][j]:
            return False
        for i in range(j):
            if G.b(imgs[i], y) != F.q_gram[i][j]:
                return False
    return _is_bijective(F, G, imgs)


def _is_bijective(F, G, imgs) -> bool:
    seen = set()
    for x in F.elements():
        y = G.reduce([sum(x[j] * imgs[j][i] for j in range(F.rank)) for i in range(F.rank)])
        if y in seen:
            return False
        seen.add(y)
    return True


def _check_bound(F, bound):
    bound = isometry_bound() if bound is None else bound
    if F.order > bound:
        raise BoundExceeded(f"|A| = {F.order} exceeds the brute-force bound {bound}")


def _search(F: FiniteQuadraticForm, G: FiniteQuadraticForm, first_only: bool) -> list[DiscIsometry]:
    """All isometries F -> G (or the first one found), by backtracking."""
    if F.orders != G.orders:
        return []
    k = F.rank
    if k == 0:
        return [DiscIsometry(())]
    elems = list(G.elements())
    cands = []
    for j in range(k):
        d = F.orders[j]
        want = F.q_gram[j][j]
        cands.append([
            y for y in elems
            if G.is_zero([d * v for v in y]) and q_value(G, y) == want
        ])
    out = []
    chosen: list = []

    def rec(j):
        if j == k:
            if _is_bijective(F, G, chosen):
                out.append(DiscIsometry.from_images(chosen))
                return first_only
            return False
        for y in cands[j]:
            if all(G.b(chosen[i], y) == F.q_gram[i][j] for i in range(j)):
                chosen.append(y)
                stop = rec(j + 1)
                chosen.pop()
                if stop:
                    return True
        return False

    rec(0)
    return sorted(out)


def enumerate_isometries(F: FiniteQuadraticForm, bound: Optional[int] = None) -> "DiscSubgroup":
    """The full isometry group O(A_F), elements in lexicographic order."""
    _check_bound(F, bound)
    return DiscSubgroup(F, tuple(_search(F, F, first_only=False)))


def find_isomorphism(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm,
                     bound: Optional[int] = None) -> Optional[DiscIsometry]:
    """An isometry F1 -> F2 (column j = image of the j-th generator of F1), or None."""
    _check_bound(F1, bound)
    _check_bound(F2, bound)
    found = _search(F1, F2, first_only=True)
    return found[0] if found else None


def is_isomorphic(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm,
                  bound: Optional[int] = None) -> tuple[bool, Optional[DiscIsometry]]:
    w = find_isomorphism(F1, F2, bound)
    return w is not None, w


def inverse(F: FiniteQuadraticForm, phi: DiscIsometry) -> DiscIsometry:
    """Inverse of an automorphism (or of an isomorphism, into the source form)."""
    pre = {}
    for x in F.elements():
        pre[phi.apply(F, x)] = x
    k = F.rank
    basis = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    return DiscIsometry.from_images([pre[F.reduce(e)] for e in basis])


# -- subgroups -----------------------------------------------------------

@dataclass(frozen=True)
class DiscSubgroup:
    form: FiniteQuadraticForm
    elements: tuple[DiscIsometry, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, phi):
        return phi in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_group(self) -> bool:
        els = set(self.elements)
        if identity(self.form) not in els:
            return False
        F = self.form
        return all(compose(F, a, b) in els for a in els for b in els)


def subgroup_from_generators(F: FiniteQuadraticForm, gens: Iterable[DiscIsometry]) -> DiscSubgroup:
    gens = list(gens)
    for g in gens:
        if not is_isometry(F, g):
            raise NotAnIsometry(f"{g!r} is not an isometry of {F}")
    e = identity(F)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = compose(F, g, h)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return DiscSubgroup(F, tuple(sorted(seen)))


def plus_minus_identity(F: FiniteQuadraticForm) -> DiscSubgroup:
    """The subgroup {id, -id}."""
    return subgroup_from_generators(F, [scalar(F, -1)])


def same_genus(L1, L2, bound: Optional[int] = None) -> bool:
    """Nikulin's criterion for even lattices: equal signatures and
    isomorphic discriminant forms."""
    from .lattice import discriminant_form, signature

    if signature(L1) != signature(L2):
        return False
    ok, _ = is_isomorphic(discriminant_form(L1), discriminant_form(L2), bound)
    return ok
